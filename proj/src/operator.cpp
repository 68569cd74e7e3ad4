#include "pparab/operator.hpp"

#include <Eigen/Eigenvalues>

namespace pparab {

const char* to_string(Branch b)
{
    switch (b) {
    case Branch::classical: return "classical";
    case Branch::envelope_lower: return "envelope_lower";
    case Branch::envelope_upper: return "envelope_upper";
    }
    return "?";
}

ExtremeEigenvalues extreme_eigenvalues(const Mat& sym)
{
    if (sym.rows() == 1) {
        return {sym(0, 0), sym(0, 0)};
    }
    // Only the lower triangle is read; eigenvalues come back ascending.
    Eigen::SelfAdjointEigenSolver<Mat> solver(sym, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev(0), ev(ev.size() - 1)};
}

double eval_envelope(const Mat& d2u, const PParams& params, EnvelopeSide side)
{
    const auto ev = extreme_eigenvalues(d2u);
    const double lambda = side == EnvelopeSide::lower ? ev.min : ev.max;
    return params.inv_p() * d2u.trace() + params.directional_weight() * lambda;
}

OperatorValue eval_operator(const Jet2& jet, const PParams& params, double tau, EnvelopeSide side)
{
    if (!(tau > 0.0)) {
        throw DomainError("eval_operator: tau must be positive");
    }
    const double gnorm = jet.du.norm();
    if (gnorm > tau) {
        const Vec v = jet.du / gnorm;
        const double directional = v.dot(jet.d2u * v);
        const double value = params.inv_p() * jet.d2u.trace() + params.directional_weight() * directional;
        return {value, Branch::classical, value, value};
    }
    OperatorValue out;
    out.lower = eval_envelope(jet.d2u, params, EnvelopeSide::lower);
    out.upper = eval_envelope(jet.d2u, params, EnvelopeSide::upper);
    // For 1 < p < 2 the weight (p-2)/p is negative and the two sides swap order.
    if (out.lower > out.upper) {
        std::swap(out.lower, out.upper);
    }
    if (side == EnvelopeSide::lower) {
        out.value = out.lower;
        out.branch = Branch::envelope_lower;
    } else {
        out.value = out.upper;
        out.branch = Branch::envelope_upper;
    }
    return out;
}

double residual(const Jet2& jet, const PParams& params, double tau, EnvelopeSide side)
{
    return jet.ut - eval_operator(jet, params, tau, side).value;
}

double backward_residual(const Jet2& jet, const PParams& params, double tau, EnvelopeSide side)
{
    return jet.ut + eval_operator(jet, params, tau, side).value;
}

}  // namespace pparab
