#pragma once

#include "pparab/params.hpp"

namespace pparab {

/// Default vanishing-gradient threshold for analytic jets.
inline constexpr double kDefaultTau = 1e-8;

enum class Branch { classical, envelope_lower, envelope_upper };
enum class EnvelopeSide { lower, upper };

const char* to_string(Branch b);

/// Value of the normalized p-Laplacian at a jet.
///
/// On the classical branch lower == upper == value. On an envelope branch
/// both semicontinuous envelopes are reported and value holds the side that
/// was requested.
struct OperatorValue {
    double value = 0.0;
    Branch branch = Branch::classical;
    double lower = 0.0;
    double upper = 0.0;
};

/// Extreme eigenvalues of a symmetric matrix (ascending order, ties by index).
struct ExtremeEigenvalues {
    double min = 0.0;
    double max = 0.0;
};
ExtremeEigenvalues extreme_eigenvalues(const Mat& sym);

/// (1/p) tr(D²u) + ((p-2)/p) λ, with λ the smallest (lower) or largest
/// (upper) eigenvalue of d2u.
double eval_envelope(const Mat& d2u, const PParams& params, EnvelopeSide side);

/// 𝓐ₚu = (1/p) tr(D²u) + ((p-2)/p) <D²u v, v>, v = Du/|Du|, whenever
/// |Du| > tau; otherwise the envelope selected by `side`. Supersolution
/// checks use the lower envelope, subsolution checks the upper one.
OperatorValue eval_operator(const Jet2& jet, const PParams& params, double tau = kDefaultTau,
                            EnvelopeSide side = EnvelopeSide::lower);

/// u_t - 𝓐ₚu. Positive certifies a classical supersolution at the point,
/// negative a subsolution.
double residual(const Jet2& jet, const PParams& params, double tau = kDefaultTau,
                EnvelopeSide side = EnvelopeSide::lower);

/// u_t + 𝓐ₚu, the residual of the time-reversed equation.
double backward_residual(const Jet2& jet, const PParams& params, double tau = kDefaultTau,
                         EnvelopeSide side = EnvelopeSide::upper);

}  // namespace pparab
