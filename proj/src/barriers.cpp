#include "pparab/barriers.hpp"

#include "pparab/operator.hpp"
#include "pparab/sampling.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace pparab {

const char* to_string(Orientation o)
{
    return o == Orientation::supersolution_barrier ? "supersolution_barrier" : "subsolution_witness";
}

const char* to_string(Construction c)
{
    switch (c) {
    case Construction::exterior_sphere: return "sphere";
    case Construction::petrovsky: return "petrovsky";
    case Construction::irregularity: return "irregularity";
    }
    return "?";
}

double default_petrovsky_slab()
{
    return std::exp(-std::exp(2.0));
}

namespace {

std::string describe_point(const Point& p)
{
    std::string s = "x=(";
    char buf[64];
    for (int i = 0; i < p.dim(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.6g", i ? "," : "", p.x(i));
        s += buf;
    }
    std::snprintf(buf, sizeof buf, "), t=%.6g", p.t);
    return s + buf;
}

std::string describe_log(double xi, double ell)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "xi=%.6g, log|log|t||=%.6g", xi, ell);
    return buf;
}

// Unit vector from n uniforms via the inverse normal CDF.
Vec direction(const std::vector<double>& u, std::size_t first, int n)
{
    Vec d(n);
    for (int i = 0; i < n; ++i) {
        const double v = std::clamp(u[first + static_cast<std::size_t>(i)], 1e-12, 1.0 - 1e-12);
        d(i) = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * v - 1.0);
    }
    const double norm = d.norm();
    if (norm == 0.0) {
        d.setZero();
        d(0) = 1.0;
        return d;
    }
    return d / norm;
}

// Violation of w_t - 𝓐ₚw ≥ 0 relative to the size of the jet.
double relative_violation(const Jet2& jet, double res)
{
    if (!(res < 0.0)) {
        return std::isnan(res) ? kInfinity : 0.0;
    }
    const double scale = std::abs(jet.ut) + std::abs(jet.d2u.trace()) + jet.d2u.norm();
    return -res / std::max(scale, 1e-300);
}

struct Tracker {
    BarrierReport& rep;
    double tol;

    // Records a failed axiom; keeps the first witness.
    void fail(bool& flag, const std::string& what)
    {
        if (flag && rep.witness.empty()) {
            rep.witness = what;
        }
        flag = false;
    }
};

// Closed-form sphere barrier value with the cancellation handled by expm1.
double sphere_value(const Vec& cx, double ct, double R0, double a, const Point& p)
{
    const double dt = p.t - ct;
    const double excess = (p.x - cx).squaredNorm() + dt * dt - R0 * R0;
    return -std::exp(-a * R0 * R0) * std::expm1(-a * excess);
}

}  // namespace

double choose_sphere_parameter(double delta, double R0, const PParams& params)
{
    if (!(delta > 0.0)) {
        throw DomainError("choose_sphere_parameter: delta must be positive");
    }
    // (p+n-2)/(2p) = α/4 and p/(p-1) = 4/β, also at p = ∞.
    return (R0 + params.alpha / 4.0 + 1.0) * 4.0 / (params.beta * delta * delta);
}

double sphere_residual(const Vec& center_x, double center_t, double a, const Point& point, const PParams& params)
{
    const double d2 = (point.x - center_x).squaredNorm();
    const double dt = point.t - center_t;
    const double e = std::exp(-a * (d2 + dt * dt));
    return 2.0 * a * e * (dt + a * params.beta / 2.0 * d2 - params.alpha / 2.0);
}

Barrier exterior_sphere_barrier_unchecked(const Vec& center_x, double center_t, double R0, const Point& contact,
                                          double a, const PParams& params)
{
    const int n = params.n;
    if (static_cast<int>(center_x.size()) != n || contact.dim() != n) {
        throw DomainError("exterior_sphere_barrier: dimension does not match n");
    }
    if (!(R0 > 0.0) || !(a > 0.0)) {
        throw DomainError("exterior_sphere_barrier: requires R0 > 0 and a > 0");
    }
    const double dt0 = contact.t - center_t;
    const double on_sphere = (contact.x - center_x).squaredNorm() + dt0 * dt0 - R0 * R0;
    if (std::abs(on_sphere) > 1e-10 * std::max(1.0, R0 * R0)) {
        throw DomainError("exterior_sphere_barrier: contact is not on the sphere");
    }

    const double dist = (contact.x - center_x).norm();
    const bool pole = dist <= 1e-12 * R0;
    const double delta = pole ? R0 : dist / 2.0;
    const double rho = pole ? R0 / 2.0 : std::min(delta / std::sqrt(static_cast<double>(n)), R0);

    // Ball of radius 2R0 tangent from inside at the contact; its exterior
    // lies in the exterior of the original ball and meets its sphere only at
    // the contact.
    const Vec normal_x = (contact.x - center_x) / R0;
    const double normal_t = dt0 / R0;
    const Vec big_x = contact.x - 2.0 * R0 * normal_x;
    const double big_t = contact.t - 2.0 * R0 * normal_t;
    const SpaceTimeBox box{contact.x - Vec::Constant(n, rho), contact.x + Vec::Constant(n, rho), contact.t - rho,
                           contact.t + rho};

    Barrier b;
    b.label = "exterior_sphere";
    b.construction = Construction::exterior_sphere;
    b.orientation = Orientation::supersolution_barrier;
    b.params = params;
    b.value = [=](const Point& p) { return sphere_value(center_x, center_t, R0, a, p); };
    b.jet = [=](const Point& p) {
        const Vec y = p.x - center_x;
        const double dt = p.t - center_t;
        const double e = std::exp(-a * (y.squaredNorm() + dt * dt));
        Jet2 j;
        j.u = sphere_value(center_x, center_t, R0, a, p);
        j.ut = 2.0 * a * dt * e;
        j.du = (2.0 * a * e) * y;
        j.d2u = (2.0 * a * e) * Mat::Identity(n, n) - (4.0 * a * a * e) * (y * y.transpose());
        return j;
    };
    b.singular = [](const Point&) { return false; };
    b.domain = ball_exterior(big_x, big_t, 2.0 * R0, box);
    b.domain->label = "sphere-exterior";
    b.target = contact;
    b.constants = {{"a", a},
                   {"R0", R0},
                   {"delta", delta},
                   {"rho", rho},
                   {"normal_t", normal_t},
                   {"pole", pole ? (dt0 > 0.0 ? 1.0 : -1.0) : 0.0}};
    return b;
}

Barrier exterior_sphere_barrier(const Vec& center_x, double center_t, double R0, const Point& contact,
                                const PParams& params)
{
    if (!(R0 > 0.0)) {
        throw DomainError("exterior_sphere_barrier: requires R0 > 0");
    }
    if (static_cast<int>(center_x.size()) != params.n || contact.dim() != params.n) {
        throw DomainError("exterior_sphere_barrier: dimension does not match n");
    }
    const double dist = (contact.x - center_x).norm();
    const bool pole = dist <= 1e-12 * R0;
    if (pole && contact.t < center_t) {
        throw DomainError(
            "exterior_sphere_barrier: south-pole contact admits no barrier of this form; "
            "w_t - A_p w < 0 on the axis below it for any positive a, since p+n >= 2");
    }
    if (pole && R0 < params.alpha / 2.0) {
        throw DomainError("exterior_sphere_barrier: north-pole contact requires R0 >= alpha/2");
    }
    const double delta = pole ? R0 : dist / 2.0;
    const double a = choose_sphere_parameter(delta, R0, params);
    return exterior_sphere_barrier_unchecked(center_x, center_t, R0, contact, a, params);
}

double petrovsky_bracket(double c, double L, double xi, const PParams& params)
{
    const double delta = c * params.alpha_over_beta();
    return -c * (delta + 1.0) / L - c * params.alpha_over_beta() + delta * std::exp(-xi);
}

Barrier petrovsky_barrier(double c, const PParams& params, double c_time)
{
    if (!(c > 0.0) || !(c < 1.0)) {
        throw DomainError("petrovsky_barrier: requires 0 < c < 1");
    }
    const double delta = c * params.alpha_over_beta();
    const double beta = params.beta;
    const int n = params.n;
    auto log_abs = [](const Point& p) {
        if (!(p.t < 0.0) || !(p.t > -1.0)) {
            throw DomainError("petrovsky_barrier: requires -1 < t < 0");
        }
        return -std::log(-p.t);
    };

    Barrier b;
    b.label = "petrovsky";
    b.construction = Construction::petrovsky;
    b.orientation = Orientation::supersolution_barrier;
    b.params = params;
    b.value = [=](const Point& p) {
        const double L = log_abs(p);
        const double E = std::exp(-p.x.squaredNorm() / (beta * p.t));
        return -c * std::pow(L, -(delta + 1.0)) * E + std::pow(L, -delta);
    };
    b.jet = [=](const Point& p) {
        const double L = log_abs(p);
        const double t = p.t;
        const double r2 = p.x.squaredNorm();
        const double E = std::exp(-r2 / (beta * t));
        const double Ld = std::pow(L, -delta);
        const double Ld1 = Ld / L;
        const double Ld2 = Ld1 / L;
        // Scaled position 2x/(βt); keeps x xᵀ/t² finite for tiny |t|.
        const Vec g = (2.0 / (beta * t)) * p.x;
        Jet2 j;
        j.u = -c * Ld1 * E + Ld;
        j.ut = -c * ((delta + 1.0) * Ld2 * E / t + Ld1 * E * (r2 / (beta * t)) / t) + delta * Ld1 / t;
        j.du = (c * Ld1 * E) * g;
        j.d2u = (-c * Ld1 * E) * ((-2.0 / (beta * t)) * Mat::Identity(n, n) + g * g.transpose());
        return j;
    };
    b.singular = [](const Point& p) { return !(p.t < 0.0); };
    b.domain = petrovsky_domain(1.0, c_time, params);
    b.target = Point(Vec::Zero(n), 0.0);
    b.constants = {{"c", c}, {"delta", delta}, {"c_time", c_time}};
    return b;
}

double IrregularityWitness::value(double xi, double ell) const
{
    return -std::exp(k * xi - (1.0 + eps1) * ell) + 1.0 / ell;
}

double IrregularityWitness::level_edge(double ell) const
{
    return ((1.0 + eps1) * ell + std::log(1.0 / ell - m)) / k;
}

double IrregularityWitness::sign_function(double xi, double ell) const
{
    const PParams& pr = barrier.params;
    return -(1.0 + eps1) * std::exp(-ell) + xi * (k - k * k) - pr.alpha_over_beta() * k +
           std::exp(-k * xi + eps1 * ell - 2.0 * std::log(ell));
}

double IrregularityWitness::sign_minimum(double ell) const
{
    const double log_C = eps1 * ell - 2.0 * std::log(ell);
    const double xi_star = std::max(0.0, (log_C - std::log(1.0 - k)) / k);
    return sign_function(xi_star, ell);
}

namespace {

// Smallest ℓ ≥ lo with pred(ℓ), assuming pred is monotone from false to true.
template <class Pred>
double first_true(double lo, Pred pred)
{
    if (pred(lo)) {
        return lo;
    }
    double hi = 2.0 * lo;
    while (!pred(hi)) {
        hi *= 2.0;
        if (hi > 1e12) {
            throw DomainError("irregularity_subsolution: no admissible time slab found");
        }
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

IrregularityWitness irregularity_subsolution(double eps1, double k, double m, const PParams& params,
                                             std::optional<double> target_eps)
{
    if (!(eps1 > 0.0)) {
        throw DomainError("irregularity_subsolution: requires eps1 > 0");
    }
    if (!(k > 0.5) || !(k < 1.0)) {
        throw DomainError("irregularity_subsolution: requires 1/2 < k < 1");
    }
    if (!(m < 0.0)) {
        throw DomainError("irregularity_subsolution: requires m < 0");
    }
    if (target_eps) {
        if (!(*target_eps > 0.0)) {
            throw DomainError("irregularity_subsolution: target eps must be positive");
        }
        if (!((eps1 + 1.0) / k < 1.0 + *target_eps / 2.0)) {
            throw DomainError("irregularity_subsolution: requires (eps1+1)/k < 1 + eps/2");
        }
    }

    IrregularityWitness w;
    w.eps1 = eps1;
    w.k = k;
    w.m = m;
    w.target_eps = target_eps;
    w.barrier.label = "irregularity";
    w.barrier.construction = Construction::irregularity;
    w.barrier.orientation = Orientation::subsolution_witness;
    w.barrier.params = params;
    w.barrier.target = Point(Vec::Zero(params.n), 0.0);

    const double ab = params.alpha_over_beta();
    w.log_log_analytic_bound = 8.0 * ab / eps1;
    // The sign minimum increases in ℓ once ε₁ℓ - 2 log ℓ does, i.e. for ℓ > 2/ε₁.
    double start = std::max({w.log_log_analytic_bound, 2.0 / eps1, 1.0});
    start = first_true(start, [&](double ell) {
        return w.sign_minimum(ell) >= 0.0 && (1.0 + eps1) * std::exp(-ell) < ab * k;
    });
    if (target_eps) {
        const double eps = *target_eps;
        start = first_true(start, [&](double ell) { return (1.0 + eps) * ell - w.level_edge(ell) >= 0.0; });
    }
    w.log_log_start = 1.1 * start;
    if (target_eps) {
        w.containment_margin = (1.0 + *target_eps) * w.log_log_start - w.level_edge(w.log_log_start);
    }

    const double kk = k;
    const double e1 = eps1;
    // Physical evaluation through the log variables.
    const double beta = params.beta;
    w.barrier.value = [kk, e1, beta](const Point& p) {
        if (!(p.t < 0.0) || !(p.t > -std::exp(-1.0))) {
            throw DomainError("irregularity_subsolution: requires -1/e < t < 0");
        }
        const double ell = std::log(-std::log(-p.t));
        const double xi = p.x.squaredNorm() / (beta * -p.t);
        return -std::exp(kk * xi - (1.0 + e1) * ell) + 1.0 / ell;
    };
    w.barrier.singular = [](const Point& p) { return !(p.t < 0.0); };
    w.barrier.constants = {{"eps1", eps1}, {"k", k}, {"m", m}, {"log_log_start", w.log_log_start}};
    if (target_eps) {
        w.barrier.constants["eps"] = *target_eps;
    }
    return w;
}

namespace {

BarrierReport verify_sphere(const Barrier& b, int n_samples, double tol, std::uint64_t seed)
{
    BarrierReport rep;
    rep.positivity_ok = rep.boundary_liminf_ok = rep.vanishing_at_target_ok = rep.supersolution_ok = true;
    Tracker tr{rep, tol};
    const Domain& dom = *b.domain;
    const int n = b.params.n;
    const double rho = b.constants.at("rho");
    const Vec& x0 = b.target.x;
    const double t0 = b.target.t;

    std::vector<Point> interior;
    Halton seq(n + 1, seed);
    for (std::uint64_t i = 0; static_cast<int>(interior.size()) < n_samples && i < 50ull * n_samples; ++i) {
        const auto u = seq.at(i);
        Point p(Vec(n), 0.0);
        for (int d = 0; d < n; ++d) {
            p.x(d) = dom.bbox.lo(d) + u[static_cast<std::size_t>(d)] * (dom.bbox.hi(d) - dom.bbox.lo(d));
        }
        p.t = dom.bbox.t0 + u[static_cast<std::size_t>(n)] * (dom.bbox.t1 - dom.bbox.t0);
        if (contains(dom, p)) {
            interior.push_back(p);
        }
    }
    // Structured samples: approach to the contact along the outward normal,
    // and the axis through the centre when the contact is a pole. The
    // spatial normal is parallel to Dw at the contact.
    const double pole = b.constants.at("pole");
    const double nt = pole != 0.0 ? pole : b.constants.at("normal_t");
    Vec nx = Vec::Zero(n);
    if (pole == 0.0) {
        const Vec g = b.jet(b.target).du;
        nx = g / g.norm() * std::sqrt(std::max(0.0, 1.0 - nt * nt));
    }
    for (int j = 1; j <= 40; ++j) {
        const double s = rho * std::ldexp(1.0, -j);
        Point p(x0 + s * nx, t0 + s * nt);
        if (contains(dom, p)) {
            interior.push_back(p);
        }
        if (pole != 0.0) {
            for (int q = 1; q <= 8; ++q) {
                Point a(x0, t0 + pole * rho * q / 9.0);
                if (contains(dom, a)) {
                    interior.push_back(a);
                }
            }
        }
    }
    if (pole != 0.0) {
        // Axis below the contact for a south pole sits inside the box too.
        for (int q = 1; q <= 16; ++q) {
            Point a(x0, t0 - pole * rho * q / 17.0);
            if (contains(dom, a)) {
                interior.push_back(a);
            }
        }
    }

    for (const Point& p : interior) {
        const double w = b.value(p);
        if (!(w > 0.0)) {
            tr.fail(rep.positivity_ok, "w <= 0 at " + describe_point(p));
        }
        const Jet2 jet = b.jet(p);
        const double res = residual(jet, b.params, kDefaultTau, EnvelopeSide::lower);
        const double v = relative_violation(jet, res);
        rep.worst_violation = std::max(rep.worst_violation, v);
        if (v > tol) {
            char buf[64];
            std::snprintf(buf, sizeof buf, ": w_t - A_p w = %.6g", res);
            tr.fail(rep.supersolution_ok, "supersolution fails at " + describe_point(p) + buf);
        }
        ++rep.sample_count;
    }

    // Boundary: project interior samples outwards, keep those away from the
    // contact.
    const double r_away = rho / 4.0;
    rep.boundary_floor = kInfinity;
    const std::size_t stride = std::max<std::size_t>(1, interior.size() / 400);
    for (std::size_t i = 0; i < interior.size(); i += stride) {
        BoundarySample bs;
        try {
            bs = project_to_boundary(dom, interior[i], rho / 8.0);
        } catch (const ProjectionError&) {
            continue;
        }
        const double d = std::hypot((bs.point.x - x0).norm(), bs.point.t - t0);
        if (d < r_away) {
            continue;
        }
        const double w = b.value(bs.point);
        rep.boundary_floor = std::min(rep.boundary_floor, w);
        if (!(w > 0.0)) {
            tr.fail(rep.boundary_liminf_ok, "boundary value <= 0 at " + describe_point(bs.point));
        }
        ++rep.sample_count;
    }

    // Vanishing along the normal and two tilted directions.
    // Unit space-time tangent orthogonal to the normal (nx, nt).
    Vec tang_x = Vec::Zero(n);
    double tang_t = 0.0;
    if (pole != 0.0) {
        tang_x(0) = 1.0;
    } else {
        tang_t = nx.norm();
        tang_x = -nt * nx / tang_t;
    }
    for (double tilt : {0.0, 0.5, -0.5}) {
        double last = 0.0;
        for (int j = 0; j <= 48; ++j) {
            const double s = rho / 2.0 * std::ldexp(1.0, -j);
            Point p(x0 + s * (nx + tilt * tang_x), t0 + s * (nt + tilt * tang_t));
            last = b.value(p);
            if (!(last > 0.0) && j < 40) {
                tr.fail(rep.vanishing_at_target_ok, "w <= 0 on an approach path at " + describe_point(p));
            }
        }
        rep.approach_tail.push_back(last);
        if (!(std::abs(last) < tol)) {
            tr.fail(rep.vanishing_at_target_ok, "w does not vanish at the contact");
        }
    }
    return rep;
}

BarrierReport verify_petrovsky(const Barrier& b, int n_samples, double tol, std::uint64_t seed)
{
    BarrierReport rep;
    rep.positivity_ok = rep.boundary_liminf_ok = rep.vanishing_at_target_ok = rep.supersolution_ok = true;
    Tracker tr{rep, tol};
    const PParams& pr = b.params;
    const int n = pr.n;
    const double c = b.constants.at("c");
    const double delta = b.constants.at("delta");
    const double c_time = b.constants.at("c_time");
    const double beta = pr.beta;
    const double ell_lo = std::log(-std::log(c_time));
    // |t| ≥ 1e-150 keeps every physical quantity in range.
    const double ell_hi = std::log(150.0 * std::log(10.0));

    Halton seq(std::min(n + 2, 16), seed);
    for (int i = 0; i < n_samples; ++i) {
        const auto u = seq.at(static_cast<std::uint64_t>(i));
        const double ell = ell_lo + u[0] * (ell_hi - ell_lo);
        const double L = std::exp(ell);
        const double t = -std::exp(-L);
        const bool axis = i % 16 == 0;
        const double xi = axis ? 0.0 : u[1] * ell;
        const Vec dir = direction(u, 2, n);
        const Point p(std::sqrt(xi * beta * -t) * dir, t);
        if (!contains(*b.domain, p)) {
            continue;
        }
        ++rep.sample_count;
        const double w = b.value(p);
        if (!(w > 0.0)) {
            tr.fail(rep.positivity_ok, "w <= 0 at " + describe_point(p));
        }
        const Jet2 jet = b.jet(p);
        const OperatorValue op = eval_operator(jet, pr, kDefaultTau * std::pow(L, -delta), EnvelopeSide::lower);
        const double res = jet.ut - op.value;
        const double v = relative_violation(jet, res);
        rep.worst_violation = std::max(rep.worst_violation, v);
        if (v > tol) {
            char buf[64];
            std::snprintf(buf, sizeof buf, ": w_t - A_p w = %.6g", res);
            tr.fail(rep.supersolution_ok, "supersolution fails at " + describe_point(p) + buf);
        }
        if (op.branch == Branch::classical) {
            const double bracket = t * std::pow(L, delta + 1.0) * std::exp(-xi) * res;
            rep.identity_gap = std::max(rep.identity_gap, std::abs(bracket - petrovsky_bracket(c, L, xi, pr)));
        } else {
            // Axis: w_t - envelope = -c(δ+1)/(t L^{δ+2}).
            const double expected = -c * (delta + 1.0) / (t * std::pow(L, delta + 2.0));
            rep.identity_gap = std::max(rep.identity_gap, std::abs(res / expected - 1.0));
        }
    }

    // Log-space samples far beyond double-precision times: the bracket is
    // ≤ 0 (w_t - 𝓐ₚw ≥ 0 since t < 0) and w > 0 iff c e^{ξ-ℓ} < 1.
    for (int i = 0; i < n_samples / 4; ++i) {
        const auto u = seq.at(static_cast<std::uint64_t>(n_samples + i));
        const double ell = ell_hi + u[0] * 2000.0;
        const double xi = u[1] * ell;
        ++rep.sample_count;
        const double br = petrovsky_bracket(c, std::exp(ell), xi, pr);
        if (br > 0.0) {
            tr.fail(rep.supersolution_ok, "bracket positive at " + describe_log(xi, std::log(ell)));
        }
        if (!(c * std::exp(xi - ell) < 1.0)) {
            tr.fail(rep.positivity_ok, "w <= 0 at " + describe_log(xi, std::log(ell)));
        }
    }

    // Boundary away from the origin: lateral part and the bottom t = -c_time.
    const double r_away = c_time / 100.0;
    rep.boundary_floor = kInfinity;
    for (int i = 0; i < 512; ++i) {
        const auto u = seq.at(static_cast<std::uint64_t>(2 * n_samples + i));
        const Vec dir = direction(u, 2, n);
        Point p;
        if (i % 2 == 0) {
            const double s = std::exp(std::log(r_away) + u[0] * (std::log(c_time) - std::log(r_away)));
            p = Point(std::sqrt(beta * s * std::log(-std::log(s))) * dir, -s);
        } else {
            const double reach = std::sqrt(beta * c_time * std::log(-std::log(c_time)));
            p = Point(u[1] * reach * dir, -c_time);
        }
        if (std::abs(b.domain->phi(p)) > 1e-10) {
            tr.fail(rep.boundary_liminf_ok, "boundary sample off the boundary at " + describe_point(p));
        }
        const double w = b.value(p);
        rep.boundary_floor = std::min(rep.boundary_floor, w);
        if (!(w > 0.0)) {
            tr.fail(rep.boundary_liminf_ok, "boundary value <= 0 at " + describe_point(p));
        }
        ++rep.sample_count;
    }

    // Approach paths in log variables: axis, midway, lateral boundary.
    const double ell_end = std::max(2000.0, std::log(1e10 / tol) / delta);
    for (double frac : {0.0, 0.5, 1.0}) {
        double last = 0.0;
        double prev = kInfinity;
        for (int j = 0; j <= 60; ++j) {
            const double ell = ell_lo * std::pow(ell_end / ell_lo, j / 60.0);
            const double xi = frac * ell;
            last = std::exp(-delta * ell) * (1.0 - c * std::exp(xi - ell));
            if (last > prev || last < 0.0) {
                tr.fail(rep.vanishing_at_target_ok, "approach path not decreasing at " + describe_log(xi, ell));
            }
            prev = last;
        }
        rep.approach_tail.push_back(last);
        if (!(last < tol)) {
            tr.fail(rep.vanishing_at_target_ok, "w does not vanish at the origin");
        }
    }
    return rep;
}

}  // namespace

BarrierReport verify_barrier(const Barrier& barrier, int n_samples, double tol, std::uint64_t seed)
{
    if (n_samples < 100) {
        throw DomainError("verify_barrier: requires at least 100 samples");
    }
    switch (barrier.construction) {
    case Construction::exterior_sphere: return verify_sphere(barrier, n_samples, tol, seed);
    case Construction::petrovsky: return verify_petrovsky(barrier, n_samples, tol, seed);
    case Construction::irregularity:
        throw DomainError("verify_barrier: the irregularity witness is verified through IrregularityWitness");
    }
    return {};
}

BarrierReport verify_barrier(const IrregularityWitness& w, int n_samples, double tol, std::uint64_t seed)
{
    if (n_samples < 100) {
        throw DomainError("verify_barrier: requires at least 100 samples");
    }
    BarrierReport rep;
    rep.positivity_ok = rep.boundary_liminf_ok = rep.vanishing_at_target_ok = rep.supersolution_ok = true;
    Tracker tr{rep, tol};
    const double ell0 = w.log_log_start;
    Halton seq(2, seed);

    for (int i = 0; i < n_samples; ++i) {
        const auto u = seq.at(static_cast<std::uint64_t>(i));
        // ℓ from ℓ₀ up to 10⁶ ℓ₀, log-uniformly.
        const double ell = ell0 * std::pow(1e6, u[0]);
        const double edge = w.level_edge(ell);
        const double xi = i % 8 == 0 ? 0.0 : u[1] * edge;
        ++rep.sample_count;
        if (!(w.value(xi, ell) > w.m)) {
            tr.fail(rep.positivity_ok, "w <= m inside at " + describe_log(xi, ell));
        }
        const double T = w.sign_function(xi, ell);
        const double v = std::isnan(T) ? kInfinity : std::max(0.0, -T);
        rep.worst_violation = std::max(rep.worst_violation, v);
        if (v > tol) {
            tr.fail(rep.supersolution_ok, "subsolution sign fails at " + describe_log(xi, ell));
        }
        // The minimiser in ξ, when it falls inside.
        const double log_C = w.eps1 * ell - 2.0 * std::log(ell);
        const double xi_star = std::max(0.0, (log_C - std::log(1.0 - w.k)) / w.k);
        if (xi_star < edge) {
            const double Ts = w.sign_function(xi_star, ell);
            rep.worst_violation = std::max(rep.worst_violation, std::max(0.0, -Ts));
            if (-Ts > tol) {
                tr.fail(rep.supersolution_ok, "subsolution sign fails at " + describe_log(xi_star, ell));
            }
            ++rep.sample_count;
        }
    }

    // Lateral boundary of the level domain: w = m.
    rep.boundary_floor = kInfinity;
    for (int i = 0; i < 256; ++i) {
        const double ell = ell0 * std::pow(1e6, i / 255.0);
        const double wb = w.value(w.level_edge(ell), ell);
        rep.boundary_floor = std::min(rep.boundary_floor, wb);
        if (std::abs(wb - w.m) > tol * std::max(1.0, std::abs(w.m)) * 1e2) {
            tr.fail(rep.boundary_liminf_ok, "w != m on the level boundary at " + describe_log(w.level_edge(ell), ell));
        }
        ++rep.sample_count;
    }

    // Interior approach paths: w → 0 > m, while the boundary stays at m.
    for (double frac : {0.0, 0.5, 0.9}) {
        double last = 0.0;
        for (int j = 0; j <= 60; ++j) {
            const double ell = ell0 * std::pow(1e12 / ell0, j / 60.0);
            last = w.value(frac * w.level_edge(ell), ell);
            if (!(last > w.m)) {
                tr.fail(rep.vanishing_at_target_ok, "approach path leaves the level domain");
            }
        }
        rep.approach_tail.push_back(last);
        if (!(std::abs(last) < tol)) {
            tr.fail(rep.vanishing_at_target_ok, "interior values do not tend to 0");
        }
    }
    return rep;
}

}  // namespace pparab
