#include "pparab/solutions.hpp"

#include "pparab/operator.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace pparab {

const char* to_string(SignRole role)
{
    switch (role) {
    case SignRole::solution: return "solution";
    case SignRole::supersolution: return "supersolution";
    case SignRole::subsolution: return "subsolution";
    }
    return "?";
}

namespace {

Vec filled(int n, double v)
{
    return Vec::Constant(n, v);
}

SpaceTimeBox unit_box(int n, double half_width, double t0, double t1)
{
    return {filled(n, -half_width), filled(n, half_width), t0, t1};
}

bool never(const Point&)
{
    return false;
}

}  // namespace

double distance_to_singular(const Solution& s, const Point& p)
{
    return s.singular_distance ? s.singular_distance(p) : std::numeric_limits<double>::infinity();
}

double traveling_wave_m(const Vec& a, double b, const PParams& params)
{
    const double a2 = a.squaredNorm();
    if (params.infinite()) {
        return a2 / b;
    }
    return a2 * (params.p - 1.0) / (b * params.p);
}

Solution traveling_wave(const Vec& a, double b, double A, double B, const PParams& params)
{
    if (static_cast<int>(a.size()) != params.n) {
        throw DomainError("traveling_wave: direction dimension does not match n");
    }
    if (a.squaredNorm() == 0.0) {
        throw DomainError("traveling_wave: requires a != 0");
    }
    if (b == 0.0) {
        throw DomainError("traveling_wave: requires b != 0");
    }
    const double m = traveling_wave_m(a, b, params);
    Solution s;
    s.label = "traveling_wave";
    s.params = params;
    s.value = [=](const Point& p) { return A + B * std::exp(-(a.dot(p.x) - b * p.t) / m); };
    s.jet = [=](const Point& p) {
        const double e = B * std::exp(-(a.dot(p.x) - b * p.t) / m);
        Jet2 j;
        j.u = A + e;
        j.ut = e * b / m;
        j.du = -(e / m) * a;
        j.d2u = (e / (m * m)) * (a * a.transpose());
        return j;
    };
    s.singular = never;
    s.sample_box = unit_box(params.n, 1.0, 0.0, 1.0);
    return s;
}

double separable_coefficient(double c, const PParams& params)
{
    return c / params.alpha;
}

Solution separable(double c, const PParams& params)
{
    if (params.infinite()) {
        throw DomainError("separable: requires finite p");
    }
    if (params.p == static_cast<double>(params.n)) {
        throw DomainError("separable: rejects p = n");
    }
    const double Aq = separable_coefficient(c, params);
    const int n = params.n;
    Solution s;
    s.label = "separable";
    s.params = params;
    s.value = [=](const Point& p) { return Aq * p.x.squaredNorm() + c * p.t; };
    s.jet = [=](const Point& p) {
        Jet2 j;
        j.u = Aq * p.x.squaredNorm() + c * p.t;
        j.ut = c;
        j.du = 2.0 * Aq * p.x;
        j.d2u = 2.0 * Aq * Mat::Identity(n, n);
        return j;
    };
    s.singular = never;
    s.sample_box = unit_box(n, 1.0, 0.0, 1.0);
    return s;
}

double similarity_profile(double zeta, double C, const PParams& params)
{
    if (params.infinite()) {
        throw DomainError("similarity_integral: requires finite p");
    }
    if (!(zeta >= 0.0)) {
        throw DomainError("similarity_integral: requires |x|²/t >= 0");
    }
    const double gamma = params.alpha_over_beta();
    const double beta = params.beta;
    // Past s = 800β the integrand is below e^{-800}, far under double
    // resolution relative to the accumulated integral.
    const double cut = 800.0 * beta;
    const double upper = std::min(zeta, cut);

    using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    constexpr unsigned max_depth = 12;
    constexpr double tol = 1e-13;
    double err = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    // Adaptive refinement over one long interval stalls on the flat tail, so
    // integrate chunks about one decay length wide and sum.
    auto chunked = [&](auto f, double a, double b, double width) {
        const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
        const double step = (b - a) / pieces;
        for (int i = 0; i < pieces; ++i) {
            double e = 0.0;
            double m = 0.0;
            const double lo = a + i * step;
            const double hi = i + 1 == pieces ? b : lo + step;
            // Mapped onto [0, 1]: the error estimate has an absolute floor
            // that would swamp very short intervals.
            const double len = hi - lo;
            value += len * Quad::integrate([&](double u) { return f(lo + len * u); }, 0.0, 1.0, max_depth, tol, &e, &m);
            err += len * e;
            l1 += len * m;
        }
    };
    if (gamma < 1.0) {
        // s = w^{1/(1-γ)} turns s^{-γ} ds into dw/(1-γ).
        const double q = 1.0 / (1.0 - gamma);
        const double w_upper = std::pow(upper, 1.0 - gamma);
        if (w_upper == 0.0) {
            return 0.0;
        }
        chunked([=](double w) { return q * std::exp(-std::pow(w, q) / beta); }, 0.0, w_upper,
                std::pow(beta, 1.0 - gamma));
    } else {
        if (zeta == 0.0) {
            throw DomainError("similarity_integral: profile diverges at the axis when p <= n");
        }
        // s = e^y keeps the integrand smooth when the upper limit is near 0.
        auto f = [=](double y) { return std::exp((1.0 - gamma) * y - std::exp(y) / beta); };
        const double y_upper = std::log(upper);
        if (y_upper >= 0.0) {
            chunked(f, 0.0, y_upper, 1.0);
        } else {
            chunked(f, y_upper, 0.0, 1.0);
            value = -value;
        }
    }
    if (!std::isfinite(value) || err > 1e-10 * std::max(l1, 1e-300)) {
        throw QuadratureError("similarity_integral: quadrature did not converge");
    }
    return C * value;
}

Solution similarity_integral(double C, const PParams& params)
{
    if (params.infinite()) {
        throw DomainError("similarity_integral: requires finite p");
    }
    const double gamma = params.alpha_over_beta();
    const double beta = params.beta;
    const int n = params.n;
    Solution s;
    s.label = "similarity_integral";
    s.params = params;
    s.value = [=](const Point& p) {
        if (!(p.t > 0.0)) {
            throw DomainError("similarity_integral: requires t > 0");
        }
        return similarity_profile(p.x.squaredNorm() / p.t, C, params);
    };
    s.jet = [=](const Point& p) {
        if (!(p.t > 0.0)) {
            throw DomainError("similarity_integral: requires t > 0");
        }
        const double zeta = p.x.squaredNorm() / p.t;
        const double f1 = C * std::pow(zeta, -gamma) * std::exp(-zeta / beta);
        const double f2 = f1 * (-gamma / zeta - 1.0 / beta);
        Jet2 j;
        j.u = similarity_profile(zeta, C, params);
        j.ut = -f1 * zeta / p.t;
        j.du = (2.0 * f1 / p.t) * p.x;
        j.d2u = (2.0 * f1 / p.t) * Mat::Identity(n, n) + (4.0 * f2 / (p.t * p.t)) * (p.x * p.x.transpose());
        return j;
    };
    s.singular = [](const Point& p) { return !(p.t > 0.0) || p.x.squaredNorm() == 0.0; };
    s.singular_distance = [](const Point& p) { return std::max(0.0, std::min(p.t, p.x.norm())); };
    s.role = C > 0.0 ? SignRole::subsolution : (C < 0.0 ? SignRole::supersolution : SignRole::solution);
    s.sample_box = unit_box(n, 2.0, 0.1, 2.0);
    return s;
}

Solution fundamental(const PParams& params, TimeSign sign)
{
    const double gamma = params.alpha_over_beta();
    const double beta = params.beta;
    const int n = params.n;
    const bool negative = sign == TimeSign::negative;
    const double flip = negative ? -1.0 : 1.0;
    auto require = [negative](const Point& p) {
        if (negative ? !(p.t < 0.0) : !(p.t > 0.0)) {
            throw DomainError(negative ? "fundamental: negative-time branch requires t < 0"
                                       : "fundamental: requires t > 0");
        }
    };

    Solution s;
    s.label = params.infinite() ? "fundamental_limit" : "fundamental";
    if (negative) {
        s.label += "_backward";
    }
    s.params = params;
    s.value = [=](const Point& p) {
        require(p);
        const double tau = flip * p.t;
        return std::pow(tau, -gamma) * std::exp(-p.x.squaredNorm() / (beta * tau));
    };
    s.jet = [=](const Point& p) {
        require(p);
        const double tau = flip * p.t;
        const double r2 = p.x.squaredNorm();
        const double u = std::pow(tau, -gamma) * std::exp(-r2 / (beta * tau));
        Jet2 j;
        j.u = u;
        j.ut = flip * u * (-gamma / tau + r2 / (beta * tau * tau));
        j.du = (-2.0 * u / (beta * tau)) * p.x;
        j.d2u = u * ((-2.0 / (beta * tau)) * Mat::Identity(n, n) +
                     (4.0 / (beta * beta * tau * tau)) * (p.x * p.x.transpose()));
        return j;
    };
    s.singular = [negative](const Point& p) { return negative ? !(p.t < 0.0) : !(p.t > 0.0); };
    s.singular_distance = [negative](const Point& p) { return std::max(0.0, negative ? -p.t : p.t); };
    s.backward = negative;
    s.sample_box = negative ? unit_box(n, 2.0, -2.0, -0.1) : unit_box(n, 2.0, 0.1, 2.0);
    return s;
}

double infinity_fundamental(const Vec& x, double t)
{
    if (!(t > 0.0)) {
        throw DomainError("infinity_fundamental: requires t > 0");
    }
    return std::exp(-x.squaredNorm() / (4.0 * t)) / std::sqrt(t);
}

double HeatTransform::rho_of_r(double r) const
{
    return std::pow(r, nu);
}

HeatTransform heat_transform(const PParams& params)
{
    if (params.infinite()) {
        throw DomainError("heat_transform: requires finite p");
    }
    if (!params.nu) {
        throw DomainError("heat_transform: rejects p = n");
    }
    const double p = params.p;
    const double n = params.n;
    HeatTransform h;
    h.nu = *params.nu;
    h.coefficient = (p - n) * (p - n) / (p * (p - 1.0));
    h.exponent = 2.0 * (1.0 - n) / (p - n);
    return h;
}

HeatTransform::Report HeatTransform::check(const std::function<double(double, double)>& v, const PParams& params,
                                           double h, double r_lo, double r_hi, double t_lo, double t_hi,
                                           int grid) const
{
    if (grid < 2) {
        throw DomainError("heat_transform check: grid must have at least 2 points per axis");
    }
    const int n = params.n;
    const double nu_ = nu;
    ScalarField u = [&v, nu_](const Point& p) { return v(std::pow(p.x.norm(), nu_), p.t); };

    Report rep;
    for (int i = 0; i < grid; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / (grid - 1);
        for (int k = 0; k < grid; ++k) {
            const double t = t_lo + (t_hi - t_lo) * k / (grid - 1);
            // Tilt the direction with the sample index so several rays are used.
            Vec dir = Vec::Zero(n);
            dir(0) = 1.0;
            if (n > 1) {
                dir(1 + (i + k) % (n - 1)) = 0.5 * ((i + k) % 3);
            }
            const Point pt(r * dir.normalized(), t);
            const double ru = residual(numeric_jet(u, pt, h), params);

            const double rho = rho_of_r(r);
            const double v0 = v(rho, t);
            const double v_tt = (v(rho, t + h) - v(rho, t - h)) / (2.0 * h);
            const double v_rr = (v(rho + h, t) - 2.0 * v0 + v(rho - h, t)) / (h * h);
            const double rv = v_tt - coefficient * std::pow(rho, exponent) * v_rr;

            rep.worst_u_residual = std::max(rep.worst_u_residual, std::abs(ru));
            rep.worst_v_residual = std::max(rep.worst_v_residual, std::abs(rv));
            rep.worst_identity_gap = std::max(rep.worst_identity_gap, std::abs(ru - rv));
            ++rep.samples;
        }
    }
    return rep;
}

Catalog catalog(const PParams& params)
{
    Catalog c;
    const int n = params.n;
    Vec a = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
        a(i) = 1.0 / (i + 1.0);
    }
    c.entries.push_back(traveling_wave(a, 1.0, 0.0, 1.0, params));
    if (params.infinite()) {
        c.skipped.push_back({"separable", "finite p only"});
        c.skipped.push_back({"similarity_integral", "finite p only"});
        c.entries.push_back(fundamental(params));
        c.skipped.push_back({"heat_transform", "finite p only"});
        return c;
    }
    if (params.nu) {
        c.entries.push_back(separable(1.0, params));
    } else {
        c.skipped.push_back({"separable", "p = n"});
    }
    c.entries.push_back(similarity_integral(1.0, params));
    c.entries.push_back(fundamental(params));
    if (!params.nu) {
        c.skipped.push_back({"heat_transform", "p = n"});
    }
    return c;
}

Solution catalog_entry(const std::string& label, const PParams& params)
{
    for (auto& s : catalog(params).entries) {
        if (s.label == label) {
            return s;
        }
    }
    throw DomainError("no catalog entry '" + label + "' for " + describe(params));
}

}  // namespace pparab
