#pragma once

#include "pparab/domain.hpp"
#include "pparab/numeric_jet.hpp"
#include "pparab/params.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pparab {

enum class SignRole { solution, supersolution, subsolution };
enum class TimeSign { positive, negative };

const char* to_string(SignRole role);

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An explicit function with closed-form second-order jet.
struct Solution {
    std::string label;
    PParams params;
    ScalarField value;
    std::function<Jet2(const Point&)> jet;
    /// Where the formula is not a classical solution.
    std::function<bool(const Point&)> singular;
    /// Space-time distance to the singular set; empty when there is none.
    /// Finite-difference checks keep their stencils away from it.
    std::function<double(const Point&)> singular_distance;
    SignRole role = SignRole::solution;
    /// Solves the time-reversed equation u_t + 𝓐ₚu = 0.
    bool backward = false;
    /// Region used for verification sampling.
    SpaceTimeBox sample_box;
};

/// Distance to the singular set, or +inf for entries without one.
double distance_to_singular(const Solution& s, const Point& p);

/// u = A + B exp(-(<a,x> - bt)/m), m = |a|²(p-1)/(bp) (m = |a|²/b at p = ∞).
Solution traveling_wave(const Vec& a, double b, double A, double B, const PParams& params);
double traveling_wave_m(const Vec& a, double b, const PParams& params);

/// u = A_q |x|² + c t with A_q = c/α; both sides of the equation equal c.
/// Rejects p = n.
Solution separable(double c, const PParams& params);
double separable_coefficient(double c, const PParams& params);

/// u = C ∫_{s0}^{|x|²/t} s^{-α/β} e^{-s/β} ds with s0 = 0 when α/β < 1
/// (p > n) and s0 = 1 otherwise. Subsolution for C > 0, supersolution for
/// C < 0 across the axis x = 0, where it is not differentiable.
Solution similarity_integral(double C, const PParams& params);

/// C ∫_{s0}^{zeta} s^{-α/β} e^{-s/β} ds by adaptive Gauss–Kronrod quadrature.
double similarity_profile(double zeta, double C, const PParams& params);

/// Hₚ(x, t) = t^{-α/β} exp(-|x|²/(βt)) on t > 0. With TimeSign::negative,
/// Hₚ(x, -t) on t < 0, which solves the backward equation.
Solution fundamental(const PParams& params, TimeSign sign = TimeSign::positive);

/// W(x, t) = t^{-1/2} exp(-|x|²/(4t)), the p → ∞ limit of Hₚ.
double infinity_fundamental(const Vec& x, double t);

/// Radial change of variables u(x, t) = v(|x|^ν, t), ν = (p-n)/(p-1), which
/// turns the equation into v_t = coefficient · ρ^exponent · v_ρρ.
struct HeatTransform {
    double nu = 1.0;
    double coefficient = 0.5;
    double exponent = 0.0;

    [[nodiscard]] double rho_of_r(double r) const;

    struct Report {
        double worst_u_residual = 0.0;
        double worst_v_residual = 0.0;
        /// max |(u_t - 𝓐ₚu) - (v_t - coefficient ρ^e v_ρρ)|; the two
        /// residuals agree pointwise.
        double worst_identity_gap = 0.0;
        int samples = 0;
    };

    /// Samples r ∈ [r_lo, r_hi], t ∈ [t_lo, t_hi] on a grid with
    /// finite-difference jets of step h for both u and v.
    [[nodiscard]] Report check(const std::function<double(double, double)>& v, const PParams& params,
                               double h = 1e-3, double r_lo = 0.5, double r_hi = 1.5, double t_lo = 0.5,
                               double t_hi = 1.5, int grid = 8) const;
};

/// Rejects p = n and p = ∞.
HeatTransform heat_transform(const PParams& params);

struct SkippedEntry {
    std::string label;
    std::string reason;
};

struct Catalog {
    std::vector<Solution> entries;
    std::vector<SkippedEntry> skipped;
};

/// Every constructible entry with default constants.
Catalog catalog(const PParams& params);

/// Catalog entry by label; throws DomainError if absent for these params.
Solution catalog_entry(const std::string& label, const PParams& params);

}  // namespace pparab
