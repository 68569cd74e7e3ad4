#pragma once

#include "pparab/domain.hpp"
#include "pparab/numeric_jet.hpp"
#include "pparab/params.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace pparab {

enum class Orientation { supersolution_barrier, subsolution_witness };
enum class Construction { exterior_sphere, petrovsky, irregularity };

const char* to_string(Orientation o);
const char* to_string(Construction c);

/// Default time slab |t| < e^{-e²} for the Petrovsky barrier.
double default_petrovsky_slab();

struct Barrier {
    std::string label;
    Construction construction = Construction::exterior_sphere;
    Orientation orientation = Orientation::supersolution_barrier;
    PParams params;
    ScalarField value;
    std::function<Jet2(const Point&)> jet;
    std::function<bool(const Point&)> singular;
    /// Absent when the domain cannot be represented in floating point.
    std::optional<Domain> domain;
    Point target;
    std::map<std::string, double> constants;
};

struct BarrierReport {
    bool positivity_ok = false;
    bool boundary_liminf_ok = false;
    bool vanishing_at_target_ok = false;
    bool supersolution_ok = false;
    double worst_violation = 0.0;
    int sample_count = 0;
    /// Smallest boundary value away from the target (the level m for a
    /// subsolution witness).
    double boundary_floor = 0.0;
    /// Last values along the approach paths.
    std::vector<double> approach_tail;
    /// Petrovsky only: max mismatch between the jet-based bracket and its
    /// closed form.
    double identity_gap = 0.0;
    /// Description of the first failing sample, empty if none.
    std::string witness;

    [[nodiscard]] bool all_ok() const
    {
        return positivity_ok && boundary_liminf_ok && vanishing_at_target_ok && supersolution_ok;
    }
};

/// a = (R0 + (p+n-2)/(2p) + 1) · p/((p-1)δ²), which satisfies
/// -R0 + a (p-1)/p δ² > (p+n-2)/(2p) with margin 1.
double choose_sphere_parameter(double delta, double R0, const PParams& params);

/// w_t - 𝓐ₚw for w = e^{-aR0²} - e^{-aR²}, R² = |x-x'|² + (t-t')²:
/// 2a e^{-aR²} [(t-t') + 2a(p-1)/p |x-x'|² - (p+n-2)/p]. Valid on and off
/// the axis x = x' (there D²w is a multiple of the identity).
double sphere_residual(const Vec& center_x, double center_t, double a, const Point& point, const PParams& params);

/// Barrier for the exterior of the closed ball of radius R0 at a contact
/// point. The barrier domain is a box around the contact minus the ball of
/// radius 2R0 internally tangent at the contact, so the contact is the only
/// boundary zero of w. Rejects south-pole contacts and north-pole contacts
/// with R0 < α/2.
Barrier exterior_sphere_barrier(const Vec& center_x, double center_t, double R0, const Point& contact,
                                const PParams& params);

/// Same geometry with a caller-chosen a and no admissibility checks; used for
/// negative controls (south pole, a below the threshold).
Barrier exterior_sphere_barrier_unchecked(const Vec& center_x, double center_t, double R0, const Point& contact,
                                          double a, const PParams& params);

/// w = -c|log|t||^{-(δ+1)} e^{-|x|²/(βt)} + |log|t||^{-δ}, δ = cα/β, on the
/// factor-1 Petrovsky domain with time slab c_time < 1/e. Target: origin.
Barrier petrovsky_barrier(double c, const PParams& params, double c_time = default_petrovsky_slab());

/// t |log|t||^{δ+1} e^{|x|²/(βt)} (w_t - 𝓐ₚw) in closed form.
double petrovsky_bracket(double c, double L, double xi, const PParams& params);

/// Sharp irregularity subsolution, evaluated in the log variables
/// ℓ = log|log|t|| and ξ = |x|²/(β|t|):
///   w = -exp(kξ - (1+ε₁)ℓ) + 1/ℓ.
/// Its domain {w > m} ∩ {ℓ > ℓ₀} lies at |t| < exp(-e^{ℓ₀}) and is not
/// representable on a floating-point grid; Barrier::domain is empty.
struct IrregularityWitness {
    Barrier barrier;
    double eps1 = 0.2;
    double k = 0.9;
    double m = -0.5;
    /// ℓ₀, start of the slab.
    double log_log_start = 0.0;
    /// The bound (ε₁/2)ℓ > 4α/β alone.
    double log_log_analytic_bound = 0.0;
    /// Target ε for the containment check, if one was supplied.
    std::optional<double> target_eps;
    /// (1+ε)ℓ₀ - ξ_m(ℓ₀), positive when the slab start lies inside the
    /// factor 1+ε Petrovsky domain.
    std::optional<double> containment_margin;

    /// w in log variables.
    [[nodiscard]] double value(double xi, double ell) const;
    /// Edge ξ_m(ℓ) of the level domain {w > m}.
    [[nodiscard]] double level_edge(double ell) const;
    /// Normalised residual T: t(w_t - 𝓐ₚw) / (L^{-1-ε₁} e^{kξ}). The
    /// subsolution inequality w_t ≤ 𝓐ₚw holds iff T ≥ 0.
    [[nodiscard]] double sign_function(double xi, double ell) const;
    /// min over ξ ≥ 0 of sign_function (convex in ξ).
    [[nodiscard]] double sign_minimum(double ell) const;
};

/// Rejects ε₁ ≤ 0, k ∉ (1/2, 1), m ≥ 0, and (ε₁+1)/k ≥ 1 + ε/2 when
/// target_eps is given.
IrregularityWitness irregularity_subsolution(double eps1, double k, double m, const PParams& params,
                                             std::optional<double> target_eps = std::nullopt);

/// Samples the barrier axioms. For a supersolution barrier: w > 0 inside,
/// w bounded below on the boundary away from the target, w → 0 along three
/// approach paths, and w_t - 𝓐ₚw ≥ -tol (lower envelope where Dw = 0). For a
/// subsolution witness: w > m inside, w = m on the lateral boundary, w → 0
/// along interior paths, and the subsolution sign.
BarrierReport verify_barrier(const Barrier& barrier, int n_samples, double tol, std::uint64_t seed = 0);
BarrierReport verify_barrier(const IrregularityWitness& witness, int n_samples, double tol, std::uint64_t seed = 0);

}  // namespace pparab
