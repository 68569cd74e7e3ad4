#pragma once

#include "pparab/domain.hpp"
#include "pparab/solutions.hpp"
#include "pparab/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pparab {

enum class Verdict { consistent_with_regular, consistent_with_irregular, inconclusive };

const char* to_string(Verdict v);

inline constexpr double kGapTol = 0.05;
inline constexpr double kIrrFloor = 0.15;

/// Samples closer than this to a singular set are skipped, so that
/// finite-difference stencils of step 1e-3 resolve the field.
inline constexpr double kSingularMargin = 0.25;

struct SolutionCheck {
    std::string label;
    double p = 0.0;
    int n = 0;
    int samples = 0;
    /// max |u_t - 𝓐ₚu| with analytic jets (u_t + 𝓐ₚu for backward entries).
    double max_residual = 0.0;
    /// Same with numeric_jet at step fd_h.
    double max_fd_residual = 0.0;
    /// Median over the first 20 samples of |jet - numeric_jet(h)| /
    /// |jet - numeric_jet(h/2)|, h = 1e-2. NaN when the difference quotients
    /// are exact (fields of degree ≤ 2).
    double jet_ratio = 0.0;
};

/// Quasi-random samples of the entry's sample box, skipping the singular set,
/// its kSingularMargin neighbourhood and points with |Du| ≤ kDefaultTau.
SolutionCheck verify_solution(const Solution& s, int n_samples = 200, std::uint64_t seed = 0, double fd_h = 1e-3);

/// verify_solution over every catalog entry at params.
std::vector<SolutionCheck> verify_solutions(const PParams& params, int n_samples = 200, std::uint64_t seed = 0);

struct ProbeLevel {
    double h = 0.0;
    double approach_value = 0.0;
    /// Grid point whose value was read.
    Point probe;
};

struct RegularityReport {
    Point target;
    std::vector<ProbeLevel> levels;
    double datum_at_target = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::vector<double> gap_sequence;

    [[nodiscard]] bool strictly_decreasing() const;
};

/// Verdict rule on a gap sequence: regular if strictly decreasing with the
/// last gap below gap_tol, irregular if the last three gaps all exceed
/// irr_floor, inconclusive otherwise.
Verdict classify_gaps(const std::vector<double>& gaps, double gap_tol = kGapTol, double irr_floor = kIrrFloor);

struct ProbeOptions {
    /// Space-time direction of the approach path; defaults to backwards in
    /// time along the target's spatial position.
    std::optional<Vec> approach_x;
    std::optional<double> approach_t;
    /// Distance of the probe point from the target in units of h.
    double distance_in_h = 2.0;
};

/// Datum f(η) = min(1, |η - target|) (space-time distance). For each h the
/// domain is solved on its own bbox with dt at the CFL bound, and the value at
/// the interior node nearest to target + distance·h·direction is recorded.
RegularityReport probe_regularity(const Domain& domain, const Point& target, const PParams& params,
                                  const std::vector<double>& h_levels, double gap_tol = kGapTol,
                                  double irr_floor = kIrrFloor, const ProbeOptions& options = {});

/// Multilinear in space, linear in time interpolant of a grid solution;
/// NaN where a needed node is exterior or off the grid.
ScalarField grid_field(const GridSolution& gsol);

struct CylinderTopReport {
    bool interiors_identical = false;
    int samples = 0;
    /// min over samples of (h̃_t - 𝓐ₚh̃), h̃ = h_discrete + ε/(T-t).
    double min_residual = 0.0;
    /// max over samples of |(h̃_t - 𝓐ₚh̃) - ε/(T-t)²|, the O(h) defect.
    double worst_defect = 0.0;
    /// 2ε/(T-t) at the latest sample time.
    double bracket_width = 0.0;
    double eps = 0.0;

    [[nodiscard]] bool bracket_ok() const { return samples > 0 && min_residual > 0.0; }
};

/// Solves the cylinder twice with the same lateral and bottom data and
/// different data on the top face, then checks the h̃ bracket on interior
/// samples with T - t ≥ min_gap.
CylinderTopReport cylinder_top_experiment(const Vec& lo, const Vec& hi, double t0, double t1, const PParams& params,
                                          double h, double eps, const ScalarField& datum, double min_gap = 0.25);

struct SweepRow {
    double p = 0.0;
    double h = 0.0;
    double linf_gap_to_infty = 0.0;
};

/// Solves for each p and for p = ∞ on one grid (dt = smallest CFL bound) and
/// reports the L∞ distance over interior nodes to the ∞-solution.
std::vector<SweepRow> sweep_p(const Domain& domain, const ScalarField& datum, double h,
                              const std::vector<double>& p_list, int n);

struct LimitRow {
    Point point;
    double p = 0.0;
    double h_p = 0.0;
    double w = 0.0;
    double gap = 0.0;
};

/// |Hₚ(x,t) - W(x,t)| per point and p; requires t > 0.
std::vector<LimitRow> fundamental_limit_check(const std::vector<Point>& points, const std::vector<double>& p_list);

}  // namespace pparab
