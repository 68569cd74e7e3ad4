#pragma once

#include "pparab/domain.hpp"
#include "pparab/numeric_jet.hpp"
#include "pparab/params.hpp"
#include "pparab/solutions.hpp"

#include <cstdint>
#include <vector>

namespace pparab {

enum class NodeClass : std::uint8_t { exterior = 0, boundary = 1, interior = 2 };

const char* to_string(NodeClass c);

class CflError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InstabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Uniform grid: nodes lo + i·h in space, t0 + k·dt in time, up to the
/// upper corner of bbox.
struct GridSpec {
    double h = 0.1;
    double dt = 0.0;
    SpaceTimeBox bbox;

    [[nodiscard]] std::vector<int> shape() const;
    [[nodiscard]] int slices() const;
};

/// 0.9 h² / (2 (n/p + max(1/p, (p-1)/p))); 0.9 h²/2 at p = ∞.
double cfl_max_dt(double h, const PParams& params);

struct SolveOptions {
    /// Negative controls only: march even when dt exceeds the CFL bound.
    bool allow_cfl_violation = false;
    /// Admit 1 < p < 2 with the monotone reformulation; no convergence claim.
    bool experimental_subquadratic = false;
    /// When false, non-finite values are kept instead of raising.
    bool throw_on_nonfinite = true;
};

/// Full space-time discrete solution. values are NaN at exterior nodes.
struct GridSolution {
    GridSpec spec;
    PParams params;
    std::vector<int> shape;
    int node_count = 0;
    int slice_count = 0;
    std::vector<NodeClass> node_class;
    std::vector<double> values;

    [[nodiscard]] std::size_t at(int node, int slice) const
    {
        return static_cast<std::size_t>(slice) * static_cast<std::size_t>(node_count) +
               static_cast<std::size_t>(node);
    }
    [[nodiscard]] NodeClass cls(int node, int slice) const { return node_class[at(node, slice)]; }
    [[nodiscard]] double value(int node, int slice) const { return values[at(node, slice)]; }
    [[nodiscard]] double time(int slice) const { return spec.bbox.t0 + slice * spec.dt; }
    [[nodiscard]] Vec position(int node) const;
    [[nodiscard]] Point point(int node, int slice) const { return {position(node), time(slice)}; }
    [[nodiscard]] std::vector<int> multi_index(int node) const;
    /// -1 when any component is out of range.
    [[nodiscard]] int node_index(const std::vector<int>& multi) const;
    /// Nearest grid node to x (clamped to the grid).
    [[nodiscard]] int nearest_node(const Vec& x) const;
};

/// Node classes and boundary datum points for every slice. A node is
/// interior at slice k iff phi < 0 there, all 3ⁿ spatial neighbours have
/// phi < 0 at slice k, and the node and its neighbours have phi < 0 at
/// slice k-1. Other nodes with phi < 0 are boundary; their datum point is the
/// projection toward the nearest exterior candidate (spatial neighbours at k,
/// then the node at k-1, then its neighbours at k-1), or the node itself
/// when no candidate exists (initial data).
struct Raster {
    GridSpec spec;
    std::vector<int> shape;
    int node_count = 0;
    int slice_count = 0;
    std::vector<NodeClass> node_class;
    /// Per slice: (node, datum point) for every boundary node.
    std::vector<std::vector<std::pair<int, Point>>> datum_points;

    [[nodiscard]] NodeClass cls(int node, int slice) const
    {
        return node_class[static_cast<std::size_t>(slice) * static_cast<std::size_t>(node_count) +
                          static_cast<std::size_t>(node)];
    }
};

/// Throws DomainError if no node is ever interior.
Raster rasterize(const Domain& domain, const GridSpec& spec);

/// Spatial stencil of one slice: values over the grid of a GridSpec, with
/// NaN at exterior nodes.
struct SliceView {
    const double* values = nullptr;
    const std::vector<int>* shape = nullptr;
    const std::vector<long>* strides = nullptr;
};

/// (1/p)·Laplacian + ((p-2)/p)·(max + min - 2u)/r², max and min over sampled
/// points of the sphere of radius r = √h (h near exterior nodes, exact 3-point
/// in one dimension), off-grid values by multilinear interpolation. The
/// directional term is skipped when its weight is 0 (p = 2). For 1 < p < 2
/// the form (1/p)·Σ_{e ⊥ v} D_ee + ((p-1)/p)·D_vv along the central-difference
/// gradient v is used instead, with the mean of the extreme axis and diagonal
/// second differences when |gradient| ≤ h.
double discrete_operator(const SliceView& slice, int node, const PParams& params, double h);

/// Forward Euler on the rasterized domain. Boundary nodes take
/// datum(projected point) at every slice; the top is never read.
GridSolution solve(const Domain& domain, const ScalarField& datum, const GridSpec& spec, const PParams& params,
                   const SolveOptions& options = {});

struct ErrorReport {
    double linf = 0.0;
    /// Euclidean norm of the nodal errors.
    double l2 = 0.0;
    double h = 0.0;
    double dt = 0.0;
    long n_interior = 0;
};

/// Errors over interior nodes in the final quarter of the time window.
ErrorReport error_vs(const GridSolution& gsol, const ScalarField& exact);
ErrorReport error_vs(const GridSolution& gsol, const Solution& exact);

/// Largest amount by which an interior value leaves [min, max] of the
/// boundary values seen up to its slice.
double max_principle_violation(const GridSolution& gsol);

struct ComparisonReport {
    bool ok = true;
    long violations = 0;
    double worst = 0.0;
};

/// Solves with both data and checks low ≤ high + 1e-12 at every interior
/// node and slice. Non-finite values count as violations.
ComparisonReport check_discrete_comparison(const Domain& domain, const ScalarField& datum_low,
                                           const ScalarField& datum_high, const GridSpec& spec,
                                           const PParams& params, const SolveOptions& options = {});

}  // namespace pparab
