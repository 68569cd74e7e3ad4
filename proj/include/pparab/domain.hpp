#pragma once

#include "pparab/expression.hpp"
#include "pparab/params.hpp"

#include <functional>
#include <string>

namespace pparab {

/// Axis-aligned box in space times a time interval.
struct SpaceTimeBox {
    Vec lo;
    Vec hi;
    double t0 = 0.0;
    double t1 = 1.0;

    [[nodiscard]] int dim() const { return static_cast<int>(lo.size()); }
    [[nodiscard]] bool contains(const Point& p) const;
    /// Componentwise cover of both boxes.
    [[nodiscard]] SpaceTimeBox hull(const SpaceTimeBox& other) const;
    [[nodiscard]] double diameter() const;
};

/// Implicit space-time domain {phi < 0}. phi is zero on the boundary and
/// positive outside; the closure lies in bbox.
struct Domain {
    std::function<double(const Point&)> phi;
    SpaceTimeBox bbox;
    std::string label;

    [[nodiscard]] int dim() const { return bbox.dim(); }
};

struct BoundarySample {
    Point point;
    /// True if the point lies on the bottom or lateral part of the boundary
    /// (the parabolic boundary when the domain is a cylinder).
    bool is_parabolic = true;
    double phi = 0.0;
};

class ProjectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bisection target for boundary points.
inline constexpr double kBoundaryTolerance = 1e-10;

/// phi(point) < 0; points outside the bbox are never contained.
bool contains(const Domain& domain, const Point& point);

/// Open box × (t0, t1).
Domain cylinder(const Vec& lo, const Vec& hi, double t0, double t1);

/// |x - cx|² + (t - ct)² < R².
Domain spacetime_ball(const Vec& center_x, double center_t, double radius);

/// Points of `box` outside the closed ball |x - cx|² + (t - ct)² ≤ R².
Domain ball_exterior(const Vec& center_x, double center_t, double radius, const SpaceTimeBox& box);

/// Region between |x|² = -factor·β·t·log|log|t|| and t = -c, t < 0.
/// factor = 1 is the regular Petrovsky domain, factor > 1 the irregular
/// family. Requires factor ≥ 1 and 0 < c < 1/e so that log|log|t|| > 0.
Domain petrovsky_domain(double factor, double c, const PParams& params);

/// Hₚ(y, s) = s^{-α/β} exp(-|y|²/(βs)) for s > 0, 0 otherwise.
double fundamental_kernel(const Vec& y, double s, const PParams& params);

/// Super-level set Hₚ(apex_x - x, apex_t - t) > level. The apex is a
/// boundary point (the latest moment of the ball). Finite p only.
Domain heat_ball(double level, const Vec& apex_x, double apex_t, const PParams& params);

/// {expr < 0} inside the given bbox.
Domain expression_domain(const Expression& expr, const SpaceTimeBox& bbox);

/// Bisection on the segment from `inside` (phi < 0) to `outside`
/// (phi ≥ 0). Deterministic; returns the endpoint of the final bracket with
/// the smaller |phi|.
BoundarySample project_to_boundary(const Domain& domain, const Point& inside, const Point& outside);

/// Searches the 2n+2 axis directions (space and time) with step `step`,
/// doubling up to the bbox, and projects toward the nearest exterior point.
BoundarySample project_to_boundary(const Domain& domain, const Point& inside, double step);

/// Cylinder-style classification of a boundary point: false only for points
/// on a "top" (inside just before, outside just after, and not on a
/// lateral part).
bool is_parabolic_point(const Domain& domain, const Point& point, double probe = 1e-7);

}  // namespace pparab
