#include "pparab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pparab {

bool SpaceTimeBox::contains(const Point& p) const
{
    if (p.t < t0 || p.t > t1 || p.dim() != dim()) {
        return false;
    }
    for (int i = 0; i < dim(); ++i) {
        if (p.x(i) < lo(i) || p.x(i) > hi(i)) {
            return false;
        }
    }
    return true;
}

SpaceTimeBox SpaceTimeBox::hull(const SpaceTimeBox& other) const
{
    return {lo.cwiseMin(other.lo), hi.cwiseMax(other.hi), std::min(t0, other.t0), std::max(t1, other.t1)};
}

double SpaceTimeBox::diameter() const
{
    const double dt = t1 - t0;
    return std::sqrt((hi - lo).squaredNorm() + dt * dt);
}

bool contains(const Domain& domain, const Point& point)
{
    if (!domain.bbox.contains(point)) {
        return false;
    }
    return domain.phi(point) < 0.0;
}

namespace {

double box_phi(const Vec& lo, const Vec& hi, double t0, double t1, const Point& p)
{
    double v = std::max(t0 - p.t, p.t - t1);
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
        v = std::max(v, std::max(lo(i) - p.x(i), p.x(i) - hi(i)));
    }
    return v;
}

void require_box(const Vec& lo, const Vec& hi, double t0, double t1)
{
    if (lo.size() != hi.size() || lo.size() == 0) {
        throw DomainError("box corners must have the same nonzero dimension");
    }
    if (!(t0 < t1)) {
        throw DomainError("box requires t0 < t1");
    }
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
        if (!(lo(i) < hi(i))) {
            throw DomainError("box is degenerate in a spatial direction");
        }
    }
}

Vec filled(int n, double v)
{
    return Vec::Constant(n, v);
}

// Solves L log L = 1, the maximiser of s·log|log s| on (0, 1/e).
double petrovsky_widest_log()
{
    double L = 1.76;
    for (int i = 0; i < 50; ++i) {
        const double f = L * std::log(L) - 1.0;
        const double df = std::log(L) + 1.0;
        L -= f / df;
    }
    return L;
}

}  // namespace

Domain cylinder(const Vec& lo, const Vec& hi, double t0, double t1)
{
    require_box(lo, hi, t0, t1);
    Domain d;
    d.bbox = {lo, hi, t0, t1};
    d.label = "cylinder";
    d.phi = [lo, hi, t0, t1](const Point& p) { return box_phi(lo, hi, t0, t1, p); };
    return d;
}

Domain spacetime_ball(const Vec& center_x, double center_t, double radius)
{
    if (!(radius > 0.0)) {
        throw DomainError("spacetime_ball: radius must be positive");
    }
    const int n = static_cast<int>(center_x.size());
    Domain d;
    d.bbox = {center_x - filled(n, radius), center_x + filled(n, radius), center_t - radius, center_t + radius};
    d.label = "ball";
    const double r2 = radius * radius;
    d.phi = [center_x, center_t, r2](const Point& p) {
        const double dt = p.t - center_t;
        return (p.x - center_x).squaredNorm() + dt * dt - r2;
    };
    return d;
}

Domain ball_exterior(const Vec& center_x, double center_t, double radius, const SpaceTimeBox& box)
{
    if (!(radius > 0.0)) {
        throw DomainError("ball_exterior: radius must be positive");
    }
    require_box(box.lo, box.hi, box.t0, box.t1);
    Domain d;
    d.bbox = box;
    d.label = "ball-exterior";
    const double r2 = radius * radius;
    d.phi = [center_x, center_t, r2, box](const Point& p) {
        const double dt = p.t - center_t;
        const double outside = r2 - (p.x - center_x).squaredNorm() - dt * dt;
        return std::max(box_phi(box.lo, box.hi, box.t0, box.t1, p), outside);
    };
    return d;
}

Domain petrovsky_domain(double factor, double c, const PParams& params)
{
    if (!(factor >= 1.0)) {
        throw DomainError("petrovsky_domain: factor must be >= 1");
    }
    const double inv_e = std::exp(-1.0);
    if (!(c > 0.0) || !(c < inv_e)) {
        throw DomainError(
            "petrovsky_domain: requires 0 < c < 1/e so that log|log|t|| > 0 on the whole time slab");
    }
    if (params.infinite() && params.beta != 4.0) {
        throw DomainError("petrovsky_domain: inconsistent parameters");
    }
    const double scale = factor * params.beta;
    const int n = params.n;

    // Continuous extension outside the slab: max(|x|², ...) keeps phi ≥ 0
    // and matches the lateral term at t = 0 and t = -1/e, where log|log|t||·t
    // vanishes.
    auto phi = [scale, c, inv_e](const Point& p) {
        const double r2 = p.x.squaredNorm();
        const double t = p.t;
        if (t >= 0.0) {
            return std::max(r2, t);
        }
        if (t <= -inv_e) {
            return std::max(r2, -c - t);
        }
        const double L = -std::log(-t);
        const double lateral = r2 + scale * t * std::log(L);
        return std::max(lateral, -c - t);
    };

    const double L_star = petrovsky_widest_log();
    const double s_star = std::exp(-L_star);
    const double s_peak = std::min(s_star, c);
    const double width = std::sqrt(scale * s_peak * std::log(-std::log(s_peak)));
    const double margin = 1e-9 + 1e-6 * width;

    Domain d;
    d.bbox = {filled(n, -(width + margin)), filled(n, width + margin), -c, 0.0};
    d.label = factor == 1.0 ? "petrovsky" : "petrovsky-widened";
    d.phi = phi;
    return d;
}

double fundamental_kernel(const Vec& y, double s, const PParams& params)
{
    if (!(s > 0.0)) {
        return 0.0;
    }
    return std::pow(s, -params.alpha_over_beta()) * std::exp(-y.squaredNorm() / (params.beta * s));
}

Domain heat_ball(double level, const Vec& apex_x, double apex_t, const PParams& params)
{
    if (!(level > 0.0)) {
        throw DomainError("heat_ball: level must be positive");
    }
    if (params.infinite()) {
        throw DomainError("heat_ball: requires finite p");
    }
    if (static_cast<int>(apex_x.size()) != params.n) {
        throw DomainError("heat_ball: apex dimension does not match n");
    }
    // On the axis Hₚ = s^{-α/β} > level iff s < level^{-β/α}; the widest
    // slice sits at s_max / e with half-width sqrt(α s_max / e).
    const double s_max = std::pow(level, -params.beta / params.alpha);
    const double width = std::sqrt(params.alpha * s_max / std::numbers::e);
    const double margin = 1e-9 + 1e-6 * width;
    const int n = params.n;

    Domain d;
    d.bbox = {apex_x - filled(n, width + margin), apex_x + filled(n, width + margin), apex_t - s_max, apex_t};
    d.label = "heatball";
    d.phi = [level, apex_x, apex_t, params](const Point& p) {
        const double s = apex_t - p.t;
        if (!(s > 0.0)) {
            return level;
        }
        return level - fundamental_kernel(apex_x - p.x, s, params);
    };
    return d;
}

Domain expression_domain(const Expression& expr, const SpaceTimeBox& bbox)
{
    require_box(bbox.lo, bbox.hi, bbox.t0, bbox.t1);
    Domain d;
    d.bbox = bbox;
    d.label = "custom";
    d.phi = [expr](const Point& p) { return expr(p); };
    return d;
}

BoundarySample project_to_boundary(const Domain& domain, const Point& inside, const Point& outside)
{
    double f_in = domain.phi(inside);
    double f_out = domain.phi(outside);
    if (!(f_in < 0.0) || !(f_out >= 0.0)) {
        throw ProjectionError("project_to_boundary: no sign change on the segment");
    }
    BoundarySample out;
    if (f_out == 0.0) {
        out.point = outside;
        out.phi = 0.0;
        out.is_parabolic = is_parabolic_point(domain, out.point);
        return out;
    }
    // Parametrise by λ ∈ [0, 1] so the iteration is identical for shifted
    // copies of the same configuration.
    double lo = 0.0;
    double hi = 1.0;
    const Vec dx = outside.x - inside.x;
    const double dt = outside.t - inside.t;
    auto at = [&](double lambda) { return Point(inside.x + lambda * dx, inside.t + lambda * dt); };
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double f_mid = domain.phi(at(mid));
        if (f_mid < 0.0) {
            lo = mid;
            f_in = f_mid;
        } else {
            hi = mid;
            f_out = f_mid;
            if (f_mid == 0.0) {
                break;
            }
        }
    }
    const bool take_hi = std::abs(f_out) <= std::abs(f_in);
    out.point = at(take_hi ? hi : lo);
    out.phi = take_hi ? f_out : f_in;
    out.is_parabolic = is_parabolic_point(domain, out.point);
    return out;
}

BoundarySample project_to_boundary(const Domain& domain, const Point& inside, double step)
{
    if (!(step > 0.0)) {
        throw DomainError("project_to_boundary: step must be positive");
    }
    if (!(domain.phi(inside) < 0.0)) {
        throw ProjectionError("project_to_boundary: start point is not inside the domain");
    }
    const int n = inside.dim();
    const double reach = domain.bbox.diameter() + step;
    for (double s = step; s <= 2.0 * reach; s *= 2.0) {
        bool found = false;
        BoundarySample best;
        double best_dist = kInfinity;
        for (int axis = 0; axis <= n; ++axis) {
            for (double sign : {1.0, -1.0}) {
                Point q = inside;
                if (axis < n) {
                    q.x(axis) += sign * s;
                } else {
                    q.t += sign * s;
                }
                if (domain.phi(q) >= 0.0) {
                    BoundarySample cand = project_to_boundary(domain, inside, q);
                    const double dist = std::hypot((cand.point.x - inside.x).norm(), cand.point.t - inside.t);
                    if (dist < best_dist) {
                        best_dist = dist;
                        best = cand;
                        found = true;
                    }
                }
            }
        }
        if (found) {
            return best;
        }
    }
    throw ProjectionError("project_to_boundary: no exterior point found within the bounding box");
}

bool is_parabolic_point(const Domain& domain, const Point& point, double probe)
{
    const double eta = probe * std::max(1.0, domain.bbox.diameter());
    Point before = point;
    before.t -= eta;
    Point after = point;
    after.t += eta;
    if (!(domain.phi(before) < 0.0) || domain.phi(after) < 0.0) {
        return true;
    }
    for (int i = 0; i < point.dim(); ++i) {
        for (double sign : {1.0, -1.0}) {
            Point q = before;
            q.x(i) += sign * eta;
            if (!(domain.phi(q) < 0.0)) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace pparab
