#include "pparab/lab.hpp"

#include "pparab/operator.hpp"
#include "pparab/parallel.hpp"
#include "pparab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace pparab {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::consistent_with_regular: return "consistent_with_regular";
    case Verdict::consistent_with_irregular: return "consistent_with_irregular";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

SolutionCheck verify_solution(const Solution& s, int n_samples, std::uint64_t seed, double fd_h)
{
    if (n_samples < 1) {
        throw std::invalid_argument("verify_solution: n_samples must be positive");
    }
    const int n = s.params.n;
    const auto& box = s.sample_box;
    auto res = [&](const Jet2& j) {
        return s.backward ? backward_residual(j, s.params) : residual(j, s.params);
    };

    SolutionCheck out;
    out.label = s.label;
    out.p = s.params.p;
    out.n = n;
    constexpr int ratio_points = 20;
    constexpr double ratio_h = 1e-2;
    constexpr double exact_floor = 1e-9;
    std::vector<double> ratios;
    Halton seq(n + 1, seed);
    const std::uint64_t max_tries = 1000ULL * static_cast<std::uint64_t>(n_samples);
    for (std::uint64_t i = 0; out.samples < n_samples; ++i) {
        if (i == max_tries) {
            throw std::runtime_error("verify_solution: sample box of " + s.label + " is mostly singular");
        }
        const auto u = seq.at(i);
        Point pt(Vec(n), 0.0);
        for (int d = 0; d < n; ++d) {
            pt.x(d) = box.lo(d) + u[d] * (box.hi(d) - box.lo(d));
        }
        pt.t = box.t0 + u[n] * (box.t1 - box.t0);
        if (s.singular(pt) || distance_to_singular(s, pt) < kSingularMargin) {
            continue;
        }
        const Jet2 j = s.jet(pt);
        if (j.du.norm() <= kDefaultTau) {
            continue;
        }
        out.max_residual = std::max(out.max_residual, std::abs(res(j)));
        out.max_fd_residual = std::max(out.max_fd_residual, std::abs(res(numeric_jet(s.value, pt, fd_h))));
        if (out.samples < ratio_points) {
            const double e1 = jet_distance(j, numeric_jet(s.value, pt, ratio_h));
            const double e2 = jet_distance(j, numeric_jet(s.value, pt, ratio_h / 2));
            if (e1 > exact_floor) {
                ratios.push_back(e1 / e2);
            }
        }
        ++out.samples;
    }
    if (ratios.empty()) {
        out.jet_ratio = std::numeric_limits<double>::quiet_NaN();
    } else {
        std::sort(ratios.begin(), ratios.end());
        const std::size_t m = ratios.size() / 2;
        out.jet_ratio = ratios.size() % 2 ? ratios[m] : 0.5 * (ratios[m - 1] + ratios[m]);
    }
    return out;
}

std::vector<SolutionCheck> verify_solutions(const PParams& params, int n_samples, std::uint64_t seed)
{
    const Catalog cat = catalog(params);
    std::vector<SolutionCheck> out(cat.entries.size());
    parallel_for(out.size(), [&](std::size_t i) { out[i] = verify_solution(cat.entries[i], n_samples, seed); });
    return out;
}

bool RegularityReport::strictly_decreasing() const
{
    for (std::size_t i = 1; i < gap_sequence.size(); ++i) {
        if (!(gap_sequence[i] < gap_sequence[i - 1])) {
            return false;
        }
    }
    return !gap_sequence.empty();
}

Verdict classify_gaps(const std::vector<double>& gaps, double gap_tol, double irr_floor)
{
    if (gaps.size() < 3) {
        return Verdict::inconclusive;
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
        decreasing = decreasing && gaps[i] < gaps[i - 1];
    }
    if (decreasing && gaps.back() < gap_tol) {
        return Verdict::consistent_with_regular;
    }
    const std::size_t k = gaps.size();
    if (gaps[k - 1] > irr_floor && gaps[k - 2] > irr_floor && gaps[k - 3] > irr_floor) {
        return Verdict::consistent_with_irregular;
    }
    return Verdict::inconclusive;
}

namespace {

double st_distance(const Point& a, const Point& b)
{
    return std::hypot((a.x - b.x).norm(), a.t - b.t);
}

// Topological boundary test: phi ≥ 0 at the target (up to rounding) and
// interior points along the approach direction arbitrarily close.
bool on_boundary(const Domain& domain, const Point& target, const Vec& dx, double dt)
{
    if (domain.phi(target) < -kBoundaryTolerance) {
        return false;
    }
    int inside = 0;
    for (int j = 4; j <= 40; j += 4) {
        const double s = std::ldexp(1.0, -j);
        if (domain.phi(Point(target.x + s * dx, target.t + s * dt)) < 0.0) {
            ++inside;
        }
    }
    return inside >= 5;
}

}  // namespace

RegularityReport probe_regularity(const Domain& domain, const Point& target, const PParams& params,
                                  const std::vector<double>& h_levels, double gap_tol, double irr_floor,
                                  const ProbeOptions& options)
{
    if (h_levels.size() < 3) {
        throw DomainError("probe_regularity: needs at least 3 refinement levels");
    }
    for (std::size_t i = 1; i < h_levels.size(); ++i) {
        if (!(h_levels[i] < h_levels[i - 1])) {
            throw DomainError("probe_regularity: h_levels must be strictly decreasing");
        }
    }
    const int n = params.n;
    Vec dx = options.approach_x.value_or(Vec::Zero(n));
    double dt = options.approach_t.value_or(options.approach_x ? 0.0 : -1.0);
    const double norm = std::hypot(dx.norm(), dt);
    if (!(norm > 0.0)) {
        throw DomainError("probe_regularity: approach direction must be nonzero");
    }
    dx /= norm;
    dt /= norm;
    if (!on_boundary(domain, target, dx, dt)) {
        throw DomainError("probe_regularity: target is not a boundary point reachable along the approach path");
    }

    RegularityReport rep;
    rep.target = target;
    rep.datum_at_target = 0.0;
    const ScalarField datum = [target](const Point& p) { return std::min(1.0, st_distance(p, target)); };

    for (double h : h_levels) {
        GridSpec spec{h, cfl_max_dt(h, params), domain.bbox};
        const GridSolution sol = solve(domain, datum, spec, params);
        const Point aim(target.x + options.distance_in_h * h * dx, target.t + options.distance_in_h * h * dt);

        // Nearest interior (node, slice) to the aim point within a 2h window.
        const int k_lo = std::max(0, static_cast<int>(std::floor((aim.t - 2.0 * h - sol.time(0)) / spec.dt)));
        const int k_hi =
            std::min(sol.slice_count - 1, static_cast<int>(std::ceil((aim.t + 2.0 * h - sol.time(0)) / spec.dt)));
        const int center = sol.nearest_node(aim.x);
        const auto cm = sol.multi_index(center);
        std::vector<int> window;
        std::vector<int> off(static_cast<std::size_t>(n), -2);
        for (;;) {
            std::vector<int> m = cm;
            for (int d = 0; d < n; ++d) {
                m[static_cast<std::size_t>(d)] += off[static_cast<std::size_t>(d)];
            }
            const int idx = sol.node_index(m);
            if (idx >= 0) {
                window.push_back(idx);
            }
            std::size_t d = 0;
            while (d < off.size() && off[d] == 2) {
                off[d] = -2;
                ++d;
            }
            if (d == off.size()) {
                break;
            }
            ++off[d];
        }
        double best = kInfinity;
        ProbeLevel level;
        level.h = h;
        level.approach_value = std::numeric_limits<double>::quiet_NaN();
        for (int k = k_lo; k <= k_hi; ++k) {
            for (int i : window) {
                if (sol.cls(i, k) != NodeClass::interior) {
                    continue;
                }
                const Point p = sol.point(i, k);
                const double d = st_distance(p, aim);
                if (d < best) {
                    best = d;
                    level.approach_value = sol.value(i, k);
                    level.probe = p;
                }
            }
        }
        if (!(best < kInfinity)) {
            throw DomainError("probe_regularity: no interior node near the approach point at h = " +
                              std::to_string(h));
        }
        rep.levels.push_back(level);
        rep.gap_sequence.push_back(std::abs(level.approach_value - rep.datum_at_target));
    }
    rep.verdict = classify_gaps(rep.gap_sequence, gap_tol, irr_floor);
    return rep;
}

ScalarField grid_field(const GridSolution& gsol)
{
    return [&gsol](const Point& p) {
        const int n = static_cast<int>(gsol.shape.size());
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const double tk = (p.t - gsol.spec.bbox.t0) / gsol.spec.dt;
        const double kf = std::floor(tk + 1e-9);
        int k0 = static_cast<int>(kf);
        double wt = tk - kf;
        if (std::abs(wt) < 1e-9) {
            wt = 0.0;
        }
        if (k0 < 0 || k0 >= gsol.slice_count || (wt > 0.0 && k0 + 1 >= gsol.slice_count)) {
            return nan;
        }
        std::vector<int> base(static_cast<std::size_t>(n));
        std::vector<double> frac(static_cast<std::size_t>(n));
        for (int d = 0; d < n; ++d) {
            const double s = (p.x(d) - gsol.spec.bbox.lo(d)) / gsol.spec.h;
            double f = std::floor(s + 1e-9);
            double r = s - f;
            if (std::abs(r) < 1e-9) {
                r = 0.0;
            }
            base[static_cast<std::size_t>(d)] = static_cast<int>(f);
            frac[static_cast<std::size_t>(d)] = r;
        }
        auto slice_value = [&](int k) {
            double acc = 0.0;
            for (int c = 0; c < (1 << n); ++c) {
                double w = 1.0;
                std::vector<int> m(static_cast<std::size_t>(n));
                for (int d = 0; d < n; ++d) {
                    const bool up = (c >> d) & 1;
                    const double wd = up ? frac[static_cast<std::size_t>(d)] : 1.0 - frac[static_cast<std::size_t>(d)];
                    w *= wd;
                    m[static_cast<std::size_t>(d)] = base[static_cast<std::size_t>(d)] + (up ? 1 : 0);
                }
                if (w == 0.0) {
                    continue;
                }
                const int idx = gsol.node_index(m);
                if (idx < 0 || gsol.cls(idx, k) == NodeClass::exterior) {
                    return nan;
                }
                acc += w * gsol.value(idx, k);
            }
            return acc;
        };
        const double v0 = slice_value(k0);
        if (wt == 0.0) {
            return v0;
        }
        return (1.0 - wt) * v0 + wt * slice_value(k0 + 1);
    };
}

CylinderTopReport cylinder_top_experiment(const Vec& lo, const Vec& hi, double t0, double t1, const PParams& params,
                                          double h, double eps, const ScalarField& datum, double min_gap)
{
    if (!(eps > 0.0)) {
        throw DomainError("cylinder_top_experiment: requires eps > 0");
    }
    const Domain cyl = cylinder(lo, hi, t0, t1);
    const GridSpec spec{h, cfl_max_dt(h, params), cyl.bbox};
    // Same data on the bottom and the sides, a different annotation on the top.
    const double top_from = t1 - 1e-12 * std::max(1.0, std::abs(t1));
    const ScalarField altered = [&datum, top_from](const Point& p) {
        return p.t >= top_from ? datum(p) + 1000.0 : datum(p);
    };
    const GridSolution a = solve(cyl, datum, spec, params);
    const GridSolution b = solve(cyl, altered, spec, params);

    CylinderTopReport rep;
    rep.eps = eps;
    rep.interiors_identical = a.node_class == b.node_class;
    for (std::size_t i = 0; i < a.values.size() && rep.interiors_identical; ++i) {
        if (a.node_class[i] == NodeClass::interior &&
            std::memcmp(&a.values[i], &b.values[i], sizeof(double)) != 0) {
            rep.interiors_identical = false;
        }
    }

    const ScalarField hd = grid_field(a);
    const double T = t1;
    const ScalarField tilde = [&hd, eps, T](const Point& p) { return hd(p) + eps / (T - p.t); };
    rep.min_residual = kInfinity;
    const int n = params.n;
    double latest = -kInfinity;
    for (int k = 1; k + 1 < a.slice_count; ++k) {
        const double t = a.time(k);
        if (T - t < min_gap || t - t0 < min_gap) {
            continue;
        }
        for (int i = 0; i < a.node_count; ++i) {
            if (a.cls(i, k) != NodeClass::interior) {
                continue;
            }
            // Skip nodes whose difference stencil leaves the interior.
            const auto m = a.multi_index(i);
            bool deep = a.cls(i, k - 1) == NodeClass::interior && a.cls(i, k + 1) == NodeClass::interior;
            for (int d = 0; d < n && deep; ++d) {
                for (int s : {-1, 1}) {
                    auto q = m;
                    q[static_cast<std::size_t>(d)] += s;
                    const int j = a.node_index(q);
                    deep = deep && j >= 0 && a.cls(j, k) == NodeClass::interior;
                }
            }
            if (!deep) {
                continue;
            }
            const Point p = a.point(i, k);
            const Jet2 jet = numeric_jet(tilde, p, h, spec.dt);
            const double res = residual(jet, params, h);
            const double target = eps / ((T - t) * (T - t));
            rep.min_residual = std::min(rep.min_residual, res);
            rep.worst_defect = std::max(rep.worst_defect, std::abs(res - target));
            ++rep.samples;
            latest = std::max(latest, t);
        }
    }
    rep.bracket_width = rep.samples > 0 ? 2.0 * eps / (T - latest) : 0.0;
    return rep;
}

std::vector<SweepRow> sweep_p(const Domain& domain, const ScalarField& datum, double h,
                              const std::vector<double>& p_list, int n)
{
    std::vector<double> ps;
    for (double p : p_list) {
        if (p != kInfinity) {
            ps.push_back(p);
        }
    }
    double dt = cfl_max_dt(h, make_params(kInfinity, n));
    for (double p : ps) {
        dt = std::min(dt, cfl_max_dt(h, make_params(p, n)));
    }
    const GridSpec spec{h, dt, domain.bbox};
    std::vector<double> all = ps;
    all.push_back(kInfinity);
    std::vector<GridSolution> sols(all.size());
    parallel_for(all.size(), [&](std::size_t i) { sols[i] = solve(domain, datum, spec, make_params(all[i], n)); });

    const GridSolution& ref = sols.back();
    std::vector<SweepRow> rows;
    for (std::size_t i = 0; i < all.size(); ++i) {
        SweepRow r;
        r.p = all[i];
        r.h = h;
        for (std::size_t idx = 0; idx < ref.values.size(); ++idx) {
            if (ref.node_class[idx] == NodeClass::interior) {
                r.linf_gap_to_infty = std::max(r.linf_gap_to_infty, std::abs(sols[i].values[idx] - ref.values[idx]));
            }
        }
        rows.push_back(r);
    }
    return rows;
}

std::vector<LimitRow> fundamental_limit_check(const std::vector<Point>& points, const std::vector<double>& p_list)
{
    std::vector<LimitRow> rows;
    for (const Point& pt : points) {
        if (!(pt.t > 0.0)) {
            throw DomainError("fundamental_limit_check: requires t > 0");
        }
        const double w = infinity_fundamental(pt.x, pt.t);
        for (double p : p_list) {
            const PParams pr = make_params(p, pt.dim());
            LimitRow r;
            r.point = pt;
            r.p = p;
            r.h_p = fundamental_kernel(pt.x, pt.t, pr);
            r.w = w;
            r.gap = std::abs(r.h_p - w);
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace pparab
