#include "pparab/solver.hpp"

#include "pparab/parallel.hpp"
#include "pparab/sampling.hpp"

#include <Eigen/QR>

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>

namespace pparab {

const char* to_string(NodeClass c)
{
    switch (c) {
    case NodeClass::exterior: return "exterior";
    case NodeClass::boundary: return "boundary";
    case NodeClass::interior: return "interior";
    }
    return "?";
}

std::vector<int> GridSpec::shape() const
{
    if (!(h > 0.0)) {
        throw DomainError("grid: h must be positive");
    }
    std::vector<int> out(static_cast<std::size_t>(bbox.dim()));
    for (int d = 0; d < bbox.dim(); ++d) {
        out[static_cast<std::size_t>(d)] = static_cast<int>(std::floor((bbox.hi(d) - bbox.lo(d)) / h + 1e-9)) + 1;
    }
    return out;
}

int GridSpec::slices() const
{
    if (!(dt > 0.0)) {
        throw DomainError("grid: dt must be positive");
    }
    return static_cast<int>(std::floor((bbox.t1 - bbox.t0) / dt + 1e-9)) + 1;
}

double cfl_max_dt(double h, const PParams& params)
{
    if (!(h > 0.0)) {
        throw DomainError("cfl_max_dt: h must be positive");
    }
    if (params.infinite()) {
        return 0.9 * h * h / 2.0;
    }
    const double ip = 1.0 / params.p;
    return 0.9 * h * h / (2.0 * (params.n * ip + std::max(ip, (params.p - 1.0) / params.p)));
}

Vec GridSolution::position(int node) const
{
    const auto m = multi_index(node);
    Vec x(static_cast<Eigen::Index>(m.size()));
    for (std::size_t d = 0; d < m.size(); ++d) {
        x(static_cast<Eigen::Index>(d)) = spec.bbox.lo(static_cast<Eigen::Index>(d)) + m[d] * spec.h;
    }
    return x;
}

std::vector<int> GridSolution::multi_index(int node) const
{
    std::vector<int> m(shape.size());
    for (std::size_t d = 0; d < shape.size(); ++d) {
        m[d] = node % shape[d];
        node /= shape[d];
    }
    return m;
}

int GridSolution::node_index(const std::vector<int>& multi) const
{
    int idx = 0;
    int stride = 1;
    for (std::size_t d = 0; d < shape.size(); ++d) {
        if (multi[d] < 0 || multi[d] >= shape[d]) {
            return -1;
        }
        idx += multi[d] * stride;
        stride *= shape[d];
    }
    return idx;
}

int GridSolution::nearest_node(const Vec& x) const
{
    std::vector<int> m(shape.size());
    for (std::size_t d = 0; d < shape.size(); ++d) {
        const auto e = static_cast<Eigen::Index>(d);
        const long i = std::lround((x(e) - spec.bbox.lo(e)) / spec.h);
        m[d] = static_cast<int>(std::clamp<long>(i, 0, shape[d] - 1));
    }
    return node_index(m);
}

namespace {

// Shared grid geometry: strides, neighbour offsets and coordinates.
struct Layout {
    std::vector<int> shape;
    std::vector<long> strides;
    int nodes = 0;
    int dim = 0;
    // All 3ⁿ - 1 neighbour offsets.
    std::vector<std::vector<int>> offsets;
    Vec lo;
    double h = 0.0;

    explicit Layout(const GridSpec& spec) : shape(spec.shape()), lo(spec.bbox.lo), h(spec.h)
    {
        dim = static_cast<int>(shape.size());
        strides.resize(shape.size());
        long s = 1;
        for (std::size_t d = 0; d < shape.size(); ++d) {
            strides[d] = s;
            s *= shape[d];
        }
        if (s > std::numeric_limits<int>::max()) {
            throw DomainError("grid: too many nodes");
        }
        nodes = static_cast<int>(s);
        std::vector<int> off(shape.size(), -1);
        for (;;) {
            if (std::any_of(off.begin(), off.end(), [](int v) { return v != 0; })) {
                offsets.push_back(off);
            }
            std::size_t d = 0;
            while (d < off.size() && off[d] == 1) {
                off[d] = -1;
                ++d;
            }
            if (d == off.size()) {
                break;
            }
            ++off[d];
        }
    }

    [[nodiscard]] std::vector<int> multi(int node) const
    {
        std::vector<int> m(shape.size());
        for (std::size_t d = 0; d < shape.size(); ++d) {
            m[d] = node % shape[d];
            node /= shape[d];
        }
        return m;
    }

    [[nodiscard]] Vec coords(const std::vector<int>& m) const
    {
        Vec x(dim);
        for (int d = 0; d < dim; ++d) {
            x(d) = lo(d) + m[static_cast<std::size_t>(d)] * h;
        }
        return x;
    }

    // Linear index of m + off, or -1 outside the grid.
    [[nodiscard]] int shifted(const std::vector<int>& m, const std::vector<int>& off) const
    {
        long idx = 0;
        for (std::size_t d = 0; d < shape.size(); ++d) {
            const int v = m[d] + off[d];
            if (v < 0 || v >= shape[d]) {
                return -1;
            }
            idx += v * strides[d];
        }
        return static_cast<int>(idx);
    }
};

void require_cover(const Domain& domain, const GridSpec& spec)
{
    const SpaceTimeBox& g = spec.bbox;
    const SpaceTimeBox& d = domain.bbox;
    if (g.dim() != d.dim()) {
        throw DomainError("grid: dimension does not match the domain");
    }
    const double slack = 1e-12 * std::max(1.0, g.diameter());
    bool ok = g.t0 <= d.t0 + slack && g.t1 >= d.t1 - slack;
    for (int i = 0; i < g.dim(); ++i) {
        ok = ok && g.lo(i) <= d.lo(i) + slack && g.hi(i) >= d.hi(i) - slack;
    }
    if (!ok) {
        throw DomainError("grid: bbox must cover the domain's bbox");
    }
}

// Classifies one slice given phi at this and the previous slice. Boundary
// datum points are produced through `emit`.
class SliceClassifier {
public:
    SliceClassifier(const Domain& domain, const Layout& layout) : domain_(domain), layout_(layout) {}

    void phi_slice(double t, std::vector<double>& out) const
    {
        out.resize(static_cast<std::size_t>(layout_.nodes));
        parallel_blocks(layout_.nodes, [&](int i) {
            out[static_cast<std::size_t>(i)] = domain_.phi(Point(layout_.coords(layout_.multi(i)), t));
        });
    }

    NodeClass classify(int node, const std::vector<double>& phi, const std::vector<double>* prev) const
    {
        if (!(phi[static_cast<std::size_t>(node)] < 0.0)) {
            return NodeClass::exterior;
        }
        if (prev == nullptr || !((*prev)[static_cast<std::size_t>(node)] < 0.0)) {
            return NodeClass::boundary;
        }
        const auto m = layout_.multi(node);
        for (const auto& off : layout_.offsets) {
            const int j = layout_.shifted(m, off);
            if (j < 0 || !(phi[static_cast<std::size_t>(j)] < 0.0) || !((*prev)[static_cast<std::size_t>(j)] < 0.0)) {
                return NodeClass::boundary;
            }
        }
        return NodeClass::interior;
    }

    Point datum_point(int node, double t, double t_prev, const std::vector<double>& phi,
                      const std::vector<double>* prev) const
    {
        const auto m = layout_.multi(node);
        const Point here(layout_.coords(m), t);
        auto phi_at = [&](const std::vector<int>& off, double tt, const std::vector<double>* cache) {
            const int j = layout_.shifted(m, off);
            if (j >= 0 && cache != nullptr) {
                return (*cache)[static_cast<std::size_t>(j)];
            }
            std::vector<int> q = m;
            for (std::size_t d = 0; d < q.size(); ++d) {
                q[d] += off[d];
            }
            return domain_.phi(Point(layout_.coords(q), tt));
        };
        auto neighbour_point = [&](const std::vector<int>& off, double tt) {
            std::vector<int> q = m;
            for (std::size_t d = 0; d < q.size(); ++d) {
                q[d] += off[d];
            }
            return Point(layout_.coords(q), tt);
        };

        std::vector<Point> candidates;
        for (const auto& off : layout_.offsets) {
            if (!(phi_at(off, t, &phi) < 0.0)) {
                candidates.push_back(neighbour_point(off, t));
            }
        }
        if (candidates.empty() && prev != nullptr) {
            if (!((*prev)[static_cast<std::size_t>(node)] < 0.0)) {
                candidates.emplace_back(here.x, t_prev);
            } else {
                for (const auto& off : layout_.offsets) {
                    if (!(phi_at(off, t_prev, prev) < 0.0)) {
                        candidates.push_back(neighbour_point(off, t_prev));
                    }
                }
            }
        }
        Point best = here;
        double best_dist = kInfinity;
        for (const Point& c : candidates) {
            const BoundarySample bs = project_to_boundary(domain_, here, c);
            const double dist = std::hypot((bs.point.x - here.x).norm(), bs.point.t - here.t);
            if (dist < best_dist) {
                best_dist = dist;
                best = bs.point;
            }
        }
        return best;
    }

    template <class Body>
    static void parallel_blocks(int count, Body body)
    {
        constexpr int block = 2048;
        if (count < 2 * block || worker_count() == 1) {
            for (int i = 0; i < count; ++i) {
                body(i);
            }
            return;
        }
        const int blocks = (count + block - 1) / block;
        parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
            const int lo = static_cast<int>(b) * block;
            const int hi = std::min(count, lo + block);
            for (int i = lo; i < hi; ++i) {
                body(i);
            }
        });
    }

private:
    const Domain& domain_;
    const Layout& layout_;
};

// Multilinear interpolation at node + s (index units, |s_d| ≤ 1).
double interpolate(const SliceView& sv, const std::vector<int>& m, const double* s, int dim)
{
    const auto& shape = *sv.shape;
    const auto& strides = *sv.strides;
    int base[16];
    double frac[16];
    for (int d = 0; d < dim; ++d) {
        const double f = std::floor(s[d]);
        base[d] = m[static_cast<std::size_t>(d)] + static_cast<int>(f);
        frac[d] = s[d] - f;
    }
    double acc = 0.0;
    const int corners = 1 << dim;
    for (int c = 0; c < corners; ++c) {
        double w = 1.0;
        long idx = 0;
        for (int d = 0; d < dim; ++d) {
            const bool up = (c >> d) & 1;
            const double wd = up ? frac[d] : 1.0 - frac[d];
            if (wd == 0.0) {
                w = 0.0;
                break;
            }
            w *= wd;
            const int v = base[d] + (up ? 1 : 0);
            if (v < 0 || v >= shape[static_cast<std::size_t>(d)]) {
                return std::numeric_limits<double>::quiet_NaN();
            }
            idx += v * strides[static_cast<std::size_t>(d)];
        }
        if (w != 0.0) {
            acc += w * sv.values[idx];
        }
    }
    return acc;
}

// Sample u(x + steps·dir) in index units; NaN when a corner is exterior.
double sample_along(const SliceView& sv, const std::vector<int>& m, const Vec& dir, double steps)
{
    const int dim = static_cast<int>(dir.size());
    double s[16];
    for (int d = 0; d < dim; ++d) {
        s[d] = steps * dir(d);
    }
    return interpolate(sv, m, s, dim);
}

// Lattice vector with entries in {-1, 0, 1} parallel to dir, if any.
std::optional<double> lattice_length(const Vec& dir)
{
    const double top = dir.cwiseAbs().maxCoeff();
    int count = 0;
    for (int d = 0; d < dir.size(); ++d) {
        const double r = std::abs(dir(d)) / top;
        if (r > 1e-12 && std::abs(r - 1.0) > 1e-12) {
            return std::nullopt;
        }
        count += r > 1e-12 ? 1 : 0;
    }
    return std::sqrt(static_cast<double>(count));
}

// Second difference along a unit direction. Lattice directions use grid
// nodes. Others step √h, so the interpolation error h²/k² stays O(h); a side
// whose wide sample touches an exterior node falls back to step h, which
// the 3ⁿ neighbourhood of an interior node always covers.
double directional_second(const SliceView& sv, const std::vector<int>& m, double u0, const Vec& dir, double h)
{
    if (const auto len = lattice_length(dir)) {
        const Vec e = dir / dir.cwiseAbs().maxCoeff();
        const double k = h * (*len);
        return (sample_along(sv, m, e, 1.0) + sample_along(sv, m, e, -1.0) - 2.0 * u0) / (k * k);
    }
    const double wide = std::max(1.0, 1.0 / std::sqrt(h));
    auto side = [&](double sign, double& k) {
        const double v = sample_along(sv, m, dir, sign * wide);
        if (std::isfinite(v)) {
            k = wide * h;
            return v;
        }
        k = h;
        return sample_along(sv, m, dir, sign);
    };
    double kp = h;
    double km = h;
    const double up = side(1.0, kp);
    const double dn = side(-1.0, km);
    return 2.0 / (kp + km) * ((up - u0) / kp + (dn - u0) / km);
}

// Unit directions for the sphere extremes, angular spacing about h^{3/4}.
std::vector<Vec> make_directions(int dim, double h)
{
    const double theta = std::min(std::numbers::pi / 4.0, std::pow(h, 0.75));
    std::vector<Vec> dirs;
    if (dim == 1) {
        dirs = {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
        return dirs;
    }
    if (dim == 2) {
        // Multiple of 8, so axes and diagonals are included.
        const int k = 8 * static_cast<int>(std::ceil(2.0 * std::numbers::pi / theta / 8.0));
        for (int i = 0; i < k; ++i) {
            const double a = 2.0 * std::numbers::pi * i / k;
            Vec d(2);
            d << std::cos(a), std::sin(a);
            dirs.push_back(d);
        }
        return dirs;
    }
    // Lattice directions, then quasi-random pairs ±d.
    std::vector<int> off(static_cast<std::size_t>(dim), -1);
    for (;;) {
        Vec d(dim);
        for (int i = 0; i < dim; ++i) {
            d(i) = off[static_cast<std::size_t>(i)];
        }
        if (d.squaredNorm() > 0.0) {
            dirs.push_back(d.normalized());
        }
        std::size_t i = 0;
        while (i < off.size() && off[i] == 1) {
            off[i] = -1;
            ++i;
        }
        if (i == off.size()) {
            break;
        }
        ++off[i];
    }
    const double area = 2.0 * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0);
    const auto pairs = static_cast<std::uint64_t>(
        std::min(10000.0, std::ceil(0.5 * area / std::pow(theta, dim - 1))));
    const Halton seq(dim, 0);
    for (std::uint64_t j = 0; j < pairs; ++j) {
        const auto u = seq.at(j + 1);
        Vec d(dim);
        for (int i = 0; i < dim; ++i) {
            const double v = std::clamp(u[static_cast<std::size_t>(i)], 1e-12, 1.0 - 1e-12);
            d(i) = boost::math::erf_inv(2.0 * v - 1.0);
        }
        if (d.norm() > 0.0) {
            dirs.push_back(d.normalized());
            dirs.push_back(-dirs.back());
        }
    }
    return dirs;
}

const std::vector<Vec>& directions(int dim, double h)
{
    thread_local std::map<std::pair<int, double>, std::vector<Vec>> cache;
    auto it = cache.find({dim, h});
    if (it == cache.end()) {
        it = cache.emplace(std::make_pair(dim, h), make_directions(dim, h)).first;
    }
    return it->second;
}

// (max + min - 2u0)/r² over sampled points of the sphere of radius r around
// the node. Max and min are monotone in the nodal values, which a second
// difference along the data's own gradient is not. For Du != 0 the extremes
// sit near ±Du/|Du| and the quotient tends to <D²u v,v>; for Du = 0 it tends
// to the mean of the extreme eigenvalues. r = √h keeps the interpolation error
// O(h); it is halved down to h while a sample touches an exterior node.
double sphere_second(const SliceView& sv, const std::vector<int>& m, double u0, int dim, double h)
{
    const auto& dirs = directions(dim, h);
    double steps = dim == 1 ? 1.0 : std::max(1.0, 1.0 / std::sqrt(h));
    for (;;) {
        const bool last = steps <= 1.0;
        double lo = kInfinity;
        double hi = -kInfinity;
        bool finite = true;
        for (const Vec& d : dirs) {
            const double v = sample_along(sv, m, d, steps);
            if (!std::isfinite(v) && !last) {
                finite = false;
                break;
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (finite) {
            const double r = steps * h;
            return (hi + lo - 2.0 * u0) / (r * r);
        }
        steps = std::max(1.0, steps / 2.0);
    }
}

// Mean of the extreme second differences over axis and diagonal directions.
double extreme_mean(const SliceView& sv, long node, const std::vector<long>& strides, int dim, double u0, double h)
{
    const double* u = sv.values;
    double lo = kInfinity;
    double hi = -kInfinity;
    const double h2 = h * h;
    for (int d = 0; d < dim; ++d) {
        const long s = strides[static_cast<std::size_t>(d)];
        const double v = (u[node + s] + u[node - s] - 2.0 * u0) / h2;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (int a = 0; a < dim; ++a) {
        for (int b = a + 1; b < dim; ++b) {
            const long sa = strides[static_cast<std::size_t>(a)];
            const long sb = strides[static_cast<std::size_t>(b)];
            const double v1 = (u[node + sa + sb] + u[node - sa - sb] - 2.0 * u0) / (2.0 * h2);
            const double v2 = (u[node + sa - sb] + u[node - sa + sb] - 2.0 * u0) / (2.0 * h2);
            lo = std::min({lo, v1, v2});
            hi = std::max({hi, v1, v2});
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double discrete_operator(const SliceView& sv, int node, const PParams& params, double h)
{
    const auto& shape = *sv.shape;
    const auto& strides = *sv.strides;
    const int dim = static_cast<int>(shape.size());
    if (dim > 16) {
        throw DomainError("discrete_operator: dimension above 16");
    }
    std::vector<int> m(shape.size());
    {
        int r = node;
        for (std::size_t d = 0; d < shape.size(); ++d) {
            m[d] = r % shape[d];
            r /= shape[d];
        }
    }
    const double* u = sv.values;
    const double u0 = u[node];
    const double h2 = h * h;
    double lap = 0.0;
    Vec g(dim);
    for (int d = 0; d < dim; ++d) {
        const long s = strides[static_cast<std::size_t>(d)];
        const double up = u[node + s];
        const double dn = u[node - s];
        lap += (up + dn - 2.0 * u0) / h2;
        g(d) = (up - dn) / (2.0 * h);
    }
    const double weight = params.directional_weight();
    if (weight == 0.0) {
        return params.inv_p() * lap;
    }
    if (weight > 0.0) {
        return params.inv_p() * lap + weight * sphere_second(sv, m, u0, dim, h);
    }
    const double gnorm = g.norm();

    // 1 < p < 2: (1/p)(tr - D_vv) + ((p-1)/p) D_vv with nonnegative weights.
    const double ip = params.inv_p();
    const double wv = (params.p - 1.0) / params.p;
    if (gnorm > h) {
        const Vec v = g / gnorm;
        double across = 0.0;
        if (dim > 1) {
            Mat basis = Mat::Identity(dim, dim);
            basis.col(0) = v;
            const Eigen::HouseholderQR<Mat> qr(basis);
            const Mat q = qr.householderQ();
            for (int c = 1; c < dim; ++c) {
                across += directional_second(sv, m, u0, q.col(c), h);
            }
        }
        return ip * across + wv * directional_second(sv, m, u0, v, h);
    }
    return ((dim - 1) * ip + wv) * extreme_mean(sv, node, strides, dim, u0, h);
}

Raster rasterize(const Domain& domain, const GridSpec& spec)
{
    require_cover(domain, spec);
    const Layout layout(spec);
    const SliceClassifier cl(domain, layout);
    Raster r;
    r.spec = spec;
    r.shape = layout.shape;
    r.node_count = layout.nodes;
    r.slice_count = spec.slices();
    r.node_class.assign(static_cast<std::size_t>(r.node_count) * static_cast<std::size_t>(r.slice_count),
                        NodeClass::exterior);
    r.datum_points.resize(static_cast<std::size_t>(r.slice_count));
    std::vector<double> phi;
    std::vector<double> prev;
    bool any_interior = false;
    for (int k = 0; k < r.slice_count; ++k) {
        const double t = spec.bbox.t0 + k * spec.dt;
        cl.phi_slice(t, phi);
        const std::vector<double>* pp = k > 0 ? &prev : nullptr;
        for (int i = 0; i < r.node_count; ++i) {
            const NodeClass c = cl.classify(i, phi, pp);
            r.node_class[static_cast<std::size_t>(k) * static_cast<std::size_t>(r.node_count) +
                         static_cast<std::size_t>(i)] = c;
            if (c == NodeClass::boundary) {
                r.datum_points[static_cast<std::size_t>(k)].emplace_back(
                    i, cl.datum_point(i, t, t - spec.dt, phi, pp));
            }
            any_interior = any_interior || c == NodeClass::interior;
        }
        std::swap(phi, prev);
    }
    if (!any_interior) {
        throw DomainError("rasterize: the grid has no interior node");
    }
    return r;
}

GridSolution solve(const Domain& domain, const ScalarField& datum, const GridSpec& spec, const PParams& params,
                   const SolveOptions& options)
{
    if (static_cast<int>(spec.bbox.dim()) != params.n) {
        throw DomainError("solve: grid dimension does not match n");
    }
    if (!params.infinite() && params.p < 2.0 && !options.experimental_subquadratic) {
        throw DomainError("solve: 1 < p < 2 requires the experimental subquadratic option");
    }
    const double bound = cfl_max_dt(spec.h, params);
    if (!(spec.dt > 0.0)) {
        throw DomainError("solve: dt must be positive");
    }
    if (spec.dt > bound * (1.0 + 1e-12) && !options.allow_cfl_violation) {
        throw CflError("CFL violation: dt = " + std::to_string(spec.dt) + " exceeds the bound " +
                       std::to_string(bound));
    }
    require_cover(domain, spec);

    const Layout layout(spec);
    const SliceClassifier cl(domain, layout);
    GridSolution sol;
    sol.spec = spec;
    sol.params = params;
    sol.shape = layout.shape;
    sol.node_count = layout.nodes;
    sol.slice_count = spec.slices();
    const std::size_t total = static_cast<std::size_t>(sol.node_count) * static_cast<std::size_t>(sol.slice_count);
    sol.node_class.assign(total, NodeClass::exterior);
    sol.values.assign(total, std::numeric_limits<double>::quiet_NaN());

    std::vector<double> phi;
    std::vector<double> prev;
    bool any_interior = false;
    for (int k = 0; k < sol.slice_count; ++k) {
        const double t = sol.time(k);
        cl.phi_slice(t, phi);
        const std::vector<double>* pp = k > 0 ? &prev : nullptr;
        NodeClass* cls = sol.node_class.data() + sol.at(0, k);
        double* out = sol.values.data() + sol.at(0, k);
        const SliceView last{k > 0 ? sol.values.data() + sol.at(0, k - 1) : nullptr, &layout.shape,
                             &layout.strides};
        SliceClassifier::parallel_blocks(sol.node_count, [&](int i) {
            const NodeClass c = cl.classify(i, phi, pp);
            cls[i] = c;
            if (c == NodeClass::boundary) {
                out[i] = datum(cl.datum_point(i, t, t - spec.dt, phi, pp));
            } else if (c == NodeClass::interior) {
                out[i] = last.values[i] + spec.dt * discrete_operator(last, i, params, spec.h);
            }
        });
        for (int i = 0; i < sol.node_count; ++i) {
            if (cls[i] == NodeClass::exterior) {
                continue;
            }
            any_interior = any_interior || cls[i] == NodeClass::interior;
            if (!std::isfinite(out[i]) && options.throw_on_nonfinite) {
                throw InstabilityError("solve: non-finite value at slice " + std::to_string(k) +
                                       " (instability or non-finite datum)");
            }
        }
        std::swap(phi, prev);
    }
    if (!any_interior) {
        throw DomainError("solve: the grid has no interior node");
    }
    return sol;
}

ErrorReport error_vs(const GridSolution& gsol, const ScalarField& exact)
{
    ErrorReport rep;
    rep.h = gsol.spec.h;
    rep.dt = gsol.spec.dt;
    const double t_first = gsol.time(0);
    const double t_last = gsol.time(gsol.slice_count - 1);
    const double t_from = t_first + 0.75 * (t_last - t_first);
    double sum = 0.0;
    for (int k = 0; k < gsol.slice_count; ++k) {
        if (gsol.time(k) < t_from) {
            continue;
        }
        for (int i = 0; i < gsol.node_count; ++i) {
            if (gsol.cls(i, k) != NodeClass::interior) {
                continue;
            }
            const double e = std::abs(gsol.value(i, k) - exact(gsol.point(i, k)));
            rep.linf = std::max(rep.linf, e);
            sum += e * e;
            ++rep.n_interior;
        }
    }
    rep.l2 = std::sqrt(sum);
    return rep;
}

ErrorReport error_vs(const GridSolution& gsol, const Solution& exact)
{
    return error_vs(gsol, exact.value);
}

double max_principle_violation(const GridSolution& gsol)
{
    double lo = kInfinity;
    double hi = -kInfinity;
    double worst = 0.0;
    for (int k = 0; k < gsol.slice_count; ++k) {
        for (int i = 0; i < gsol.node_count; ++i) {
            if (gsol.cls(i, k) == NodeClass::boundary) {
                lo = std::min(lo, gsol.value(i, k));
                hi = std::max(hi, gsol.value(i, k));
            }
        }
        for (int i = 0; i < gsol.node_count; ++i) {
            if (gsol.cls(i, k) != NodeClass::interior) {
                continue;
            }
            const double v = gsol.value(i, k);
            if (!std::isfinite(v)) {
                return kInfinity;
            }
            worst = std::max({worst, lo - v, v - hi});
        }
    }
    return worst;
}

ComparisonReport check_discrete_comparison(const Domain& domain, const ScalarField& datum_low,
                                           const ScalarField& datum_high, const GridSpec& spec,
                                           const PParams& params, const SolveOptions& options)
{
    SolveOptions opt = options;
    opt.throw_on_nonfinite = false;
    const GridSolution lo = solve(domain, datum_low, spec, params, opt);
    const GridSolution hi = solve(domain, datum_high, spec, params, opt);
    ComparisonReport rep;
    for (std::size_t idx = 0; idx < lo.values.size(); ++idx) {
        if (lo.node_class[idx] != NodeClass::interior) {
            continue;
        }
        const double a = lo.values[idx];
        const double b = hi.values[idx];
        const double gap = a - b;
        if (!std::isfinite(a) || !std::isfinite(b) || gap > 1e-12) {
            ++rep.violations;
            rep.worst = std::max(rep.worst, std::isfinite(gap) ? gap : kInfinity);
        }
    }
    rep.ok = rep.violations == 0;
    return rep;
}

}  // namespace pparab
