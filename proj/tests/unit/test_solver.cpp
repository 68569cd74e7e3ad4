#include "pparab/lab.hpp"
#include "pparab/operator.hpp"
#include "pparab/solutions.hpp"
#include "pparab/solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace pparab;

namespace {

Vec v1(double a)
{
    return Vec::Constant(1, a);
}

/// Spatial grid samples of f at spacing h, first axis fastest.
struct Stencil {
    std::vector<double> values;
    std::vector<int> shape;
    std::vector<long> strides;

    Stencil(const std::function<double(const Vec&)>& f, const Vec& lo, int count, double h)
    {
        const int n = static_cast<int>(lo.size());
        shape.assign(static_cast<std::size_t>(n), count);
        long s = 1;
        for (int d = 0; d < n; ++d) {
            strides.push_back(s);
            s *= count;
        }
        values.resize(static_cast<std::size_t>(s));
        for (long i = 0; i < s; ++i) {
            Vec x = lo;
            long r = i;
            for (int d = 0; d < n; ++d) {
                x(d) += static_cast<double>(r % count) * h;
                r /= count;
            }
            values[static_cast<std::size_t>(i)] = f(x);
        }
    }
    [[nodiscard]] SliceView view() const { return {values.data(), &shape, &strides}; }
    [[nodiscard]] int centre() const
    {
        long idx = 0;
        for (std::size_t d = 0; d < shape.size(); ++d) {
            idx += (shape[d] / 2) * strides[d];
        }
        return static_cast<int>(idx);
    }
};

double max_abs_diff(const GridSolution& a, const GridSolution& b, double scale = 1.0)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.node_class[i] != NodeClass::exterior) {
            worst = std::max(worst, std::abs(a.values[i] - scale * b.values[i]));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("CFL bound")
{
    CHECK(cfl_max_dt(0.1, make_params(2, 1)) == doctest::Approx(0.0045).epsilon(1e-14));
    CHECK(cfl_max_dt(0.1, make_params(kInfinity, 3)) == doctest::Approx(0.0045).epsilon(1e-14));
    for (double p : {2.0, 3.0, 10.0}) {
        double prev = 1.0;
        for (int n = 1; n <= 4; ++n) {
            const double dt = cfl_max_dt(0.1, make_params(p, n));
            CHECK(dt < prev);
            prev = dt;
        }
    }
}

TEST_CASE("rasterize three-node cylinder")
{
    auto cyl = cylinder(v1(-1.0), v1(1.0), 0.0, 1.0);
    GridSpec g{0.5, 0.001, cyl.bbox};
    const Raster r = rasterize(cyl, g);
    REQUIRE(r.shape == std::vector<int>{5});
    // The bottom face is not in the open cylinder; the first slice inside is
    // initial data.
    for (int i = 0; i < 5; ++i) {
        CHECK(r.cls(i, 0) == NodeClass::exterior);
    }
    for (int i = 1; i <= 3; ++i) {
        CHECK(r.cls(i, 1) == NodeClass::boundary);
    }
    // The last slice is the excluded top.
    for (int k = 2; k + 1 < r.slice_count; ++k) {
        CHECK(r.cls(0, k) == NodeClass::exterior);
        CHECK(r.cls(1, k) == NodeClass::boundary);
        CHECK(r.cls(2, k) == NodeClass::interior);
        CHECK(r.cls(3, k) == NodeClass::boundary);
        CHECK(r.cls(4, k) == NodeClass::exterior);
    }
    // Lateral datum points are projected onto x = ±1.
    REQUIRE(r.datum_points[2].size() == 2);
    for (const auto& [node, q] : r.datum_points[2]) {
        CHECK(std::abs(std::abs(q.x(0)) - 1.0) < 1e-10);
    }

    auto ball = spacetime_ball(Vec::Zero(1), 0.0, 1.0);
    const Raster rb = rasterize(ball, GridSpec{0.1, 0.05, ball.bbox});
    int first = -1;
    for (int k = 0; k < rb.slice_count && first < 0; ++k) {
        for (int i = 0; i < rb.node_count; ++i) {
            if (rb.cls(i, k) != NodeClass::exterior) {
                first = k;
                break;
            }
        }
    }
    REQUIRE(first >= 0);
    for (int i = 0; i < rb.node_count; ++i) {
        CHECK(rb.cls(i, first) != NodeClass::interior);
    }
}

TEST_CASE("discrete operator examples")
{
    const double h = 0.125;
    for (int n : {1, 2, 3}) {
        Stencil quad([](const Vec& x) { return 0.5 * x.squaredNorm(); }, Vec::Constant(n, -0.25), 5, h);
        CHECK(discrete_operator(quad.view(), quad.centre(), make_params(2, n), h) == doctest::Approx(0.5 * n));
        Stencil lin([](const Vec& x) { return 0.5 * x.sum() - 0.25; }, Vec::Constant(n, -0.25), 5, h);
        for (double p : {2.0, 3.0, 10.0, kInfinity}) {
            CHECK(discrete_operator(lin.view(), lin.centre(), make_params(p, n), h) == 0.0);
        }
    }
}

TEST_CASE("discrete operator consistency")
{
    // Sup over a patch: sphere samples interpolate at fractional offsets that
    // change with h, so single points converge unevenly.
    auto P = make_params(3, 2);
    auto H = fundamental(P);
    double prev = 0.0;
    for (double h : {0.04, 0.02, 0.01, 0.005}) {
        // Wide enough for the √h directional step.
        const int half = static_cast<int>(std::ceil(1.0 / std::sqrt(h))) + 1;
        double err = 0.0;
        for (int a = 0; a < 7; ++a) {
            for (int b = 0; b < 7; ++b) {
                Vec x(2);
                x << 0.5 + 0.1 * a, -0.3 + 0.1 * b;
                const double exact = eval_operator(H.jet(Point(x, 1.0)), P).value;
                Stencil s([&](const Vec& y) { return H.value(Point(y, 1.0)); }, x - Vec::Constant(2, half * h),
                          2 * half + 1, h);
                err = std::max(err, std::abs(discrete_operator(s.view(), s.centre(), P, h) - exact));
            }
        }
        if (prev > 0.0) {
            CHECK(prev / err >= 1.8);
        }
        prev = err;
    }
}

TEST_CASE("constant datum and maximum principle")
{
    auto P = make_params(3, 2);
    const std::vector<Domain> doms{cylinder(Vec::Constant(2, -1.0), Vec::Constant(2, 1.0), 0.0, 0.5),
                                   spacetime_ball(Vec::Zero(2), 0.0, 1.0), heat_ball(1.0, Vec::Zero(2), 0.0, P)};
    for (const auto& d : doms) {
        GridSpec g{0.1, cfl_max_dt(0.1, P), d.bbox};
        auto gs = solve(d, [](const Point&) { return 0.7; }, g, P);
        for (std::size_t i = 0; i < gs.values.size(); ++i) {
            if (gs.node_class[i] != NodeClass::exterior) {
                CHECK(gs.values[i] == 0.7);
            }
        }
        auto wavy = solve(d, [](const Point& q) { return std::sin(3.0 * q.x(0)) + q.t * q.x(1); }, g, P);
        CHECK(max_principle_violation(wavy) <= 1e-12);
    }
}

TEST_CASE("p = 2 is the heat scheme with diffusivity 1/2")
{
    auto P = make_params(2, 1);
    auto cyl = cylinder(v1(-1.0), v1(1.0), 0.0, 0.25);
    const double h = 0.1;
    GridSpec g{h, cfl_max_dt(h, P), cyl.bbox};
    auto f = [](const Point& q) { return std::cos(q.x(0)) + q.t; };
    auto gs = solve(cyl, f, g, P);
    std::vector<double> u(static_cast<std::size_t>(gs.node_count));
    for (int i = 0; i < gs.node_count; ++i) {
        u[static_cast<std::size_t>(i)] = gs.value(i, 0);
    }
    double worst = 0.0;
    for (int k = 1; k < gs.slice_count; ++k) {
        std::vector<double> next = u;
        for (int i = 0; i < gs.node_count; ++i) {
            if (gs.cls(i, k) == NodeClass::interior) {
                const auto j = static_cast<std::size_t>(i);
                next[j] = u[j] + g.dt * 0.5 * ((u[j + 1] - u[j]) + (u[j - 1] - u[j])) / (h * h);
            } else {
                next[static_cast<std::size_t>(i)] = gs.value(i, k);
            }
        }
        u = next;
        for (int i = 0; i < gs.node_count; ++i) {
            if (gs.cls(i, k) == NodeClass::interior) {
                worst = std::max(worst, std::abs(u[static_cast<std::size_t>(i)] - gs.value(i, k)));
            }
        }
    }
    CHECK(worst <= 1e-14);
}

TEST_CASE("scheme homogeneity")
{
    auto P = make_params(3, 2);
    auto cyl = cylinder(Vec::Constant(2, -1.0), Vec::Constant(2, 1.0), 0.0, 0.3);
    GridSpec g{0.1, cfl_max_dt(0.1, P), cyl.bbox};
    auto f = [](const Point& q) { return std::sin(2.0 * q.x(0)) * q.x(1) + q.t; };
    auto base = solve(cyl, f, g, P);
    for (double s : {2.0, 0.5, 0.25}) {
        auto scaled = solve(cyl, [&](const Point& q) { return s * f(q); }, g, P);
        CHECK(max_abs_diff(scaled, base, s) == 0.0);
    }
    auto three = solve(cyl, [&](const Point& q) { return 3.0 * f(q); }, g, P);
    CHECK(max_abs_diff(three, base, 3.0) <= 1e-13 * 3.0);
}

TEST_CASE("dyadic translation")
{
    auto P = make_params(3, 1);
    auto f = [](const Point& q) { return std::exp(-q.x(0) * q.x(0)) + 0.5 * q.t; };
    auto a = cylinder(v1(-1.0), v1(1.0), 0.0, 0.25);
    auto b = cylinder(v1(1.0), v1(3.0), 0.0, 0.25);
    const double h = 0.125;
    const double dt = std::ldexp(1.0, -10);
    REQUIRE(dt <= cfl_max_dt(h, P));
    auto ga = solve(a, f, GridSpec{h, dt, a.bbox}, P);
    auto gb = solve(b, [&](const Point& q) { return f(Point(q.x - v1(2.0), q.t)); }, GridSpec{h, dt, b.bbox}, P);
    REQUIRE(ga.values.size() == gb.values.size());
    CHECK(max_abs_diff(ga, gb) == 0.0);
}

TEST_CASE("CFL and instability errors")
{
    auto P = make_params(3, 1);
    auto cyl = cylinder(v1(-1.0), v1(1.0), 0.0, 1.0);
    auto f = [](const Point& q) { return q.x(0) * q.x(0); };
    CHECK_THROWS_AS(solve(cyl, f, GridSpec{0.1, 2.0 * cfl_max_dt(0.1, P), cyl.bbox}, P), CflError);
    CHECK_THROWS_AS(solve(cyl, f, GridSpec{0.1, cfl_max_dt(0.1, P), cyl.bbox}, make_params(1.5, 1)), DomainError);
    SolveOptions sub;
    sub.experimental_subquadratic = true;
    auto P15 = make_params(1.5, 1);
    auto gs = solve(cyl, f, GridSpec{0.1, cfl_max_dt(0.1, P15), cyl.bbox}, P15, sub);
    CHECK(max_principle_violation(gs) <= 1e-12);
}

TEST_CASE("discrete comparison")
{
    auto P = make_params(3, 2);
    auto cyl = cylinder(Vec::Constant(2, -1.0), Vec::Constant(2, 1.0), 0.0, 0.5);
    GridSpec g{0.1, cfl_max_dt(0.1, P), cyl.bbox};
    auto zero = [](const Point&) { return 0.0; };
    auto one = [](const Point&) { return 1.0; };
    CHECK(check_discrete_comparison(cyl, zero, one, g, P).ok);
    auto low = [](const Point& q) { return std::sin(3.0 * q.x(0)) * q.x(1) + q.t; };
    auto high = [&](const Point& q) { return low(q) + 0.5 * std::exp(-4.0 * (q.x(0) - 0.3) * (q.x(0) - 0.3)); };
    auto ok = check_discrete_comparison(cyl, low, high, g, P);
    CHECK(ok.ok);
    CHECK(ok.violations == 0);

    SolveOptions o;
    o.allow_cfl_violation = true;
    o.throw_on_nonfinite = false;
    auto bad = check_discrete_comparison(cyl, low, high, GridSpec{0.1, 4.0 * g.dt, cyl.bbox}, P, o);
    CHECK_FALSE(bad.ok);
    CHECK(bad.violations > 0);
}

TEST_CASE("convergence on the fundamental solution")
{
    auto P = make_params(3, 1);
    auto F = fundamental(P);
    auto dom = cylinder(v1(-2.0), v1(2.0), 0.5, 1.5);
    double prev = 0.0;
    for (double h : {0.2, 0.1, 0.05}) {
        auto gs = solve(dom, F.value, GridSpec{h, cfl_max_dt(h, P), dom.bbox}, P);
        auto e = error_vs(gs, F);
        CHECK(e.linf >= e.l2 / std::sqrt(static_cast<double>(e.n_interior)));
        if (prev > 0.0) {
            CHECK(prev / e.linf >= 1.5);
        }
        prev = e.linf;
        CHECK(error_vs(gs, grid_field(gs)).linf == 0.0);
    }
}
