#include "pparab/lab.hpp"

#include <doctest.h>

#include <cmath>

using namespace pparab;

TEST_CASE("verdict rule")
{
    CHECK(classify_gaps({0.3, 0.1, 0.02}) == Verdict::consistent_with_regular);
    CHECK(classify_gaps({0.3, 0.1, 0.06}) == Verdict::inconclusive);
    CHECK(classify_gaps({0.3, 0.1, 0.1}) == Verdict::inconclusive);
    CHECK(classify_gaps({0.5, 0.4, 0.3}) == Verdict::consistent_with_irregular);
    CHECK(classify_gaps({0.5, 0.6, 0.7}) == Verdict::consistent_with_irregular);
    CHECK(classify_gaps({0.5, 0.14, 0.3}) == Verdict::inconclusive);
    CHECK(classify_gaps({0.2, 0.1, 0.04}, 0.05, 0.15) == Verdict::consistent_with_regular);
    CHECK(classify_gaps({0.2, 0.1, 0.04}, 0.01, 0.15) == Verdict::inconclusive);
    CHECK(std::string(to_string(Verdict::consistent_with_regular)) == "consistent_with_regular");
}

TEST_CASE("solution catalog checks")
{
    for (auto [p, n] : std::vector<std::pair<double, int>>{{2, 1}, {3, 2}, {10, 3}}) {
        const auto checks = verify_solutions(make_params(p, n), 200, 0);
        CHECK(checks.size() == 4);
        for (const auto& c : checks) {
            CHECK(c.samples == 200);
            CHECK(c.max_residual < 1e-8);
            CHECK(c.max_fd_residual < 1e-4);
            if (!std::isnan(c.jet_ratio)) {
                CHECK(c.jet_ratio >= 3.5);
                CHECK(c.jet_ratio <= 4.5);
            }
        }
    }
    // Quadratic fields have exact difference quotients.
    const auto sep = verify_solution(catalog_entry("separable", make_params(2, 1)));
    CHECK(std::isnan(sep.jet_ratio));

    const auto a = verify_solutions(make_params(3, 2), 50, 4);
    const auto b = verify_solutions(make_params(3, 2), 50, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].max_residual == b[i].max_residual);
        CHECK(a[i].max_fd_residual == b[i].max_fd_residual);
    }
}

TEST_CASE("fundamental limit")
{
    const std::vector<Point> pts{{Vec::Constant(1, 1.0), 1.0}, {Vec::Constant(1, 0.5), 2.0}};
    const auto rows = fundamental_limit_check(pts, {10, 100, 1000, 1e6});
    REQUIRE(rows.size() == 8);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i].point.t == rows[i + 1].point.t) {
            CHECK(rows[i + 1].gap < rows[i].gap);
        }
    }
    CHECK(rows[3].w == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
    CHECK(rows[3].gap < 1e-5);
    CHECK_THROWS_AS(fundamental_limit_check({{Vec::Constant(1, 1.0), 0.0}}, {10}), DomainError);
}

TEST_CASE("cylinder top irrelevance")
{
    auto P = make_params(3, 1);
    auto r = cylinder_top_experiment(Vec::Constant(1, -1.0), Vec::Constant(1, 1.0), 0.0, 1.0, P, 0.05, 0.1,
                                     [](const Point& q) { return std::sin(q.x(0)) + q.t; });
    CHECK(r.interiors_identical);
    CHECK(r.samples > 0);
    CHECK(r.bracket_ok());
    CHECK(r.worst_defect < 0.01);
    CHECK(r.eps == 0.1);
}

TEST_CASE("sweep in p")
{
    auto dom = cylinder(Vec::Constant(1, -1.0), Vec::Constant(1, 1.0), 0.0, 1.0);
    const auto rows =
        sweep_p(dom, [](const Point& q) { return std::cos(q.x(0)) + 0.3 * q.x(0); }, 0.1, {10, 100, 1000}, 1);
    REQUIRE(rows.size() == 4);
    CHECK(rows[3].p == kInfinity);
    CHECK(rows[3].linf_gap_to_infty == 0.0);
    CHECK(rows[1].linf_gap_to_infty < rows[0].linf_gap_to_infty);
    CHECK(rows[2].linf_gap_to_infty < rows[1].linf_gap_to_infty);
    CHECK(rows[2].linf_gap_to_infty < rows[0].linf_gap_to_infty / 10.0);
}

TEST_CASE("regularity probe on a sphere contact")
{
    auto P = make_params(2, 1);
    SpaceTimeBox box{Vec::Constant(1, -2.0), Vec::Constant(1, 2.0), -2.0, 0.5};
    auto ext = ball_exterior(Vec::Zero(1), 0.0, 1.0, box);
    ProbeOptions opt;
    opt.approach_x = Vec::Constant(1, 1.0);
    opt.approach_t = 0.0;
    const auto r = probe_regularity(ext, Point(Vec::Constant(1, 1.0), 0.0), P, {0.04, 0.02, 0.01}, kGapTol, kIrrFloor,
                                    opt);
    REQUIRE(r.gap_sequence.size() == 3);
    CHECK(r.strictly_decreasing());
    CHECK(r.verdict == Verdict::consistent_with_regular);

    const auto again = probe_regularity(ext, Point(Vec::Constant(1, 1.0), 0.0), P, {0.04, 0.02, 0.01}, kGapTol,
                                        kIrrFloor, opt);
    CHECK(again.gap_sequence == r.gap_sequence);

    CHECK_THROWS_AS(probe_regularity(ext, Point(Vec::Constant(1, 1.0), 0.0), P, {0.02, 0.04, 0.01}), DomainError);
}
