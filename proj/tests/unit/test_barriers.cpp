#include "pparab/barriers.hpp"
#include "pparab/operator.hpp"

#include <doctest.h>

#include <cmath>

using namespace pparab;

namespace {

Point pt(const std::vector<double>& x, double t)
{
    return {Eigen::Map<const Vec>(x.data(), static_cast<Eigen::Index>(x.size())), t};
}

}  // namespace

TEST_CASE("sphere parameter")
{
    CHECK(choose_sphere_parameter(0.5, 1.0, make_params(2, 1)) == doctest::Approx(18.0).epsilon(1e-14));
    CHECK(choose_sphere_parameter(1.0, 0.5, make_params(10, 3)) == doctest::Approx(2.05 * 10.0 / 9.0).epsilon(1e-14));
    CHECK(choose_sphere_parameter(1.0, 0.5, make_params(10, 3)) == doctest::Approx(2.278).epsilon(1e-3));
    CHECK_THROWS_AS(choose_sphere_parameter(0.0, 1.0, make_params(2, 1)), DomainError);
}

TEST_CASE("sphere residual matches the jet")
{
    for (auto [p, n] : std::vector<std::pair<double, int>>{{2, 1}, {3, 2}, {10, 3}}) {
        auto P = make_params(p, n);
        const Vec c = Vec::Zero(n);
        auto b = exterior_sphere_barrier_unchecked(c, 0.0, 1.0, Point(Vec::Unit(n, 0), 0.0), 3.0, P);
        for (double s : {0.3, 0.9, 1.4}) {
            for (double t : {-0.7, 0.0, 0.6}) {
                Point q(Vec::Constant(n, s / std::sqrt(static_cast<double>(n))), t);
                const double closed = sphere_residual(c, 0.0, 3.0, q, P);
                CHECK(std::abs(residual(b.jet(q), P) - closed) < 1e-12 * (1.0 + std::abs(closed)));
            }
        }
        // On the axis Dw = 0 and D²w is a multiple of the identity.
        const Point axis(Vec::Zero(n), 0.4);
        const double closed = sphere_residual(c, 0.0, 3.0, axis, P);
        CHECK(std::abs(residual(b.jet(axis), P) - closed) < 1e-12 * (1.0 + std::abs(closed)));
    }
}

TEST_CASE("sphere barrier admissibility")
{
    auto P = make_params(2, 1);
    const Vec c = Vec::Zero(1);
    CHECK_NOTHROW(exterior_sphere_barrier(c, 0.0, 0.6, pt({0.0}, 0.6), P));
    CHECK_THROWS_AS(exterior_sphere_barrier(c, 0.0, 0.4, pt({0.0}, 0.4), P), DomainError);
    CHECK_THROWS_AS(exterior_sphere_barrier(c, 0.0, 1.0, pt({0.0}, -1.0), P), DomainError);
    CHECK_THROWS_AS(exterior_sphere_barrier(c, 0.0, 1.0, pt({0.5}, 0.0), P), DomainError);

    auto eq = exterior_sphere_barrier(c, 0.0, 1.0, pt({1.0}, 0.0), P);
    CHECK(eq.value(eq.target) == doctest::Approx(0.0));
    CHECK(eq.constants.at("a") == doctest::Approx(18.0));
}

TEST_CASE("sphere barrier verification")
{
    auto P = make_params(2, 1);
    const Vec c = Vec::Zero(1);
    auto eq = verify_barrier(exterior_sphere_barrier(c, 0.0, 1.0, pt({1.0}, 0.0), P), 2000, 1e-8);
    CHECK(eq.all_ok());
    CHECK(eq.sample_count >= 2000);
    CHECK(eq.witness.empty());

    auto north = verify_barrier(exterior_sphere_barrier(c, 0.0, 0.6, pt({0.0}, 0.6), P), 2000, 1e-8);
    CHECK(north.all_ok());

    auto P3 = make_params(3, 2);
    Vec c2 = Vec::Zero(2);
    auto e2 = verify_barrier(exterior_sphere_barrier(c2, 0.0, 1.0, pt({1.0, 0.0}, 0.0), P3), 1000, 1e-8);
    CHECK(e2.all_ok());

    // South pole: the axis below the contact violates the sign for every a.
    for (double a : {1.0, 10.0, 100.0, 1000.0}) {
        auto r = verify_barrier(exterior_sphere_barrier_unchecked(c, 0.0, 0.5, pt({0.0}, -0.5), a, P), 2000, 1e-8);
        CHECK_FALSE(r.supersolution_ok);
        CHECK_FALSE(r.all_ok());
        CHECK_FALSE(r.witness.empty());
    }
    // a far below the threshold.
    auto broken = verify_barrier(exterior_sphere_barrier_unchecked(c, 0.0, 1.0, pt({1.0}, 0.0), 0.1, P), 2000, 1e-8);
    CHECK_FALSE(broken.supersolution_ok);

    CHECK_THROWS_AS(verify_barrier(exterior_sphere_barrier(c, 0.0, 1.0, pt({1.0}, 0.0), P), 99, 1e-8), DomainError);
}

TEST_CASE("petrovsky barrier")
{
    auto P = make_params(2, 2);
    auto b = petrovsky_barrier(0.5, P);
    CHECK(b.constants.at("delta") == doctest::Approx(0.5));

    // On the lateral boundary ξ = log L, so w = (1 - c) L^{-δ}; at L = e this is 0.5 e^{-1/2}.
    const double t = -std::exp(-std::exp(1.0));
    const double r = std::sqrt(P.beta * std::abs(t));
    CHECK(b.value(pt({r, 0.0}, t)) == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-12));
    CHECK(b.value(pt({r, 0.0}, t)) == doctest::Approx(0.30327).epsilon(1e-4));

    // Jet-based bracket against the closed form.
    for (double tt : {-1e-3, -1e-6, -1e-12}) {
        const double L = -std::log(-tt);
        for (double xi : {0.0, 0.5, 1.0, std::log(L)}) {
            const double rad = std::sqrt(xi * P.beta * -tt);
            const Point q = pt({rad, 0.0}, tt);
            const Jet2 j = b.jet(q);
            const double scale = tt * std::pow(L, b.constants.at("delta") + 1.0) * std::exp(-xi);
            const double lhs = scale * residual(j, P);
            const double rhs = petrovsky_bracket(0.5, L, xi, P);
            CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
        }
    }

    for (auto [p, n] : std::vector<std::pair<double, int>>{{2, 1}, {2, 2}, {5, 3}}) {
        auto rep = verify_barrier(petrovsky_barrier(0.5, make_params(p, n)), 2000, 1e-8);
        CHECK(rep.all_ok());
        CHECK(rep.identity_gap < 1e-10);
        CHECK(rep.boundary_floor > 0.0);
    }
    CHECK_THROWS_AS(petrovsky_barrier(1.0, P), DomainError);
    CHECK_THROWS_AS(petrovsky_barrier(0.0, P), DomainError);
}

TEST_CASE("irregularity witness")
{
    auto P = make_params(2, 1);
    auto w = irregularity_subsolution(0.2, 0.9, -0.5, P, 1.0);
    CHECK_FALSE(w.barrier.domain.has_value());
    CHECK(w.log_log_start >= w.log_log_analytic_bound);
    REQUIRE(w.containment_margin.has_value());
    CHECK(*w.containment_margin > 0.0);

    // Level edge: w = m there.
    for (double ell : {w.log_log_start, 2.0 * w.log_log_start}) {
        CHECK(w.value(w.level_edge(ell), ell) == doctest::Approx(-0.5).epsilon(1e-10));
        CHECK(w.sign_minimum(ell) >= 0.0);
    }
    auto rep = verify_barrier(w, 2000, 1e-8);
    CHECK(rep.all_ok());

    CHECK_THROWS_AS(irregularity_subsolution(0.2, 0.9, -0.5, P, 0.1), DomainError);
    CHECK_THROWS_AS(irregularity_subsolution(0.0, 0.9, -0.5, P), DomainError);
    CHECK_THROWS_AS(irregularity_subsolution(0.2, 0.4, -0.5, P), DomainError);
    CHECK_THROWS_AS(irregularity_subsolution(0.2, 0.9, 0.5, P), DomainError);
}
