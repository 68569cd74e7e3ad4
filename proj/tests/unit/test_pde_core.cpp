#include "pparab/expression.hpp"
#include "pparab/numeric_jet.hpp"
#include "pparab/operator.hpp"
#include "pparab/params.hpp"
#include "pparab/sampling.hpp"
#include "pparab/solutions.hpp"

#include <doctest.h>

#include <cmath>

using namespace pparab;

namespace {

Jet2 random_jet(const Halton& seq, std::uint64_t i, int n, double grad_scale)
{
    const auto u = seq.at(i);
    Jet2 j = Jet2::zero(n);
    std::size_t k = 0;
    auto next = [&] { return 2.0 * u[k++ % u.size()] - 1.0 + 0.01 * static_cast<double>(k); };
    j.u = next();
    j.ut = next();
    for (int a = 0; a < n; ++a) {
        j.du(a) = grad_scale * (next() + 1.5);
    }
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            j.d2u(a, b) = j.d2u(b, a) = next();
        }
    }
    return j;
}

}  // namespace

TEST_CASE("make_params constants")
{
    auto a = make_params(2, 1);
    CHECK(a.alpha == 1.0);
    CHECK(a.beta == 2.0);
    REQUIRE(a.nu.has_value());
    CHECK(*a.nu == 1.0);

    auto b = make_params(3, 3);
    CHECK(b.alpha == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(b.beta == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK_FALSE(b.nu.has_value());

    auto c = make_params(kInfinity, 5);
    CHECK(c.alpha == 2.0);
    CHECK(c.beta == 4.0);
    CHECK_FALSE(c.nu.has_value());

    for (double p : {1.5, 2.0, 3.0, 7.25, 100.0}) {
        for (int n : {1, 2, 3, 4}) {
            auto q = make_params(p, n);
            CHECK(q.alpha == 2.0 * (p + n - 2.0) / p);
            CHECK(q.beta == 4.0 * (p - 1.0) / p);
            CHECK(q.alpha > 0.0);
            CHECK(q.beta > 0.0);
            CHECK(q.beta <= 4.0);
            if (p != n) {
                REQUIRE(q.nu.has_value());
                CHECK(*q.nu == (p - n) / (p - 1.0));
            }
        }
    }

    auto big = make_params(1e6, 1);
    CHECK(std::abs(big.alpha - 2.0) < 1e-5);
    CHECK(std::abs(big.beta - 4.0) < 1e-5);

    CHECK_THROWS_AS(make_params(1.0, 1), DomainError);
    CHECK_THROWS_AS(make_params(0.5, 2), DomainError);
    CHECK_THROWS_AS(make_params(2.0, 0), DomainError);
}

TEST_CASE("operator on closed-form jets")
{
    auto P = make_params(2, 2);
    Jet2 q = Jet2::zero(2);
    q.du << 1.0, 0.0;
    q.d2u = Mat::Identity(2, 2);
    auto v = eval_operator(q, P);
    CHECK(v.branch == Branch::classical);
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-15));

    auto P5 = make_params(5, 2);
    Jet2 r = Jet2::zero(2);
    r.du << 0.6, -1.4;  // u = |x|² at x = (0.3, -0.7)
    r.d2u = 2.0 * Mat::Identity(2, 2);
    CHECK(eval_operator(r, P5).value == doctest::Approx(P5.alpha).epsilon(1e-14));

    auto P3 = make_params(3, 2);
    auto H = fundamental(P3);
    Vec x(2);
    x << 1.0, 0.0;
    const Jet2 j = H.jet(Point(x, 1.0));
    CHECK(std::abs(eval_operator(j, P3).value - j.ut) < 1e-12);
}

TEST_CASE("envelopes")
{
    auto P = make_params(4, 2);
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    CHECK(eval_envelope(d, P, EnvelopeSide::lower) == doctest::Approx(-0.5));
    CHECK(eval_envelope(d, P, EnvelopeSide::upper) == doctest::Approx(0.5));

    for (double c : {-2.0, 0.5, 3.0}) {
        const Mat s = c * Mat::Identity(2, 2);
        CHECK(eval_envelope(s, P, EnvelopeSide::lower) == doctest::Approx(c * P.alpha / 2));
        CHECK(eval_envelope(s, P, EnvelopeSide::upper) == doctest::Approx(c * P.alpha / 2));
        Jet2 j = Jet2::zero(2);
        j.d2u = s;
        j.du << 0.3, -0.2;
        const auto v = eval_operator(j, P);
        CHECK(v.value == doctest::Approx(c * P.alpha / 2).epsilon(1e-14));
    }

    auto ev = extreme_eigenvalues(2.0 * Mat::Identity(3, 3));
    CHECK(ev.min == 2.0);
    CHECK(ev.max == 2.0);

    Jet2 flat = Jet2::zero(2);
    flat.d2u = d;
    auto lo = eval_operator(flat, P);
    CHECK(lo.branch == Branch::envelope_lower);
    CHECK(lo.value == doctest::Approx(-0.5));
    auto hi = eval_operator(flat, P, kDefaultTau, EnvelopeSide::upper);
    CHECK(hi.branch == Branch::envelope_upper);
    CHECK(hi.value == doctest::Approx(0.5));
    CHECK(hi.lower == doctest::Approx(-0.5));

    auto Pinf = make_params(kInfinity, 2);
    CHECK(eval_envelope(d, Pinf, EnvelopeSide::lower) == -1.0);
    CHECK(eval_envelope(d, Pinf, EnvelopeSide::upper) == 1.0);
}

TEST_CASE("residual examples")
{
    Jet2 c = Jet2::zero(3);
    c.u = 5.0;
    CHECK(residual(c, make_params(3, 3)) == 0.0);

    // h + eps/(T - t) with h exact: residual eps/(T - t)².
    auto P = make_params(3, 1);
    auto H = fundamental(P);
    const double eps = 0.1;
    const double T = 1.5;
    const double t = 1.0;
    Jet2 j = H.jet(Point(Vec::Constant(1, 0.4), t));
    j.u += eps / (T - t);
    j.ut += eps / ((T - t) * (T - t));
    CHECK(residual(j, P) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("operator properties")
{
    Halton seq(12, 3);
    for (double p : {2.0, 3.0, 10.0, kInfinity}) {
        for (int n : {1, 2, 3}) {
            auto P = make_params(p, n);
            for (std::uint64_t i = 0; i < 40; ++i) {
                const Jet2 j = random_jet(seq, i, n, 100.0);
                const double v = eval_operator(j, P).value;
                for (double s : {2.0, 0.5, 4.0, 0.125}) {
                    CHECK(eval_operator(j.scaled(s), P).value == s * v);
                }
                CHECK(std::abs(eval_operator(j.scaled(3.0), P).value - 3.0 * v) <= 1e-13 * std::abs(3.0 * v) + 1e-300);

                // Rotation by a Householder reflection.
                Vec w = Vec::LinSpaced(n, 1.0, 2.0);
                w.normalize();
                const Mat R = Mat::Identity(n, n) - 2.0 * w * w.transpose();
                Jet2 r = j;
                r.du = R * j.du;
                r.d2u = R * j.d2u * R.transpose();
                CHECK(std::abs(eval_operator(r, P).value - v) < 1e-10);
            }
        }
    }
    auto P2 = make_params(2, 3);
    for (std::uint64_t i = 0; i < 20; ++i) {
        const Jet2 j = random_jet(seq, i, 3, 1.0);
        CHECK(eval_operator(j, P2).value == doctest::Approx(0.5 * j.d2u.trace()).epsilon(1e-14));
    }
}

TEST_CASE("numeric_jet exact on affine and quadratic fields")
{
    // Dyadic inputs keep every difference exact.
    auto lin = [](const Point& p) { return 0.5 * p.x(0) - 1.25 * p.x(1) - 0.75 * p.t; };
    Vec x(2);
    x << 0.25, 0.5;
    const Jet2 a = numeric_jet(lin, Point(x, 1.0), 0.5);
    CHECK(a.du(0) == 0.5);
    CHECK(a.du(1) == -1.25);
    CHECK(a.ut == -0.75);
    CHECK(a.d2u.norm() == 0.0);

    auto quad = [](const Point& p) { return p.x.squaredNorm(); };
    const Jet2 q = numeric_jet(quad, Point(x, 1.0), 0.5);
    CHECK(q.d2u(0, 0) == 2.0);
    CHECK(q.d2u(1, 1) == 2.0);
    CHECK(q.d2u(0, 1) == 0.0);
    CHECK(q.symmetric());

    auto bad = [](const Point& p) { return p.x(0) > 0.3 ? std::nan("") : 0.0; };
    CHECK_THROWS_AS((void)numeric_jet(bad, Point(x, 1.0), 0.1), NonFiniteError);
}

TEST_CASE("numeric_jet converges at second order")
{
    auto P = make_params(3, 2);
    auto H = fundamental(P);
    Vec x(2);
    x << 1.0, 0.0;
    const Point pt(x, 1.0);
    const Jet2 exact = H.jet(pt);
    for (double h : {2e-2, 1e-2}) {
        const double e1 = jet_distance(exact, numeric_jet(H.value, pt, h));
        const double e2 = jet_distance(exact, numeric_jet(H.value, pt, h / 2));
        CHECK(e1 / e2 >= 3.5);
        CHECK(e1 / e2 <= 4.5);
    }
}

TEST_CASE("expression parser")
{
    Vec x(2);
    x << 4.0, -9.0;
    const Point p(x, 0.5);
    CHECK(Expression::parse("x1^2 + 2*t - sqrt(abs(x2))", 2)(p) == 16.0 + 1.0 - 3.0);
    CHECK(Expression::parse(" - 2 ^ 2 ", 2)(p) == -4.0);
    CHECK(Expression::parse("2^3^2", 2)(p) == 512.0);
    CHECK(Expression::parse("exp(log(x1)) / (1 + 1)", 2)(p) == doctest::Approx(2.0));
    CHECK(Expression::parse("(x1 - x2) * t", 2)(p) == 6.5);
    CHECK_THROWS_AS(Expression::parse("x3", 2), ParseError);
    CHECK_THROWS_AS(Expression::parse("2 +", 1), ParseError);
    CHECK_THROWS_AS(Expression::parse("sin(t)", 1), ParseError);
    CHECK_THROWS_AS(Expression::parse("(t", 1), ParseError);
}
