#include "pparab/numeric_jet.hpp"

#include <cmath>
#include <sstream>

namespace pparab {

namespace {

double sample(const ScalarField& field, const Point& p)
{
    const double v = field(p);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "numeric_jet: non-finite field value at t=" << p.t << " x=(" << p.x.transpose() << ")";
        throw NonFiniteError(os.str());
    }
    return v;
}

Point shifted(const Point& p, int axis, double dx)
{
    Point q = p;
    q.x(axis) += dx;
    return q;
}

}  // namespace

Jet2 numeric_jet(const ScalarField& field, const Point& point, double h)
{
    return numeric_jet(field, point, h, h);
}

Jet2 numeric_jet(const ScalarField& field, const Point& point, double hx, double ht)
{
    if (!(hx > 0.0) || !(ht > 0.0)) {
        throw DomainError("numeric_jet: step sizes must be positive");
    }
    const int n = point.dim();
    Jet2 jet = Jet2::zero(n);
    jet.u = sample(field, point);

    Point later = point;
    later.t += ht;
    Point earlier = point;
    earlier.t -= ht;
    jet.ut = (sample(field, later) - sample(field, earlier)) / (2.0 * ht);

    Vec plus(n);
    Vec minus(n);
    for (int i = 0; i < n; ++i) {
        plus(i) = sample(field, shifted(point, i, hx));
        minus(i) = sample(field, shifted(point, i, -hx));
        jet.du(i) = (plus(i) - minus(i)) / (2.0 * hx);
        jet.d2u(i, i) = (plus(i) - 2.0 * jet.u + minus(i)) / (hx * hx);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            auto corner = [&](double si, double sj) {
                Point q = point;
                q.x(i) += si * hx;
                q.x(j) += sj * hx;
                return sample(field, q);
            };
            const double mixed =
                (corner(1, 1) - corner(1, -1) - corner(-1, 1) + corner(-1, -1)) / (4.0 * hx * hx);
            jet.d2u(i, j) = mixed;
            jet.d2u(j, i) = mixed;
        }
    }
    return jet;
}

double jet_distance(const Jet2& a, const Jet2& b)
{
    double d = std::max(std::abs(a.u - b.u), std::abs(a.ut - b.ut));
    d = std::max(d, (a.du - b.du).cwiseAbs().maxCoeff());
    d = std::max(d, (a.d2u - b.d2u).cwiseAbs().maxCoeff());
    return d;
}

}  // namespace pparab
