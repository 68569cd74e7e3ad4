#include "pparab/params.hpp"

#include <cmath>
#include <sstream>

namespace pparab {

PParams make_params(double p, int n)
{
    if (n < 1) {
        throw DomainError("make_params: spatial dimension n must be >= 1");
    }
    if (std::isnan(p) || !(p > 1.0)) {
        throw DomainError("make_params: requires 1 < p < inf or p = inf");
    }
    PParams out;
    out.p = p;
    out.n = n;
    if (p == kInfinity) {
        out.alpha = 2.0;
        out.beta = 4.0;
        out.nu.reset();
        return out;
    }
    out.alpha = 2.0 * (p + n - 2.0) / p;
    out.beta = 4.0 * (p - 1.0) / p;
    if (p != static_cast<double>(n)) {
        out.nu = (p - n) / (p - 1.0);
    }
    return out;
}

std::string describe(const PParams& params)
{
    std::ostringstream os;
    os << "p=";
    if (params.infinite()) {
        os << "inf";
    } else {
        os << params.p;
    }
    os << " n=" << params.n << " alpha=" << params.alpha << " beta=" << params.beta;
    if (params.nu) {
        os << " nu=" << *params.nu;
    }
    return os.str();
}

bool Jet2::symmetric(double tol) const
{
    const auto n = d2u.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(d2u(i, j) - d2u(j, i)) > tol) {
                return false;
            }
        }
    }
    return true;
}

Jet2 Jet2::scaled(double s) const
{
    return Jet2{s * u, s * ut, s * du, s * d2u};
}

}  // namespace pparab
