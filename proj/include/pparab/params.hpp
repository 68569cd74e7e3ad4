#pragma once

#include <Eigen/Dense>

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace pparab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Raised when an operation is called outside its admissible parameter range.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Constants of u_t = (1/p)|Du|^{2-p} Δ_p u in n space dimensions.
///
/// alpha and beta are the exponents of the self-similar solution
/// t^{-alpha/beta} exp(-|x|^2/(beta t)); nu is the exponent of the radial
/// change of variables that removes first-order terms. p may be +infinity,
/// in which case the equation is u_t = Δ∞ᴺu.
struct PParams {
    double p = 2.0;
    int n = 1;
    double alpha = 1.0;
    double beta = 2.0;
    std::optional<double> nu;

    [[nodiscard]] bool infinite() const { return p == kInfinity; }
    /// 1/p, zero at p = ∞.
    [[nodiscard]] double inv_p() const { return infinite() ? 0.0 : 1.0 / p; }
    /// (p-2)/p, one at p = ∞.
    [[nodiscard]] double directional_weight() const { return infinite() ? 1.0 : (p - 2.0) / p; }
    [[nodiscard]] double alpha_over_beta() const { return alpha / beta; }

    bool operator==(const PParams&) const = default;
};

/// Throws DomainError unless p > 1 (or p = ∞) and n ≥ 1.
PParams make_params(double p, int n);

std::string describe(const PParams& params);

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A space-time point (x, t).
struct Point {
    Vec x;
    double t = 0.0;

    Point() = default;
    Point(Vec x_, double t_) : x(std::move(x_)), t(t_) {}

    [[nodiscard]] int dim() const { return static_cast<int>(x.size()); }
};

/// Second-order jet of a scalar field at a space-time point.
struct Jet2 {
    double u = 0.0;
    double ut = 0.0;
    Vec du;
    Mat d2u;

    static Jet2 zero(int n)
    {
        return Jet2{0.0, 0.0, Vec::Zero(n), Mat::Zero(n, n)};
    }

    [[nodiscard]] bool symmetric(double tol = 1e-12) const;
    /// Every component multiplied by s.
    [[nodiscard]] Jet2 scaled(double s) const;
};

}  // namespace pparab
