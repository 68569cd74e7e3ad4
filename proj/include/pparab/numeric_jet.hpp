#pragma once

#include "pparab/params.hpp"

#include <functional>

namespace pparab {

using ScalarField = std::function<double(const Point&)>;

/// Raised when a field returns a non-finite value on a finite-difference stencil.
class NonFiniteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Central second-order finite-difference jet. Mixed spatial derivatives use
/// the four-point cross stencil; the Hessian is symmetrized by averaging.
Jet2 numeric_jet(const ScalarField& field, const Point& point, double h);

/// As above with separate spatial and temporal steps.
Jet2 numeric_jet(const ScalarField& field, const Point& point, double hx, double ht);

/// Max-abs difference over all jet components (value, time derivative,
/// gradient and Hessian entries).
double jet_distance(const Jet2& a, const Jet2& b);

}  // namespace pparab
