#pragma once

#include <functional>

namespace nmk {

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
/// `abs_tol`. Handles a > b by sign convention.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

}  // namespace nmk
