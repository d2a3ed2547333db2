#pragma once

#include <functional>

namespace henon {

/// Adaptive Gauss-Kronrod (15-point) quadrature on [a, b] to relative tolerance.
double integrateAdaptive(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-12);

}  // namespace henon
