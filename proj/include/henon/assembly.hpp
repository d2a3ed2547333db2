#pragma once

#include <vector>

#include "henon/grid.hpp"
#include "henon/tridiag.hpp"

namespace henon {

/// Coefficients of a radial quadratic form sampled at the Gauss points:
///   Q(h) = int grad h'^2 r^{n-1} + int angular h^2 r^{n-3}
///        + int mass h^2 r^{n-1} + boundary h(1)^2.
struct FormCoefficients {
  std::vector<double> grad;
  std::vector<double> angular;
  std::vector<double> mass;
  double boundary = 0.0;
};

/// Piecewise-linear Galerkin matrix of the form. Element integrals are computed
/// cell-parallel (OpenMP) and gathered per node, so the result is bit-identical
/// to the serial reference.
SymTridiag assembleRadialForm(const RadialGrid& grid, const FormCoefficients& coeffs);

/// Serial scatter-loop reference for assembleRadialForm.
SymTridiag assembleRadialFormSerial(const RadialGrid& grid, const FormCoefficients& coeffs);

}  // namespace henon
