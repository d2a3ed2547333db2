#pragma once

#include <functional>
#include <vector>

#include "henon/grid.hpp"

namespace henon {

/// Values and derivatives of a radial profile at the grid nodes. Profiles
/// produced by the ODE solvers also carry samples at the Gauss points, so
/// integrals against them do not go through interpolation.
struct RadialFunction {
  GridPtr grid;
  std::vector<double> values;
  std::vector<double> derivatives;
  std::vector<double> quadValues;       // empty when not sampled
  std::vector<double> quadDerivatives;  // empty when not sampled

  bool hasQuadSamples() const noexcept { return !quadValues.empty(); }

  /// Cubic Hermite interpolant of the nodal data.
  double value(double r) const;
  /// Linear interpolant of the nodal derivatives (keeps sign of nonnegative data).
  double derivative(double r) const;

  /// Value at quadrature point i; falls back to interpolation.
  double quadValue(std::size_t i) const;
  double quadDerivative(std::size_t i) const;

  /// Hermite-corrected trapezoid rule for the integral of the nodal data over
  /// [0, 1]. Fourth order on smooth data.
  double integrateNodal() const;

  /// max_i |values_i|
  double supNorm() const;

  void scale(double factor);
};

/// Samples f and f' at the nodes and at the Gauss points of the grid.
RadialFunction sampleFunction(GridPtr grid, const std::function<double(double)>& f,
                              const std::function<double(double)>& df);

/// Continuous piecewise-linear profile through the node values; nodal
/// derivatives average the two adjacent cell slopes.
RadialFunction piecewiseLinear(GridPtr grid, std::vector<double> values);

/// sup over nodes of |a - b|; both must live on the same grid.
double supDistance(const RadialFunction& a, const RadialFunction& b);

}  // namespace henon
