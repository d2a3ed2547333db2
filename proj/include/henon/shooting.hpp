#pragma once

#include <functional>
#include <vector>

#include "henon/flux_ode.hpp"
#include "henon/radial_function.hpp"

namespace henon {

/// Regular expansion at the origin for F' = r^{n-1} s(u) with s(u0) = source:
///   F = source r^n / n,  u' = sign(source) (|source| r / n)^{1/(p-1)}.
/// With source = u0^{p-1} this is seriesSeed().
FluxState seriesState(double p, int n, double u0, double source, double r);

struct ShotOptions {
  double tol = 1e-10;
  double seedRadius = 1e-4;
  std::function<bool(double r, const FluxState& s)> stop;
};

/// One outward integration from the series seed, sampled at every grid node
/// and Gauss point. Points inside the seed radius use the series.
struct Shot {
  RadialFunction profile;
  std::vector<double> nodeFlux;
  std::vector<double> quadFlux;
  FluxState end;
  double endRadius = 0.0;
  bool stopped = false;
  std::size_t steps = 0;
};

Shot shootOnGrid(GridPtr grid, const FluxRhs& rhs, double p, double u0, double source,
                 const ShotOptions& options);

/// Endpoint only, without grid sampling.
FluxTrajectory shootToBoundary(const FluxRhs& rhs, int n, double p, double u0, double source,
                               const ShotOptions& options);

}  // namespace henon
