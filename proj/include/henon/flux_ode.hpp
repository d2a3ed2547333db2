#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace henon {

/// State of a radial p-Laplacian ODE in flux form: the profile value u and
/// the flux F = r^{n-1} |u'|^{p-2} u'.
struct FluxState {
  double u = 0.0;
  double flux = 0.0;
};

/// Right-hand side F'(r) = rhs(r, u) of the flux equation.
using FluxRhs = std::function<double(double r, double u)>;

/// u' recovered from the flux: sign(F) (|F| / r^{n-1})^{1/(p-1)}.
double derivativeFromFlux(double flux, double r, double p, int n);

/// Leading-order regular solution at the origin for F' = r^{n-1} u^{p-1}:
///   u = u0 + u0 n^{-1/(p-1)} r^{p'} / p',   F = u0^{p-1} r^n / n.
FluxState seriesSeed(double p, int n, double u0, double seedRadius);

struct FluxOdeOptions {
  double tol = 1e-10;
  /// Sorted output radii in (start, end]. Empty: record every accepted step.
  std::vector<double> stations;
  /// Checked after every accepted step; true terminates the integration.
  std::function<bool(double r, const FluxState& s)> stop;
  std::size_t maxSteps = 2'000'000;
};

struct FluxTrajectory {
  std::vector<double> radius;
  std::vector<FluxState> states;
  FluxState endState;
  double endRadius = 0.0;
  bool stopped = false;  // terminated by the stop predicate
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Integrates u' = sign(F)(|F|/r^{n-1})^{1/(p-1)}, F' = rhs(r, u) from
/// startRadius to endRadius with an embedded Dormand-Prince 5(4) pair.
/// Local error is controlled per component against tol * (scale + |y|), with
/// the flux scaled by r^{n-1}. |u'|^{p-2} is never formed, so u' = 0 is harmless.
///
/// Throws InputError on NaN from rhs, SolverError (with the last valid radius)
/// when the step size underflows.
FluxTrajectory integrateFluxODE(const FluxRhs& rhs, double startRadius, FluxState start,
                                double endRadius, double p, int n,
                                const FluxOdeOptions& options = {});

}  // namespace henon
