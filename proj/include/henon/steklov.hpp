#pragma once

#include "henon/grid.hpp"
#include "henon/radial_function.hpp"
#include "henon/tridiag.hpp"

namespace henon::steklov {

struct Options {
  double tol = 1e-10;
  double seedRadius = 1e-4;
  /// Value of the unnormalized eigenfunction at the origin. The problem is
  /// positively homogeneous, so this only changes the pre-normalization scale.
  double seedValue = 1.0;
};

/// First Steklov eigenpair of -Delta_p u + u^{p-1} = 0 in the unit ball with
/// |grad u|^{p-2} du/dn = lambda u^{p-1} on the sphere.
struct SteklovSolution {
  int n = 3;
  double p = 2.0;
  double lambda = 0.0;
  RadialFunction phi;  // normalized to unit W^1_p(ball) norm
  double phi0 = 0.0;   // phi(0)
  double phi1 = 0.0;   // phi(1)
  double measS = 0.0;
  double tol = 0.0;
  std::size_t steps = 0;
};

/// lambda_p alone: one outward shot, lambda = (u'(1)/u(1))^{p-1}.
double lambda(int n, double p, const Options& options = {});

SteklovSolution solveSteklov(int n, double p, GridPtr grid, const Options& options = {});

/// lambda_2 = 1 - n/2 + I'_{n/2-1}(1) / I_{n/2-1}(1).
double besselLambda2(int n);

/// lambda^{2/p - 1/(p-1) - 1} (meas S)^{2/p - 1} (1 - (n-1) lambda).
double minFpClosedForm(const SteklovSolution& sol);
double minFpClosedForm(int n, double p, double lambdaP);

/// Reduced first-harmonic form
///   (p-1) int (|phi'|^{p-2} w'^2 + phi^{p-2} w^2) r^{n-1} + (n-1) int |phi'|^{p-2} w^2 r^{n-3}
/// assembled with piecewise-linear elements on the solution grid.
SymTridiag fpForm(const SteklovSolution& sol);

struct MinFpResult {
  double value = 0.0;
  RadialFunction minimizer;  // w(1) = 1
};

/// Minimum of the reduced form over w with w(1) = 1. Throws SolverError if the
/// interior block is not positive definite.
MinFpResult minFpNumeric(const SteklovSolution& sol);

}  // namespace henon::steklov
