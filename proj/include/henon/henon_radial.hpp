#pragma once

#include <cstddef>
#include <vector>

#include "henon/grid.hpp"
#include "henon/radial_function.hpp"
#include "henon/steklov.hpp"

namespace henon::radial {

/// Parameters of -Delta_p u + u^{p-1} = |x|^alpha u^{q-1} in the unit ball.
struct ProblemParams {
  int n = 4;
  double p = 2.0;
  double q = 3.0;
  double alpha = 0.0;

  /// n p / (n - p)
  double pStar() const;
  /// (n - 1) p / (n - p)
  double pStarStar() const;
  /// Upper end of the radial admissible range, p* + p alpha / (n - p).
  double qUpper() const;
  /// n >= 3, 2 <= p < n, alpha >= 0 and q in (p, qUpper()).
  void validate() const;
};

struct Options {
  double tol = 1e-10;
  double seedRadius = 1e-4;
  double blowUp = 1e6;
  /// Coarse scan of the shooting residual between the bracket ends.
  int scanPoints = 24;
  double bracketLow = 0.1;
  double bracketHigh = 10.0;
};

/// Normalized radial minimizer v of Q_{p,q,alpha} and its level mu.
///
/// Internally the rescaled profile w solves
///   -(r^{n-1} |w'|^{p-2} w')' + r^{n-1} w^{p-1} = kappa r^{alpha+n-1} w^{q-1},
/// w'(1) = 0, with kappa = sourceScale(params); then v = w / ||w|| and
/// mu = kappa^{p/q} ||w||^{p(q-p)/q}.
struct HenonSolution {
  ProblemParams params;
  RadialFunction v;
  std::vector<double> nodeFlux;  // r^{n-1} |v'|^{p-2} v' at the nodes
  double mu = 0.0;
  double shootRes = 0.0;  // |w'(1)| of the converged shot
  double d0 = 0.0;        // w(0)
  double kappa = 1.0;
  double wNorm = 0.0;     // ||w||_{W^1_p(ball)}
  std::size_t rootsFound = 0;
  std::size_t shots = 0;
  double tol = 0.0;
};

/// kappa = mu_c^{q/p}, where mu_c = (alpha+n)^{p/q} (meas S)^{1-p/q} / n is the
/// quotient of the constant profile; keeps w(0) of order one for all (alpha, q).
double sourceScale(const ProblemParams& params);

/// Shooting residual F(1) for w(0) = d. Trial shots that blow up (|w| > blowUp)
/// or reach w <= 0 are cut short and return a value of the corresponding sign.
double shootingMiss(const ProblemParams& params, double d, const Options& options = {});

/// Shooting solve. q == p is only accepted at alpha == 0, where the constant
/// profile is returned analytically.
HenonSolution solveRadial(const ProblemParams& params, GridPtr grid, const Options& options = {});

/// measS * int (|u'|^p + |u|^p) r^{n-1} dr, raised to 1/p.
double w1pNorm(const RadialFunction& u, double p);

/// Q_{p,q,alpha}(u) by Gauss quadrature on the profile's grid.
double radialQuotient(const RadialFunction& u, const ProblemParams& params);

/// Residual reported for a stored profile: |v'(1)| scaled back to the shot,
/// i.e. |v'(1)| * ||w||. Used to re-check profiles read back from CSV.
double profileResidual(const RadialFunction& v, double wNorm);

// ---------------------------------------------------------------------------
// Direct variational oracle.

struct OracleOptions {
  int maxIterations = 20000;
  int memory = 12;
  double relTol = 1e-14;
  double floor = 1e-12;  // trial profiles are clamped from below
};

struct OracleResult {
  double mu = 0.0;
  RadialFunction v;               // piecewise-linear, W^1_p-normalized
  std::vector<double> history;    // quotient after every accepted step
  int iterations = 0;
  bool converged = false;
};

/// Minimizes the radial quotient over piecewise-linear node values by a
/// preconditioned L-BFGS descent on log Q with monotone backtracking.
/// A non-converged result still carries an upper bound for mu.
OracleResult minimizeQRadialOracle(const ProblemParams& params, GridPtr grid,
                                   const OracleOptions& options = {});

/// Exact quotient of a piecewise-linear profile (the oracle's objective).
double piecewiseLinearQuotient(std::span<const double> nodeValues, const RadialGrid& grid,
                               const ProblemParams& params);

// ---------------------------------------------------------------------------
// Large-alpha limit checks.

struct LimitSample {
  double alpha = 0.0;
  double supError = 0.0;  // ||v_alpha - phi_p||_inf
  double rho = 0.0;       // mu / ((alpha+n)^{p/q} measS^{1-p/q} lambda_p)
  double mu = 0.0;
};

struct ConvergenceReport {
  std::vector<LimitSample> samples;
  double lambdaP = 0.0;
  double phiSup = 0.0;
  bool errorDecreasing = false;  // over the last three alphas
  bool rhoApproaching = false;   // |rho - 1| decreasing over the last three alphas
  bool pass = false;
};

/// Solves for each alpha (OpenMP over alphas). Alphas must be increasing, at least four.
ConvergenceReport checkLimitTheorem(const std::vector<double>& alphas, int n, double p, double q,
                                    int refinement = 4, const Options& options = {});
ConvergenceReport checkLimitTheoremSerial(const std::vector<double>& alphas, int n, double p,
                                          double q, int refinement = 4,
                                          const Options& options = {});

struct SlopeWindow {
  /// Boundary fit over alpha(1-r) in [low, high].
  double boundaryLow = 5e-4;
  double boundaryHigh = 5e-2;
  double innerLow = 1e-3;
  double innerHigh = 1e-2;
};

struct SlopeReport {
  double boundarySlope = 0.0;
  double innerSlope = 0.0;
  double expected = 0.0;  // 1/(p-1)
  std::size_t boundaryPoints = 0;
  std::size_t innerPoints = 0;
  bool monotone = false;  // v' > 0 at every interior node
  double minInteriorDerivative = 0.0;
};

/// Log-log slopes of v' near r = 1 (against 1-r) and near r = 0 (against r).
/// Throws SolverError if v' <= 0 inside a fit window.
SlopeReport checkDerivativeAsymptotics(const HenonSolution& sol, const SlopeWindow& window = {});

}  // namespace henon::radial
