#include "henon/steklov.hpp"

#include <cmath>

#include "henon/assembly.hpp"
#include "henon/errors.hpp"
#include "henon/shooting.hpp"
#include "henon/special.hpp"

namespace henon::steklov {
namespace {

void checkArgs(int n, double p) {
  require(n >= 3, "dimension n must be >= 3");
  require(p >= 2.0 && std::isfinite(p), "Steklov solver requires p >= 2");
}

FluxRhs steklovRhs(int n, double p) {
  return [n, p](double r, double u) {
    return std::pow(r, n - 1) * std::copysign(std::pow(std::abs(u), p - 1.0), u);
  };
}

double lambdaFromBoundary(double u1, double du1, double p) {
  return std::pow(du1 / u1, p - 1.0);
}

void checkBound(double lam, int n) {
  if (!(lam > 0.0 && lam < 1.0 / n)) {
    throw SolverError("computed Steklov eigenvalue violates 0 < lambda_p < 1/n");
  }
}

}  // namespace

double lambda(int n, double p, const Options& options) {
  checkArgs(n, p);
  ShotOptions shot{options.tol, options.seedRadius, {}};
  const double u0 = options.seedValue;
  const auto traj =
      shootToBoundary(steklovRhs(n, p), n, p, u0, std::pow(u0, p - 1.0), shot);
  const double du1 = derivativeFromFlux(traj.endState.flux, 1.0, p, n);
  const double lam = lambdaFromBoundary(traj.endState.u, du1, p);
  checkBound(lam, n);
  return lam;
}

SteklovSolution solveSteklov(int n, double p, GridPtr grid, const Options& options) {
  checkArgs(n, p);
  require(grid && grid->dimension() == n, "grid dimension must match n");
  require(options.seedValue > 0.0, "seed value must be positive");
  const double u0 = options.seedValue;
  Shot shot = shootOnGrid(grid, steklovRhs(n, p), p, u0, std::pow(u0, p - 1.0),
                          ShotOptions{options.tol, options.seedRadius, {}});

  SteklovSolution sol;
  sol.n = n;
  sol.p = p;
  sol.measS = sphereMeasure(n);
  sol.tol = options.tol;
  sol.steps = shot.steps;
  const double u1 = shot.end.u;
  const double du1 = derivativeFromFlux(shot.end.flux, 1.0, p, n);
  sol.lambda = lambdaFromBoundary(u1, du1, p);
  checkBound(sol.lambda, n);

  // ||phi||^p = meas S * F(1) phi(1) = meas S * lambda * phi(1)^p after integrating by parts.
  sol.phi1 = std::pow(sol.lambda * sol.measS, -1.0 / p);
  const double c = sol.phi1 / u1;
  shot.profile.scale(c);
  sol.phi = std::move(shot.profile);
  sol.phi0 = c * u0;
  return sol;
}

double besselLambda2(int n) {
  require(n >= 3, "dimension n must be >= 3");
  const double nu = 0.5 * n - 1.0;
  return 1.0 - 0.5 * n + besselIPrime(nu, 1.0) / besselI(nu, 1.0);
}

double minFpClosedForm(int n, double p, double lambdaP) {
  const double measS = sphereMeasure(n);
  return std::pow(lambdaP, 2.0 / p - 1.0 / (p - 1.0) - 1.0) * std::pow(measS, 2.0 / p - 1.0) *
         (1.0 - (n - 1) * lambdaP);
}

double minFpClosedForm(const SteklovSolution& sol) {
  return minFpClosedForm(sol.n, sol.p, sol.lambda);
}

SymTridiag fpForm(const SteklovSolution& sol) {
  const auto& grid = *sol.phi.grid;
  const std::size_t m = grid.quadPoints().size();
  const double p = sol.p;
  FormCoefficients coeffs;
  coeffs.grad.resize(m);
  coeffs.angular.resize(m);
  coeffs.mass.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double gradWeight = std::pow(std::abs(sol.phi.quadDerivative(i)), p - 2.0);
    coeffs.grad[i] = (p - 1.0) * gradWeight;
    coeffs.angular[i] = (sol.n - 1) * gradWeight;
    coeffs.mass[i] = (p - 1.0) * std::pow(sol.phi.quadValue(i), p - 2.0);
  }
  return assembleRadialForm(grid, coeffs);
}

MinFpResult minFpNumeric(const SteklovSolution& sol) {
  const SymTridiag form = fpForm(sol);
  const std::size_t last = form.size() - 1;
  const SymTridiag interior = form.leadingBlock();
  if (!isPositiveDefinite(interior)) {
    throw SolverError("reduced F_p form is indefinite on the interior nodes");
  }
  std::vector<double> rhs(last, 0.0);
  rhs[last - 1] = -form.off[last - 1];
  std::vector<double> w = solveTridiag(interior, rhs);
  w.push_back(1.0);

  MinFpResult out;
  out.value = form.quadratic(w);
  out.minimizer.grid = sol.phi.grid;
  out.minimizer.values = w;
  // Nodal slopes from neighbouring cells (one-sided at the ends).
  const auto nodes = sol.phi.grid->nodes();
  out.minimizer.derivatives.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i == last ? last : i + 1;
    out.minimizer.derivatives[i] = (w[hi] - w[lo]) / (nodes[hi] - nodes[lo]);
  }
  return out;
}

}  // namespace henon::steklov
