#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "henon/errors.hpp"
#include "henon/henon_radial.hpp"
#include "henon/special.hpp"

namespace henon::radial {
namespace {

LimitSample limitSample(double alpha, int n, double p, double q, int refinement,
                        const Options& options, double lambdaP) {
  const ProblemParams pp{n, p, q, alpha};
  auto grid = buildGrid(n, refinement, alpha);
  const HenonSolution sol = solveRadial(pp, grid, options);
  steklov::Options so;
  so.tol = options.tol;
  so.seedRadius = options.seedRadius;
  const steklov::SteklovSolution phi = steklov::solveSteklov(n, p, grid, so);
  const double measS = sphereMeasure(n);
  LimitSample s;
  s.alpha = alpha;
  s.mu = sol.mu;
  s.supError = supDistance(sol.v, phi.phi);
  s.rho = sol.mu / (std::pow(alpha + n, p / q) * std::pow(measS, 1.0 - p / q) * lambdaP);
  return s;
}

void checkAlphas(const std::vector<double>& alphas) {
  require(alphas.size() >= 4, "at least four alpha values are required");
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    require(alphas[i] > alphas[i - 1], "alpha values must be increasing");
  }
}

ConvergenceReport summarize(std::vector<LimitSample> samples, double lambdaP, double phiSup) {
  ConvergenceReport rep;
  rep.samples = std::move(samples);
  rep.lambdaP = lambdaP;
  rep.phiSup = phiSup;
  const std::size_t k = rep.samples.size();
  rep.errorDecreasing = true;
  rep.rhoApproaching = true;
  for (std::size_t i = k - 2; i < k; ++i) {
    const auto& a = rep.samples[i - 1];
    const auto& b = rep.samples[i];
    rep.errorDecreasing = rep.errorDecreasing && b.supError < a.supError;
    rep.rhoApproaching = rep.rhoApproaching && std::abs(b.rho - 1.0) < std::abs(a.rho - 1.0);
  }
  rep.pass = rep.errorDecreasing && rep.rhoApproaching;
  return rep;
}

double phiSupNorm(int n, double p, const Options& options) {
  steklov::Options so;
  so.tol = options.tol;
  so.seedRadius = options.seedRadius;
  return steklov::solveSteklov(n, p, buildGrid(n, 4, 0.0), so).phi.supNorm();
}

// Least-squares slope of ys against xs.
double fitSlope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

ConvergenceReport checkLimitTheorem(const std::vector<double>& alphas, int n, double p, double q,
                                    int refinement, const Options& options) {
  checkAlphas(alphas);
  steklov::Options so;
  so.tol = options.tol;
  const double lambdaP = steklov::lambda(n, p, so);
  std::vector<LimitSample> samples(alphas.size());
  std::vector<std::string> errors(alphas.size());
  const long count = static_cast<long>(alphas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      samples[i] = limitSample(alphas[i], n, p, q, refinement, options, lambdaP);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      // Rerun serially so the original exception type propagates.
      limitSample(alphas[i], n, p, q, refinement, options, lambdaP);
    }
  }
  return summarize(std::move(samples), lambdaP, phiSupNorm(n, p, options));
}

ConvergenceReport checkLimitTheoremSerial(const std::vector<double>& alphas, int n, double p,
                                          double q, int refinement, const Options& options) {
  checkAlphas(alphas);
  steklov::Options so;
  so.tol = options.tol;
  const double lambdaP = steklov::lambda(n, p, so);
  std::vector<LimitSample> samples;
  for (double a : alphas) samples.push_back(limitSample(a, n, p, q, refinement, options, lambdaP));
  return summarize(std::move(samples), lambdaP, phiSupNorm(n, p, options));
}

SlopeReport checkDerivativeAsymptotics(const HenonSolution& sol, const SlopeWindow& window) {
  const auto nodes = sol.v.grid->nodes();
  const auto& dv = sol.v.derivatives;
  const double alpha = sol.params.alpha;
  require(alpha > 0.0, "derivative asymptotics need alpha > 0");
  SlopeReport rep;
  rep.expected = 1.0 / (sol.params.p - 1.0);

  rep.monotone = true;
  rep.minInteriorDerivative = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    rep.minInteriorDerivative = std::min(rep.minInteriorDerivative, dv[i]);
    if (!(dv[i] > 0.0)) rep.monotone = false;
  }

  std::vector<double> bx, by, ix, iy;
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    const double r = nodes[i];
    const double x = alpha * (1.0 - r);
    if (x >= window.boundaryLow && x <= window.boundaryHigh) {
      if (!(dv[i] > 0.0)) throw SolverError("nonpositive v' in the boundary fit window", r);
      bx.push_back(std::log(1.0 - r));
      by.push_back(std::log(dv[i]));
    }
    if (r >= window.innerLow && r <= window.innerHigh) {
      if (!(dv[i] > 0.0)) throw SolverError("nonpositive v' in the inner fit window", r);
      ix.push_back(std::log(r));
      iy.push_back(std::log(dv[i]));
    }
  }
  require(bx.size() >= 3 && ix.size() >= 3, "too few nodes in a slope fit window");
  rep.boundaryPoints = bx.size();
  rep.innerPoints = ix.size();
  rep.boundarySlope = fitSlope(bx, by);
  rep.innerSlope = fitSlope(ix, iy);
  return rep;
}

}  // namespace henon::radial
