#include "henon/henon_radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "henon/errors.hpp"
#include "henon/roots.hpp"
#include "henon/shooting.hpp"
#include "henon/special.hpp"

namespace henon::radial {
namespace {

double signedPow(double u, double e) { return std::copysign(std::pow(std::abs(u), e), u); }

FluxRhs henonRhs(const ProblemParams& pp, double kappa) {
  const int n = pp.n;
  const double p = pp.p, q = pp.q, alpha = pp.alpha;
  return [=](double r, double u) {
    const double weight = std::pow(r, alpha);
    double source = kappa * weight * signedPow(u, q - 1.0);
    if (!std::isfinite(source) && u != 0.0) {
      // u^{q-1} overflowed against a small r^alpha: combine in logs.
      const double lg = std::log(kappa) + alpha * std::log(r) + (q - 1.0) * std::log(std::abs(u));
      source = std::copysign(std::exp(lg), u);
    }
    return std::pow(r, n - 1) * (signedPow(u, p - 1.0) - source);
  };
}

double originSource(const ProblemParams& pp, double kappa, double d) {
  double s = std::pow(d, pp.p - 1.0);
  if (pp.alpha == 0.0) s -= kappa * std::pow(d, pp.q - 1.0);
  return s;
}

ShotOptions shotOptions(const Options& o) {
  ShotOptions s;
  s.tol = o.tol;
  s.seedRadius = o.seedRadius;
  const double blowUp = o.blowUp;
  s.stop = [blowUp](double, const FluxState& st) { return st.u > blowUp || st.u <= 0.0; };
  return s;
}

// Signed miss at the boundary; early-terminated shots are pushed to the side
// they were heading to, scaled so the value stays monotone in the stop radius.
double missFromTrajectory(const FluxTrajectory& traj) {
  if (!traj.stopped) return traj.endState.flux;
  const double remaining = 1.0 + (1.0 - traj.endRadius);
  return traj.endState.u <= 0.0 ? -remaining : remaining;
}

HenonSolution finishSolution(const ProblemParams& pp, Shot shot, double d,
                             double kappa, const Options& options) {
  if (shot.stopped) {
    std::ostringstream msg;
    msg << "radial shot with w(0)=" << d << " left the positive bounded regime";
    throw SolverError(msg.str(), shot.endRadius);
  }
  HenonSolution sol;
  sol.params = pp;
  sol.d0 = d;
  sol.kappa = kappa;
  sol.tol = options.tol;
  const double p = pp.p;
  sol.shootRes = std::abs(derivativeFromFlux(shot.end.flux, 1.0, p, pp.n));
  sol.wNorm = w1pNorm(shot.profile, p);
  sol.mu = std::pow(kappa, p / pp.q) * std::pow(sol.wNorm, p * (pp.q - p) / pp.q);
  const double c = 1.0 / sol.wNorm;
  shot.profile.scale(c);
  sol.v = std::move(shot.profile);
  sol.nodeFlux = std::move(shot.nodeFlux);
  const double fluxScale = std::pow(c, p - 1.0);
  for (double& f : sol.nodeFlux) f *= fluxScale;
  return sol;
}

}  // namespace

double ProblemParams::pStar() const { return n * p / (n - p); }
double ProblemParams::pStarStar() const { return (n - 1) * p / (n - p); }
double ProblemParams::qUpper() const { return pStar() + p * alpha / (n - p); }

void ProblemParams::validate() const {
  require(n >= 3, "dimension n must be >= 3");
  require(std::isfinite(p) && p >= 2.0 && p < n, "p must satisfy 2 <= p < n");
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
  require(std::isfinite(q) && q > p && q < qUpper(),
          "q must lie in (p, p* + p alpha/(n-p))");
}

double sourceScale(const ProblemParams& pp) {
  const double measS = sphereMeasure(pp.n);
  return (pp.alpha + pp.n) * std::pow(measS, pp.q / pp.p - 1.0) *
         std::pow(static_cast<double>(pp.n), -pp.q / pp.p);
}

double shootingMiss(const ProblemParams& pp, double d, const Options& options) {
  require(d > 0.0, "shooting value must be positive");
  const double kappa = sourceScale(pp);
  try {
    const auto traj = shootToBoundary(henonRhs(pp, kappa), pp.n, pp.p, d,
                                      originSource(pp, kappa, d), shotOptions(options));
    return missFromTrajectory(traj);
  } catch (const InputError& e) {
    // Parameters were valid, so a NaN here is overflow inside the trial shot.
    throw SolverError(std::string("trial shot overflowed: ") + e.what());
  }
}

double w1pNorm(const RadialFunction& u, double p) {
  const auto& grid = *u.grid;
  const auto w = grid.measureWeights(grid.dimension() - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    s += w[i] * (std::pow(std::abs(u.quadDerivative(i)), p) + std::pow(std::abs(u.quadValue(i)), p));
  }
  return std::pow(sphereMeasure(grid.dimension()) * s, 1.0 / p);
}

double radialQuotient(const RadialFunction& u, const ProblemParams& pp) {
  const auto& grid = *u.grid;
  const double measS = sphereMeasure(pp.n);
  const auto wHenon = grid.measureWeights(pp.alpha + pp.n - 1);
  double den = 0.0;
  for (std::size_t i = 0; i < wHenon.size(); ++i) {
    den += wHenon[i] * std::pow(std::abs(u.quadValue(i)), pp.q);
  }
  const double num = std::pow(w1pNorm(u, pp.p), pp.p);
  return num / std::pow(measS * den, pp.p / pp.q);
}

double profileResidual(const RadialFunction& v, double wNorm) {
  return std::abs(v.derivatives.back()) * wNorm;
}

HenonSolution solveRadial(const ProblemParams& pp, GridPtr grid, const Options& options) {
  require(grid && grid->dimension() == pp.n, "grid dimension must match n");
  if (pp.q == pp.p && pp.alpha == 0.0) {
    // Unique solution is constant; normalized so that |ball| c^p = 1.
    require(pp.n >= 3 && pp.p >= 2.0 && pp.p < pp.n, "p must satisfy 2 <= p < n");
    HenonSolution sol;
    sol.params = pp;
    const double ball = sphereMeasure(pp.n) / pp.n;
    const double c = std::pow(ball, -1.0 / pp.p);
    sol.v = sampleFunction(grid, [c](double) { return c; }, [](double) { return 0.0; });
    sol.nodeFlux.assign(grid->size(), 0.0);
    sol.mu = 1.0;
    sol.kappa = 1.0;
    sol.d0 = c;
    sol.wNorm = 1.0;
    sol.rootsFound = 1;
    sol.tol = options.tol;
    return sol;
  }
  pp.validate();

  const double kappa = sourceScale(pp);
  std::size_t shots = 0;
  const auto miss = [&](double d) {
    ++shots;
    return shootingMiss(pp, d, options);
  };

  // Grow the bracket geometrically until the residual changes sign across it.
  double lo = options.bracketLow;
  double hi = options.bracketHigh;
  double fLo = miss(lo);
  double fHi = miss(hi);
  for (int k = 0; k < 60 && fLo <= 0.0; ++k) fLo = miss(lo *= 0.5);
  // Trial values beyond the blow-up threshold would be cut off at the seed.
  for (int k = 0; k < 60 && fHi >= 0.0 && 2.0 * hi < options.blowUp; ++k) fHi = miss(hi *= 2.0);
  if (!(fLo > 0.0 && fHi < 0.0)) {
    throw SolverError("shooting residual does not change sign over the search bracket");
  }

  // Coarse geometric scan for every sign change.
  const int m = std::max(options.scanPoints, 2);
  std::vector<double> ds(m + 1);
  std::vector<double> fs(m + 1);
  for (int i = 0; i <= m; ++i) {
    ds[i] = lo * std::pow(hi / lo, static_cast<double>(i) / m);
  }
  fs.front() = fLo;
  fs.back() = fHi;
  for (int i = 1; i < m; ++i) fs[i] = miss(ds[i]);

  const auto rhs = henonRhs(pp, kappa);
  const ShotOptions shotOpts = shotOptions(options);
  std::optional<HenonSolution> best;
  double bestQ = std::numeric_limits<double>::infinity();
  std::size_t roots = 0;
  for (int i = 0; i < m; ++i) {
    if (!((fs[i] > 0.0) != (fs[i + 1] > 0.0))) continue;
    const double d = brent(miss, ds[i], ds[i + 1], RootOptions{1e-14 * ds[i + 1], 0.0, 200}).root;
    Shot shot = shootOnGrid(grid, rhs, pp.p, d, originSource(pp, kappa, d), shotOpts);
    HenonSolution sol = finishSolution(pp, std::move(shot), d, kappa, options);
    ++roots;
    const double qv = radialQuotient(sol.v, pp);
    if (qv < bestQ) {
      bestQ = qv;
      best = std::move(sol);
    }
  }
  if (!best) throw SolverError("no shooting root located in the scanned bracket");
  best->rootsFound = roots;
  best->shots = shots + roots;
  return *std::move(best);
}

}  // namespace henon::radial
