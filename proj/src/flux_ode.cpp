#include "henon/flux_ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "henon/errors.hpp"

namespace henon {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Deriv {
  double du;
  double dflux;
};

}  // namespace

double derivativeFromFlux(double flux, double r, double p, int n) {
  if (flux == 0.0) return 0.0;
  const double mag = std::pow(std::abs(flux) / std::pow(r, n - 1), 1.0 / (p - 1.0));
  return flux > 0.0 ? mag : -mag;
}

FluxState seriesSeed(double p, int n, double u0, double seedRadius) {
  require(seedRadius > 0.0, "series seed radius must be positive");
  require(u0 > 0.0, "series seed value must be positive");
  const double pPrime = p / (p - 1.0);
  const double coeff = u0 * std::pow(static_cast<double>(n), -1.0 / (p - 1.0));
  FluxState s;
  s.u = u0 + coeff * std::pow(seedRadius, pPrime) / pPrime;
  s.flux = std::pow(u0, p - 1.0) * std::pow(seedRadius, n) / n;
  return s;
}

FluxTrajectory integrateFluxODE(const FluxRhs& rhs, double startRadius, FluxState start,
                                double endRadius, double p, int n,
                                const FluxOdeOptions& options) {
  require(startRadius > 0.0 && startRadius < endRadius && endRadius <= 1.0,
          "integration interval must satisfy 0 < start < end <= 1");
  require(p >= 2.0, "flux integrator requires p >= 2");
  require(options.tol > 0.0, "tolerance must be positive");

  const double tol = options.tol;
  const auto eval = [&](double r, double u, double flux) {
    const double df = rhs(r, u);
    if (std::isnan(df)) {
      std::ostringstream msg;
      msg << "flux right-hand side returned NaN at r=" << r;
      throw InputError(msg.str());
    }
    return Deriv{derivativeFromFlux(flux, r, p, n), df};
  };

  FluxTrajectory traj;
  const auto& stations = options.stations;
  std::size_t nextStation = 0;
  while (nextStation < stations.size() && stations[nextStation] <= startRadius) ++nextStation;
  const bool recordSteps = stations.empty();

  double r = startRadius;
  double u = start.u;
  double flux = start.flux;
  double proposed = std::min(startRadius, endRadius - startRadius);
  Deriv k1 = eval(r, u, flux);

  if (recordSteps) {
    traj.radius.push_back(r);
    traj.states.push_back({u, flux});
  }

  std::size_t steps = 0;
  while (r < endRadius) {
    if (++steps > options.maxSteps) {
      throw SolverError("flux integrator exceeded the step budget", r);
    }
    double target = endRadius;
    if (nextStation < stations.size()) target = std::min(target, stations[nextStation]);
    double h = proposed;
    bool hitsTarget = false;
    if (r + h >= target) {
      h = target - r;
      hitsTarget = true;
    }
    if (h <= 1e-15 * std::max(r, 1e-3)) {
      throw SolverError("step size underflow in flux integrator", r);
    }

    const Deriv k2 = eval(r + c2 * h, u + h * a21 * k1.du, flux + h * a21 * k1.dflux);
    const Deriv k3 = eval(r + c3 * h, u + h * (a31 * k1.du + a32 * k2.du),
                          flux + h * (a31 * k1.dflux + a32 * k2.dflux));
    const Deriv k4 =
        eval(r + c4 * h, u + h * (a41 * k1.du + a42 * k2.du + a43 * k3.du),
             flux + h * (a41 * k1.dflux + a42 * k2.dflux + a43 * k3.dflux));
    const Deriv k5 = eval(
        r + c5 * h, u + h * (a51 * k1.du + a52 * k2.du + a53 * k3.du + a54 * k4.du),
        flux + h * (a51 * k1.dflux + a52 * k2.dflux + a53 * k3.dflux + a54 * k4.dflux));
    const Deriv k6 =
        eval(r + h,
             u + h * (a61 * k1.du + a62 * k2.du + a63 * k3.du + a64 * k4.du + a65 * k5.du),
             flux + h * (a61 * k1.dflux + a62 * k2.dflux + a63 * k3.dflux +
                         a64 * k4.dflux + a65 * k5.dflux));
    const double uNew =
        u + h * (b1 * k1.du + b3 * k3.du + b4 * k4.du + b5 * k5.du + b6 * k6.du);
    const double fluxNew = flux + h * (b1 * k1.dflux + b3 * k3.dflux + b4 * k4.dflux +
                                       b5 * k5.dflux + b6 * k6.dflux);
    const double rNew = hitsTarget ? target : r + h;
    const Deriv k7 = eval(rNew, uNew, fluxNew);

    const double errU =
        h * (e1 * k1.du + e3 * k3.du + e4 * k4.du + e5 * k5.du + e6 * k6.du + e7 * k7.du);
    const double errF = h * (e1 * k1.dflux + e3 * k3.dflux + e4 * k4.dflux +
                             e5 * k5.dflux + e6 * k6.dflux + e7 * k7.dflux);
    const double scaleU = tol * (1.0 + std::max(std::abs(u), std::abs(uNew)));
    const double scaleF = tol * (std::pow(rNew, n - 1) + std::max(std::abs(flux), std::abs(fluxNew)));
    const double err = std::max(std::abs(errU) / scaleU, std::abs(errF) / scaleF);

    if (!(err <= 1.0)) {
      ++traj.rejected;
      const double factor = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.1;
      proposed = h * factor;
      continue;
    }

    ++traj.accepted;
    r = rNew;
    u = uNew;
    flux = fluxNew;
    k1 = k7;
    if (recordSteps) {
      traj.radius.push_back(r);
      traj.states.push_back({u, flux});
    } else if (hitsTarget && nextStation < stations.size() && r == stations[nextStation]) {
      traj.radius.push_back(r);
      traj.states.push_back({u, flux});
      ++nextStation;
      while (nextStation < stations.size() && stations[nextStation] <= r) {
        traj.radius.push_back(stations[nextStation]);
        traj.states.push_back({u, flux});
        ++nextStation;
      }
    }
    if (options.stop && options.stop(r, {u, flux})) {
      traj.stopped = true;
      break;
    }
    const double grow = err > 0.0 ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
    // A step shortened to land on a station says little about the natural step.
    if (!hitsTarget) {
      proposed = h * grow;
    } else if (grow < 1.0) {
      proposed = std::min(proposed, h * grow);
    }
  }
  traj.endRadius = r;
  traj.endState = {u, flux};
  return traj;
}

}  // namespace henon
