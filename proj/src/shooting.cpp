#include "henon/shooting.hpp"

#include <algorithm>
#include <cmath>

#include "henon/errors.hpp"

namespace henon {

FluxState seriesState(double p, int n, double u0, double source, double r) {
  FluxState s;
  s.flux = source * std::pow(r, n) / n;
  if (source == 0.0) {
    s.u = u0;
    return s;
  }
  const double pPrime = p / (p - 1.0);
  const double coeff = std::pow(std::abs(source) / n, 1.0 / (p - 1.0));
  const double du = coeff * std::pow(r, pPrime) / pPrime;
  s.u = source > 0.0 ? u0 + du : u0 - du;
  return s;
}

FluxTrajectory shootToBoundary(const FluxRhs& rhs, int n, double p, double u0, double source,
                               const ShotOptions& options) {
  FluxOdeOptions ode;
  ode.tol = options.tol;
  ode.stop = options.stop;
  ode.stations = {1.0};
  const FluxState seed = seriesState(p, n, u0, source, options.seedRadius);
  return integrateFluxODE(rhs, options.seedRadius, seed, 1.0, p, n, ode);
}

Shot shootOnGrid(GridPtr grid, const FluxRhs& rhs, double p, double u0, double source,
                 const ShotOptions& options) {
  const int n = grid->dimension();
  const double rs = options.seedRadius;
  require(rs > 0.0 && rs < grid->nodes()[grid->size() - 1], "seed radius must lie in (0, 1)");

  // Merge nodes and Gauss points beyond the seed radius into one station list.
  struct Slot {
    double r;
    bool node;
    std::size_t index;
  };
  std::vector<Slot> slots;
  const auto nodes = grid->nodes();
  const auto quad = grid->quadPoints();
  slots.reserve(nodes.size() + quad.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) slots.push_back({nodes[i], true, i});
  for (std::size_t i = 0; i < quad.size(); ++i) slots.push_back({quad[i], false, i});
  std::stable_sort(slots.begin(), slots.end(),
                   [](const Slot& a, const Slot& b) { return a.r < b.r; });

  Shot shot;
  auto& prof = shot.profile;
  prof.grid = grid;
  prof.values.assign(nodes.size(), 0.0);
  prof.derivatives.assign(nodes.size(), 0.0);
  prof.quadValues.assign(quad.size(), 0.0);
  prof.quadDerivatives.assign(quad.size(), 0.0);
  shot.nodeFlux.assign(nodes.size(), 0.0);
  shot.quadFlux.assign(quad.size(), 0.0);

  const auto store = [&](const Slot& s, const FluxState& st) {
    const double du = s.r > 0.0 ? derivativeFromFlux(st.flux, s.r, p, n) : 0.0;
    if (s.node) {
      prof.values[s.index] = st.u;
      prof.derivatives[s.index] = du;
      shot.nodeFlux[s.index] = st.flux;
    } else {
      prof.quadValues[s.index] = st.u;
      prof.quadDerivatives[s.index] = du;
      shot.quadFlux[s.index] = st.flux;
    }
  };

  std::vector<double> stations;
  std::size_t first = 0;
  for (; first < slots.size() && slots[first].r <= rs; ++first) {
    store(slots[first], seriesState(p, n, u0, source, slots[first].r));
  }
  for (std::size_t i = first; i < slots.size(); ++i) {
    if (stations.empty() || slots[i].r > stations.back()) stations.push_back(slots[i].r);
  }

  FluxOdeOptions ode;
  ode.tol = options.tol;
  ode.stop = options.stop;
  ode.stations = stations;
  const FluxTrajectory traj =
      integrateFluxODE(rhs, rs, seriesState(p, n, u0, source, rs), 1.0, p, n, ode);

  std::size_t k = 0;
  for (std::size_t i = first; i < slots.size(); ++i) {
    while (k < traj.radius.size() && traj.radius[k] < slots[i].r) ++k;
    if (k >= traj.radius.size()) break;
    store(slots[i], traj.states[k]);
  }
  shot.end = traj.endState;
  shot.endRadius = traj.endRadius;
  shot.stopped = traj.stopped;
  shot.steps = traj.accepted;
  return shot;
}

}  // namespace henon
