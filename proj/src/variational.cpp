#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "henon/errors.hpp"
#include "henon/henon_radial.hpp"
#include "henon/special.hpp"

namespace henon::radial {
namespace {

struct Objective {
  double logQ = 0.0;
  std::vector<double> grad;
};

// Per-cell weight sums that do not depend on the profile.
struct CellWeights {
  std::vector<double> slope;  // sum_k w_k r_k^{n-1}
  std::vector<double> bulk;   // w_k r_k^{n-1} per Gauss point
  std::vector<double> henon;  // w_k r_k^{alpha+n-1} per Gauss point
  std::vector<double> phi1;   // local coordinate of each Gauss point
};

CellWeights cellWeights(const RadialGrid& grid, const ProblemParams& pp) {
  CellWeights cw;
  cw.bulk = grid.measureWeights(pp.n - 1);
  cw.henon = grid.measureWeights(pp.alpha + pp.n - 1);
  cw.slope.assign(grid.cells(), 0.0);
  cw.phi1.resize(grid.quadPoints().size());
  const auto nodes = grid.nodes();
  const auto pts = grid.quadPoints();
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    for (int k = 0; k < RadialGrid::kGaussPoints; ++k) {
      const std::size_t i = c * RadialGrid::kGaussPoints + k;
      cw.slope[c] += cw.bulk[i];
      cw.phi1[i] = (pts[i] - nodes[c]) / (nodes[c + 1] - nodes[c]);
    }
  }
  return cw;
}

Objective evaluate(std::span<const double> u, const RadialGrid& grid, const CellWeights& cw,
                   const ProblemParams& pp, bool withGradient) {
  const double p = pp.p, q = pp.q;
  const auto nodes = grid.nodes();
  double num = 0.0;
  double den = 0.0;
  std::vector<double> gNum(withGradient ? u.size() : 0, 0.0);
  std::vector<double> gDen(withGradient ? u.size() : 0, 0.0);
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    const double h = nodes[c + 1] - nodes[c];
    const double s = (u[c + 1] - u[c]) / h;
    num += cw.slope[c] * std::pow(std::abs(s), p);
    if (withGradient) {
      const double ds = cw.slope[c] * p * std::copysign(std::pow(std::abs(s), p - 1.0), s) / h;
      gNum[c + 1] += ds;
      gNum[c] -= ds;
    }
    for (int k = 0; k < RadialGrid::kGaussPoints; ++k) {
      const std::size_t i = c * RadialGrid::kGaussPoints + k;
      const double t = cw.phi1[i];
      const double val = (1.0 - t) * u[c] + t * u[c + 1];
      const double av = std::abs(val);
      num += cw.bulk[i] * std::pow(av, p);
      den += cw.henon[i] * std::pow(av, q);
      if (withGradient) {
        const double dn = cw.bulk[i] * p * std::copysign(std::pow(av, p - 1.0), val);
        const double dd = cw.henon[i] * q * std::copysign(std::pow(av, q - 1.0), val);
        gNum[c] += dn * (1.0 - t);
        gNum[c + 1] += dn * t;
        gDen[c] += dd * (1.0 - t);
        gDen[c + 1] += dd * t;
      }
    }
  }
  const double measS = sphereMeasure(pp.n);
  Objective obj;
  obj.logQ = std::log(measS * num) - p / q * std::log(measS * den);
  if (withGradient) {
    obj.grad.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      obj.grad[i] = gNum[i] / num - p / q * gDen[i] / den;
    }
  }
  return obj;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Diagonal of the p = 2 stiffness + mass matrix, used as L-BFGS metric.
std::vector<double> preconditioner(const RadialGrid& grid, const CellWeights& cw) {
  std::vector<double> d(grid.size(), 0.0);
  const auto nodes = grid.nodes();
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    const double h = nodes[c + 1] - nodes[c];
    d[c] += cw.slope[c] / (h * h);
    d[c + 1] += cw.slope[c] / (h * h);
    for (int k = 0; k < RadialGrid::kGaussPoints; ++k) {
      const std::size_t i = c * RadialGrid::kGaussPoints + k;
      const double t = cw.phi1[i];
      d[c] += cw.bulk[i] * (1.0 - t) * (1.0 - t);
      d[c + 1] += cw.bulk[i] * t * t;
    }
  }
  return d;
}

}  // namespace

double piecewiseLinearQuotient(std::span<const double> nodeValues, const RadialGrid& grid,
                               const ProblemParams& pp) {
  const CellWeights cw = cellWeights(grid, pp);
  return std::exp(evaluate(nodeValues, grid, cw, pp, false).logQ);
}

OracleResult minimizeQRadialOracle(const ProblemParams& pp, GridPtr grid,
                                   const OracleOptions& options) {
  pp.validate();
  require(grid && grid->dimension() == pp.n, "grid dimension must match n");
  const RadialGrid& g = *grid;
  const CellWeights cw = cellWeights(g, pp);
  const std::size_t dim = g.size();
  const std::vector<double> diag = preconditioner(g, cw);

  std::vector<double> u(dim, 1.0);
  Objective cur = evaluate(u, g, cw, pp, true);
  // Scale the metric to the objective (log Num normalizes by Num).
  const double num0 = std::accumulate(cw.bulk.begin(), cw.bulk.end(), 0.0);
  std::vector<double> invDiag(dim);
  for (std::size_t i = 0; i < dim; ++i) invDiag[i] = num0 / diag[i];

  std::deque<std::vector<double>> sHist;
  std::deque<std::vector<double>> yHist;
  std::deque<double> rhoHist;

  OracleResult out;
  out.history.push_back(std::exp(cur.logQ));
  int stall = 0;
  bool resetOnce = false;
  for (int iter = 0; iter < options.maxIterations; ++iter) {
    // Two-loop recursion with diagonal initial metric.
    std::vector<double> dir = cur.grad;
    std::vector<double> alphaCoef(sHist.size());
    for (std::size_t j = sHist.size(); j-- > 0;) {
      alphaCoef[j] = rhoHist[j] * dot(sHist[j], dir);
      for (std::size_t i = 0; i < dim; ++i) dir[i] -= alphaCoef[j] * yHist[j][i];
    }
    double gamma = 1.0;
    if (!sHist.empty()) {
      const auto& s = sHist.back();
      const auto& y = yHist.back();
      double yHy = 0.0;
      for (std::size_t i = 0; i < dim; ++i) yHy += y[i] * y[i] * invDiag[i];
      gamma = dot(s, y) / yHy;
    }
    for (std::size_t i = 0; i < dim; ++i) dir[i] *= gamma * invDiag[i];
    for (std::size_t j = 0; j < sHist.size(); ++j) {
      const double beta = rhoHist[j] * dot(yHist[j], dir);
      for (std::size_t i = 0; i < dim; ++i) dir[i] += sHist[j][i] * (alphaCoef[j] - beta);
    }
    for (double& x : dir) x = -x;

    double slope = dot(cur.grad, dir);
    if (!(slope < 0.0)) {
      sHist.clear();
      yHist.clear();
      rhoHist.clear();
      for (std::size_t i = 0; i < dim; ++i) dir[i] = -invDiag[i] * cur.grad[i];
      slope = dot(cur.grad, dir);
    }

    // Cap the first trial so no node moves by more than its own size.
    double t = 1.0;
    double maxRel = 0.0;
    for (std::size_t i = 0; i < dim; ++i) maxRel = std::max(maxRel, std::abs(dir[i]) / u[i]);
    if (maxRel > 0.5) t = 0.5 / maxRel;

    std::vector<double> trial(dim);
    Objective next;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = std::max(u[i] + t * dir[i], options.floor);
      next = evaluate(trial, g, cw, pp, false);
      if (next.logQ <= cur.logQ + 1e-4 * t * slope && next.logQ < cur.logQ) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (sHist.empty() || resetOnce) {
        out.converged = true;
        break;
      }
      resetOnce = true;
      sHist.clear();
      yHist.clear();
      rhoHist.clear();
      continue;
    }
    resetOnce = false;
    next = evaluate(trial, g, cw, pp, true);

    std::vector<double> s(dim);
    std::vector<double> y(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      s[i] = trial[i] - u[i];
      y[i] = next.grad[i] - cur.grad[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-300) {
      sHist.push_back(std::move(s));
      yHist.push_back(std::move(y));
      rhoHist.push_back(1.0 / sy);
      if (static_cast<int>(sHist.size()) > options.memory) {
        sHist.pop_front();
        yHist.pop_front();
        rhoHist.pop_front();
      }
    }
    const double decrease = cur.logQ - next.logQ;
    u.swap(trial);
    cur = std::move(next);
    out.history.push_back(std::exp(cur.logQ));
    out.iterations = iter + 1;
    stall = decrease <= options.relTol * std::max(1.0, std::abs(cur.logQ)) ? stall + 1 : 0;
    if (stall >= 5) {
      out.converged = true;
      break;
    }
  }

  out.mu = std::exp(cur.logQ);
  RadialFunction prof = piecewiseLinear(grid, std::move(u));
  prof.scale(1.0 / w1pNorm(prof, pp.p));
  out.v = std::move(prof);
  return out;
}

}  // namespace henon::radial
