#include "henon/second_variation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "henon/assembly.hpp"
#include "henon/errors.hpp"
#include "henon/roots.hpp"
#include "henon/special.hpp"

namespace henon::secondvar {
namespace {

double gradWeight(double dv, double p) { return std::pow(std::abs(dv), p - 2.0); }

double bNorm(const SymTridiag& b, const std::vector<double>& x) { return std::sqrt(b.quadratic(x)); }

Eigenpair denseMin(const SymTridiag& a, const SymTridiag& b) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd da = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd db = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    da(i, i) = a.diag[i];
    db(i, i) = b.diag[i];
    if (i + 1 < n) {
      da(i, i + 1) = da(i + 1, i) = a.off[i];
      db(i, i + 1) = db(i + 1, i) = b.off[i];
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(da, db);
  if (es.info() != Eigen::Success) throw SolverError("dense generalized eigensolve failed");
  Eigenpair out;
  out.value = es.eigenvalues()(0);
  const Eigen::VectorXd v = es.eigenvectors().col(0);
  out.vector.assign(v.data(), v.data() + n);
  out.fallback = true;
  return out;
}

SecondVariationReport fromForms(const radial::HenonSolution& sol, const ReducedForms& forms) {
  SecondVariationReport rep;
  rep.params = sol.params;
  rep.harmonic = forms.harmonic;
  rep.mu = sol.mu;
  const Eigenpair eig = minRayleigh(forms.a, forms.b);
  rep.sigma = eig.value;
  rep.fallback = eig.fallback;
  Eigenpair margin = minRayleigh(forms.a, forms.positive);
  rep.tau = margin.value;
  rep.lambdaPQA = std::max(0.0, -rep.sigma);
  rep.positive = rep.sigma > 0.0;
  rep.hSigma = piecewiseLinear(sol.v.grid, eig.vector);
  rep.h = piecewiseLinear(sol.v.grid, std::move(margin.vector));
  rep.r0 = potentialProfile(sol, rep.lambdaPQA, forms.harmonic).signChanges;
  return rep;
}

}  // namespace

double angularFactor(int n, int harmonic) {
  require(harmonic >= 1, "harmonic index must be >= 1");
  return static_cast<double>(harmonic) * (harmonic + n - 2);
}

ReducedForms assembleReducedForms(const radial::HenonSolution& sol, int harmonic) {
  const auto& pp = sol.params;
  const RadialGrid& grid = *sol.v.grid;
  const double ang = angularFactor(pp.n, harmonic);
  const double p = pp.p;
  const double coupling = (pp.q - 1.0) * std::pow(sol.mu, pp.q / p);
  const auto pts = grid.quadPoints();
  const std::size_t m = pts.size();

  FormCoefficients pos, hen, unit;
  pos.grad.resize(m);
  pos.angular.resize(m);
  pos.mass.resize(m);
  hen.grad.assign(m, 0.0);
  hen.angular.assign(m, 0.0);
  hen.mass.resize(m);
  unit.grad.assign(m, 1.0);
  unit.angular.assign(m, ang);
  unit.mass.assign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double gw = gradWeight(sol.v.quadDerivative(i), p);
    const double v = sol.v.quadValue(i);
    pos.grad[i] = (p - 1.0) * gw;
    pos.angular[i] = ang * gw;
    pos.mass[i] = (p - 1.0) * std::pow(v, p - 2.0);
    hen.mass[i] = coupling * std::pow(pts[i], pp.alpha) * std::pow(v, pp.q - 2.0);
  }
  ReducedForms f;
  f.harmonic = harmonic;
  f.positive = assembleRadialForm(grid, pos);
  f.henon = assembleRadialForm(grid, hen);
  f.b = assembleRadialForm(grid, unit);
  f.a = f.positive.shifted(f.henon, 1.0);
  if (!isPositiveDefinite(f.b)) throw SolverError("constraint form B is not positive definite");
  return f;
}

SymTridiag assembleLimitForm(const steklov::SteklovSolution& phi, double boundaryCoefficient,
                             int harmonic) {
  const RadialGrid& grid = *phi.phi.grid;
  const std::size_t m = grid.quadPoints().size();
  const double p = phi.p;
  const double ang = angularFactor(phi.n, harmonic);
  FormCoefficients c;
  c.grad.resize(m);
  c.angular.resize(m);
  c.mass.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double gw = gradWeight(phi.phi.quadDerivative(i), p);
    c.grad[i] = (p - 1.0) * gw;
    c.angular[i] = ang * gw;
    c.mass[i] = (p - 1.0) * std::pow(phi.phi.quadValue(i), p - 2.0);
  }
  c.boundary = -boundaryCoefficient;
  return assembleRadialForm(grid, c);
}

double limitBoundaryCoefficient(int n, double p, double q, double lambdaP) {
  return (q - 1.0) * std::pow(lambdaP, 2.0 / p) * std::pow(sphereMeasure(n), 2.0 / p - 1.0);
}

Eigenpair minRayleigh(const SymTridiag& a, const SymTridiag& b) {
  require(a.size() == b.size() && a.size() >= 2, "pencil matrices must match");
  // Bracket the lowest eigenvalue by inertia counts.
  double lo = -1.0;
  double hi = 1.0;
  for (int k = 0; k < 200 && eigenvaluesBelow(a, b, lo) > 0; ++k) lo *= 2.0;
  for (int k = 0; k < 200 && eigenvaluesBelow(a, b, hi) == 0; ++k) hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (eigenvaluesBelow(a, b, mid) > 0 ? hi : lo) = mid;
  }
  const double sigma = 0.5 * (lo + hi);

  // Inverse iteration just below the bracketed value.
  const double shift = sigma - 1e-6 * std::max(1.0, std::abs(sigma));
  const SymTridiag shifted = a.shifted(b, shift);
  std::vector<double> x(a.size(), 1.0);
  Eigenpair out;
  double lastChange = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 50; ++it) {
    std::vector<double> y = solveTridiag(shifted, b.apply(x));
    const double nrm = bNorm(b, y);
    if (!std::isfinite(nrm) || nrm == 0.0) {
      out.inverseIterations = 0;
      break;
    }
    for (double& v : y) v /= nrm;
    if (y.back() < 0.0) {
      for (double& v : y) v = -v;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) change = std::max(change, std::abs(y[i] - x[i]));
    x.swap(y);
    out.inverseIterations = it + 1;
    // Stop at the rounding floor of the shifted solve; the residual test below decides.
    if (change < 1e-13 || (change < 1e-6 && change > 0.5 * lastChange)) break;
    lastChange = change;
  }
  bool converged = false;
  if (out.inverseIterations > 0) {
    // Componentwise backward error of A x = sigma B x.
    const auto ax = a.apply(x);
    const auto bx = b.apply(x);
    double res = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double absRow = (std::abs(a.diag[i]) + std::abs(sigma * b.diag[i])) * std::abs(x[i]);
      if (i > 0) absRow += (std::abs(a.off[i - 1]) + std::abs(sigma * b.off[i - 1])) * std::abs(x[i - 1]);
      if (i + 1 < x.size()) absRow += (std::abs(a.off[i]) + std::abs(sigma * b.off[i])) * std::abs(x[i + 1]);
      res = std::max(res, std::abs(ax[i] - sigma * bx[i]));
      scale = std::max(scale, absRow);
    }
    converged = res <= 1e-6 * scale;
  }
  if (!converged) {
    if (a.size() > 4096) throw SolverError("inverse iteration stalled on a large pencil");
    out = denseMin(a, b);
    const double nrm = bNorm(b, out.vector);
    const double sgn = out.vector.back() < 0.0 ? -1.0 : 1.0;
    for (double& v : out.vector) v *= sgn / nrm;
    return out;
  }
  out.value = sigma;
  out.vector = std::move(x);
  return out;
}

std::vector<double> denseEigenvalues(const SymTridiag& a, const SymTridiag& b) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd da = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd db = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    da(i, i) = a.diag[i];
    db(i, i) = b.diag[i];
    if (i + 1 < n) {
      da(i, i + 1) = da(i + 1, i) = a.off[i];
      db(i, i + 1) = db(i + 1, i) = b.off[i];
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(da, db, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SolverError("dense generalized eigensolve failed");
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + n};
}

PotentialProfile potentialProfile(const radial::HenonSolution& sol, double lambda, int harmonic,
                                  bool dropHenonTerm) {
  const auto& pp = sol.params;
  const double ang = angularFactor(pp.n, harmonic);
  const double coupling = dropHenonTerm ? 0.0 : (pp.q - 1.0) * std::pow(sol.mu, pp.q / pp.p);
  const auto potential = [&](double r, double v, double dv) {
    return ang * gradWeight(dv, pp.p) / (r * r) + (pp.p - 1.0) * std::pow(v, pp.p - 2.0) + lambda -
           coupling * std::pow(r, pp.alpha) * std::pow(v, pp.q - 2.0);
  };
  const auto nodes = sol.v.grid->nodes();
  PotentialProfile out;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    out.radius.push_back(nodes[i]);
    out.values.push_back(potential(nodes[i], sol.v.values[i], sol.v.derivatives[i]));
  }
  const auto atRadius = [&](double r) {
    return potential(r, sol.v.value(r), sol.v.derivative(r));
  };
  for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
    const double a = out.values[i];
    const double b = out.values[i + 1];
    if (a == 0.0) {
      out.signChanges.push_back(out.radius[i]);
    } else if ((a > 0.0) != (b > 0.0) && b != 0.0) {
      try {
        out.signChanges.push_back(brentRoot(atRadius, out.radius[i], out.radius[i + 1], 1e-14));
      } catch (const BracketError&) {
        // Interpolated values disagree with the nodal ones; keep the cell midpoint.
        out.signChanges.push_back(0.5 * (out.radius[i] + out.radius[i + 1]));
      }
    }
  }
  return out;
}

SecondVariationReport analyze(const radial::ProblemParams& params, const AnalyzeOptions& options) {
  auto grid = buildGrid(params.n, options.refinement, params.alpha);
  const radial::HenonSolution sol = radial::solveRadial(params, grid, options.radial);
  SecondVariationReport rep = analyze(sol, options.harmonic);
  rep.refinement = options.refinement;
  return rep;
}

SecondVariationReport analyze(const radial::HenonSolution& sol, int harmonic) {
  return fromForms(sol, assembleReducedForms(sol, harmonic));
}

PropertyReport checkEigenprofileProperties(const SecondVariationReport& report) {
  const auto nodes = report.h.grid->nodes();
  const auto& h = report.h.values;
  const auto& dh = report.h.derivatives;
  const double p = report.params.p;
  PropertyReport out;
  out.diagnosticOnly = report.sigma > 0.0;
  out.predictedSlope = report.lambdaPQA > 0.0 ? -1.0 / (p - 1.0) : -(p - 2.0) / (p - 1.0);
  out.variationalSlope = report.harmonic - 1.0;
  out.minInteriorDerivative = std::numeric_limits<double>::infinity();
  const double h1 = h.back();
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    out.minInteriorDerivative = std::min(out.minInteriorDerivative, dh[i]);
    out.boundRatio = std::max(out.boundRatio, nodes[i] * dh[i] / h1);
  }
  out.monotone = out.minInteriorDerivative > 0.0;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    if (nodes[i] < 1e-3 || nodes[i] > 1e-2 || !(dh[i] > 0.0)) continue;
    const double x = std::log(nodes[i]);
    const double y = std::log(dh[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++out.slopePoints;
  }
  if (out.slopePoints >= 2) {
    const double m = static_cast<double>(out.slopePoints);
    out.nearZeroSlope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  } else {
    out.nearZeroSlope = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

namespace {

std::vector<ScanRow> collectRows(const std::vector<double>& qList,
                                 const std::vector<double>& alphaList,
                                 std::vector<ScanCell> cells) {
  std::vector<ScanRow> rows;
  const std::size_t na = alphaList.size();
  for (std::size_t iq = 0; iq < qList.size(); ++iq) {
    ScanRow row;
    row.q = qList[iq];
    row.cells.assign(cells.begin() + iq * na, cells.begin() + (iq + 1) * na);
    if (!row.cells.empty()) {
      const ScanCell& last = row.cells.back();
      row.positiveAtLargestAlpha = last.error.empty() && last.positive;
      row.sigmaIncreasing = true;
      for (std::size_t k = 0; k < row.cells.size(); ++k) {
        if (!row.cells[k].error.empty()) row.sigmaIncreasing = false;
        if (k > 0 && !(row.cells[k].sigma > row.cells[k - 1].sigma)) row.sigmaIncreasing = false;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ScanCell scanCell(int n, double p, double q, double alpha, const AnalyzeOptions& options) {
  ScanCell cell;
  cell.q = q;
  cell.alpha = alpha;
  try {
    const SecondVariationReport rep = analyze(radial::ProblemParams{n, p, q, alpha}, options);
    cell.sigma = rep.sigma;
    cell.tau = rep.tau;
    cell.positive = rep.positive;
  } catch (const std::exception& e) {
    cell.error = e.what();
    cell.sigma = cell.tau = std::numeric_limits<double>::quiet_NaN();
  }
  return cell;
}

}  // namespace

std::vector<ScanRow> positivityScan(int n, double p, const std::vector<double>& qList,
                                    const std::vector<double>& alphaList,
                                    const AnalyzeOptions& options) {
  const long na = static_cast<long>(alphaList.size());
  const long total = static_cast<long>(qList.size()) * na;
  std::vector<ScanCell> cells(total);
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < total; ++k) {
    cells[k] = scanCell(n, p, qList[k / na], alphaList[k % na], options);
  }
  return collectRows(qList, alphaList, std::move(cells));
}

std::vector<ScanRow> positivityScanSerial(int n, double p, const std::vector<double>& qList,
                                          const std::vector<double>& alphaList,
                                          const AnalyzeOptions& options) {
  std::vector<ScanCell> cells;
  for (double q : qList) {
    for (double a : alphaList) cells.push_back(scanCell(n, p, q, a, options));
  }
  return collectRows(qList, alphaList, std::move(cells));
}

}  // namespace henon::secondvar
