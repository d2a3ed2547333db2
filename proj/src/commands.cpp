#include "henon/commands.hpp"

#include <cmath>
#include <limits>

#include "henon/errors.hpp"
#include "henon/henon_radial.hpp"
#include "henon/second_variation.hpp"
#include "henon/special.hpp"
#include "henon/stability.hpp"
#include "henon/steklov.hpp"

namespace henon::commands {
namespace {

using report::scalar;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Error estimate from two evaluations; never reported below rounding level.
double spread(double a, double b) {
  return std::max(std::abs(a - b), 4.0 * kEps * std::max(std::abs(a), std::abs(b)));
}

// Refinement level used for the a-posteriori estimate of grid-dependent values.
int companionLevel(int refine) { return refine > 1 ? refine - 1 : refine + 1; }

void checkRefine(int refine) { require(refine >= 1 && refine <= 12, "refine must be in [1, 12]"); }
void checkTol(double tol) { require(tol > 0.0 && tol < 1e-2, "tol must be in (0, 1e-2)"); }

radial::Options radialOptions(double tol) {
  radial::Options o;
  o.tol = tol;
  return o;
}

}  // namespace

Json toJson(const SteklovArgs& a) {
  return {{"n", a.n}, {"p", a.p}, {"refine", a.refine}, {"tol", a.tol},
          {"bessel_check", a.besselCheck}};
}

Json toJson(const RadialArgs& a) {
  return {{"n", a.n},           {"p", a.p},         {"q", a.q},
          {"alpha", a.alpha},   {"refine", a.refine}, {"tol", a.tol},
          {"oracle", a.oracle}, {"profile_out", a.profileOut}};
}

Json toJson(const SecondVariationArgs& a) {
  return {{"n", a.n},         {"p", a.p},           {"q", a.q},
          {"alpha", a.alpha}, {"harmonic", a.harmonic}, {"refine", a.refine},
          {"tol", a.tol},     {"eigenprofile_out", a.eigenprofileOut}};
}

Json toJson(const StabilityArgs& a) {
  Json j{{"n", a.n}, {"p", a.p}};
  j["q"] = a.q ? Json(*a.q) : Json(nullptr);
  return j;
}

Json toJson(const AppendixArgs& a) { return {{"out", a.out}}; }

Json runSteklov(const SteklovArgs& args) {
  require(args.n >= 3, "n must be at least 3");
  require(args.p >= 2.0, "p must be at least 2");
  checkRefine(args.refine);
  checkTol(args.tol);
  Json rec = report::makeRecord("steklov", toJson(args));

  steklov::Options opts;
  opts.tol = args.tol;
  const auto sol = steklov::solveSteklov(args.n, args.p, buildGrid(args.n, args.refine, 0.0), opts);
  steklov::Options fine = opts;
  fine.tol = args.tol * 1e-2;
  const double lambdaFine = steklov::lambda(args.n, args.p, fine);
  const double lambdaTol = spread(sol.lambda, lambdaFine);

  auto& r = rec["results"];
  r["lambdaP"] = scalar(sol.lambda, lambdaTol);
  r["phi0"] = scalar(sol.phi0, lambdaTol);
  r["phi1"] = scalar(sol.phi1, lambdaTol);
  r["measS"] = scalar(sol.measS, 4.0 * kEps * sol.measS);
  r["upper_bound"] = Json::object();
  if (args.n >= 3 && args.p <= args.n) {
    const double bound = (1.0 - stability::computeIpn(args.n, args.p)) / args.n;
    r["upper_bound"] = {{"value", bound}, {"tol", 1e-12}, {"holds", sol.lambda < bound}};
  }
  const double closed = steklov::minFpClosedForm(sol);
  r["minFp_closed_form"] = scalar(closed, lambdaTol * std::abs(closed) / sol.lambda * 4.0);
  const double numeric = steklov::minFpNumeric(sol).value;
  const auto coarse = steklov::solveSteklov(
      args.n, args.p, buildGrid(args.n, companionLevel(args.refine), 0.0), opts);
  r["minFp_numeric"] = scalar(numeric, spread(numeric, steklov::minFpNumeric(coarse).value));

  if (args.besselCheck) {
    require(args.p == 2.0, "--bessel-check needs p = 2");
    const double bessel = steklov::besselLambda2(args.n);
    r["bessel"] = {{"lambda2", scalar(bessel, 1e-14)},
                   {"relative_difference", std::abs(sol.lambda - bessel) / bessel}};
  }
  rec["diagnostics"] = {{"integration_steps", sol.steps}, {"grid_nodes", sol.phi.grid->size()}};
  return rec;
}

Json runRadial(const RadialArgs& args) {
  checkRefine(args.refine);
  checkTol(args.tol);
  const radial::ProblemParams pp{args.n, args.p, args.q, args.alpha};
  Json rec = report::makeRecord("radial", toJson(args));

  const auto opts = radialOptions(args.tol);
  const auto grid = buildGrid(args.n, args.refine, args.alpha);
  const auto sol = radial::solveRadial(pp, grid, opts);
  const auto alt = radial::solveRadial(pp, buildGrid(args.n, companionLevel(args.refine), args.alpha), opts);
  const double quotient = radial::radialQuotient(sol.v, pp);
  // Grid spread plus the gap to the directly quadratured quotient, which
  // carries the integrator error.
  const double muTol = spread(sol.mu, alt.mu) + std::abs(quotient - sol.mu);

  auto& r = rec["results"];
  r["mu"] = scalar(sol.mu, muTol);
  r["quotient"] = scalar(quotient, muTol);
  r["v0"] = scalar(sol.v.values.front(), spread(sol.v.values.front(), alt.v.values.front()));
  r["v1"] = scalar(sol.v.values.back(), spread(sol.v.values.back(), alt.v.values.back()));
  r["w0"] = scalar(sol.d0, spread(sol.d0, alt.d0));
  r["kappa"] = sol.kappa;
  r["w_norm"] = sol.wNorm;
  // mu^{q/p} c^{q-p} reproduces kappa when c = 1/||w||.
  const double invariant = std::pow(sol.mu, args.q / args.p) * std::pow(sol.wNorm, args.p - args.q);
  r["scaling_invariant"] = {{"value", invariant}, {"expected", sol.kappa}};
  r["residual"] = radial::profileResidual(sol.v, sol.wNorm);
  if (args.alpha > 0.0) {
    const double lam = steklov::lambda(args.n, args.p);
    const double measS = sphereMeasure(args.n);
    const double rho =
        sol.mu / (std::pow(args.alpha + args.n, args.p / args.q) * std::pow(measS, 1.0 - args.p / args.q) * lam);
    r["rho"] = scalar(rho, muTol / sol.mu * rho);
  }

  if (args.oracle) {
    const auto o = radial::minimizeQRadialOracle(pp, grid);
    double l2 = 0.0;
    const auto w = grid->measureWeights(args.n - 1);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double d = o.v.quadValue(i) - sol.v.quadValue(i);
      l2 += w[i] * d * d;
    }
    r["oracle"] = {{"muVar", o.mu},
                   {"relative_difference", (o.mu - sol.mu) / sol.mu},
                   {"l2_distance", std::sqrt(sphereMeasure(args.n) * l2)},
                   {"iterations", o.iterations},
                   {"converged", o.converged}};
  }

  if (!args.profileOut.empty()) {
    report::writeCsv(args.profileOut, report::profileTable(sol.v, sol.nodeFlux));
    rec["files"]["profile"] = args.profileOut;
  }
  rec["diagnostics"] = {{"shooting_residual", sol.shootRes},
                        {"roots_found", sol.rootsFound},
                        {"shots", sol.shots},
                        {"grid_nodes", grid->size()}};
  return rec;
}

Json runSecondVariation(const SecondVariationArgs& args) {
  checkRefine(args.refine);
  checkTol(args.tol);
  require(args.harmonic >= 1, "harmonic must be >= 1");
  const radial::ProblemParams pp{args.n, args.p, args.q, args.alpha};
  Json rec = report::makeRecord("second-variation", toJson(args));

  secondvar::AnalyzeOptions opts;
  opts.harmonic = args.harmonic;
  opts.refinement = args.refine;
  opts.radial = radialOptions(args.tol);
  const auto rep = secondvar::analyze(pp, opts);
  secondvar::AnalyzeOptions altOpts = opts;
  altOpts.refinement = companionLevel(args.refine);
  const auto alt = secondvar::analyze(pp, altOpts);
  const auto props = secondvar::checkEigenprofileProperties(rep);

  auto& r = rec["results"];
  r["sigma"] = scalar(rep.sigma, spread(rep.sigma, alt.sigma));
  r["tau"] = scalar(rep.tau, spread(rep.tau, alt.tau));
  r["lambda_pqa"] = rep.lambdaPQA;
  r["positive"] = rep.positive;
  r["r0"] = rep.r0;
  const double lam = steklov::lambda(args.n, args.p);
  const double k = stability::computeK(args.n, args.p, args.q, lam);
  r["K"] = k;
  r["K_relative"] = k / stability::kScale(args.n, args.p, lam);
  r["sign_matches_K"] = (rep.sigma > 0.0) == (k > 0.0);
  r["eigenprofile"] = {{"monotone", props.monotone},
                       {"min_interior_derivative", props.minInteriorDerivative},
                       {"bound_ratio", props.boundRatio},
                       {"near_zero_slope", std::isfinite(props.nearZeroSlope) ? Json(props.nearZeroSlope) : Json(nullptr)},
                       {"predicted_slope", props.predictedSlope},
                       {"variational_slope", props.variationalSlope},
                       {"diagnostic_only", props.diagnosticOnly}};

  if (!args.eigenprofileOut.empty()) {
    report::writeCsv(args.eigenprofileOut, report::profileTable(rep.h));
    rec["files"]["eigenprofile"] = args.eigenprofileOut;
  }
  rec["diagnostics"] = {{"dense_fallback", rep.fallback},
                        {"mu", rep.mu},
                        {"grid_nodes", rep.h.grid->size()}};
  return rec;
}

Json runStability(const StabilityArgs& args) {
  require(args.n >= 3, "n must be at least 3");
  require(args.p >= 2.0 && args.p < args.n, "p must satisfy 2 <= p < n");
  Json rec = report::makeRecord("stability", toJson(args));
  const double lam = steklov::lambda(args.n, args.p);
  steklov::Options fine;
  fine.tol = 1e-12;
  const double lamTol = spread(lam, steklov::lambda(args.n, args.p, fine));
  const auto pt = stability::stabilityPoint(args.n, args.p, args.q.value_or(args.p), lam);

  auto& r = rec["results"];
  r["lambdaP"] = scalar(lam, lamTol);
  if (args.q) {
    require(*args.q > args.p, "q must exceed p");
    r["K"] = scalar(pt.K, std::abs(stability::computeK(args.n, args.p, *args.q, lam + lamTol) - pt.K));
  } else {
    r["K_at_q_equals_p"] = pt.K;
  }
  const auto qloc = stability::findQloc(args.n, args.p);
  r["q_loc"] = {{"value", qloc.value}, {"tol", 1e-6}, {"beyond_critical", qloc.beyondCritical},
                {"p_star", args.n * args.p / (args.n - args.p)}};
  if (args.n >= 4) {
    const auto ploc = stability::findPloc(args.n);
    r["p_loc"] = {{"value", ploc.value}, {"tol", 1e-6}, {"capped", ploc.capped}};
  } else {
    r["p_loc"] = nullptr;
  }
  r["kappa"] = pt.kappa;
  r["Ipn"] = scalar(pt.Ipn, 1e-12);
  r["tpn"] = pt.tpn;
  r["taupn"] = pt.taupn;
  r["beta"] = pt.beta;
  const auto chain = stability::verifyAppendixChain(args.n, args.p, lam);
  Json links = Json::array();
  for (const auto& l : chain.links) {
    links.push_back({{"name", l.name}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"margin", l.margin},
                     {"holds", l.holds}});
  }
  r["chain"] = {{"all_hold", chain.allHold}, {"links", links}};
  return rec;
}

Json runAppendixTable(const AppendixArgs& args) {
  Json rec = report::makeRecord("appendix-table", toJson(args));
  const auto rows = stability::emitAppendixTable();
  Json out = Json::array();
  report::Table table;
  table.header = {"k", "tk", "Gtilde", "bound", "holds"};
  table.decimals = {0, 2, 4, 1, 0};
  bool all = true;
  for (const auto& row : rows) {
    const double shown = stability::roundHalfEven(row.Gtilde, 4);
    out.push_back({{"k", row.k},
                   {"tk", row.tk},
                   {"Gtilde", scalar(row.Gtilde, 1e-13)},
                   {"Gtilde_4dp", shown},
                   {"bound", row.bound},
                   {"holds", row.holds}});
    table.rows.push_back({double(row.k), row.tk, shown, row.bound, row.holds ? 1.0 : 0.0});
    all = all && row.holds;
  }
  rec["results"] = {{"rows", out}, {"all_hold", all}};
  if (!args.out.empty()) {
    report::writeCsv(args.out, table);
    rec["files"]["table"] = args.out;
  }
  return rec;
}

}  // namespace henon::commands
