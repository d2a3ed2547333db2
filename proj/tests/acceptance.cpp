// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance 3 7        selected criteria
// Exit status is 0 only when every selected criterion passes.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "henon/grid.hpp"
#include "henon/henon_radial.hpp"
#include "henon/second_variation.hpp"
#include "henon/special.hpp"
#include "henon/stability.hpp"
#include "henon/steklov.hpp"
#include "json.hpp"

using namespace henon;
using radial::ProblemParams;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures += " [failed: " + what + "]";
    }
  }
};

std::vector<std::pair<int, double>> npMatrix() {
  std::vector<std::pair<int, double>> out;
  for (int n = 3; n <= 6; ++n) {
    for (double p : {2.0, 2.5, 3.0, n - 0.5}) {
      if (p >= n) continue;
      bool dup = false;
      for (auto& [m, q] : out) dup = dup || (m == n && q == p);
      if (!dup) out.emplace_back(n, p);
    }
  }
  return out;
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

void steklovValue(Outcome& o) {
  const double lam = steklov::lambda(3, 2.0);
  const double bessel = steklov::besselLambda2(3);
  const double rel = std::abs(lam - bessel) / bessel;
  o.detail << "lambda_2(3) = " << lam << ", |shooting - Bessel|/Bessel = " << rel;
  o.require(std::abs(lam - 0.313042) <= 1e-5, "lambda within 1e-5 of 0.313042");
  o.require(rel <= 1e-8, "Bessel agreement 1e-8");
}

void steklovBound(Outcome& o) {
  double worst = -1.0;
  for (auto [n, p] : npMatrix()) {
    const double lam = steklov::lambda(n, p);
    const double bound = (1.0 - stability::computeIpn(n, p)) / n;
    worst = std::max(worst, lam - bound);
    if (!(lam < bound)) o.require(false, "bound at n=" + std::to_string(n) + " p=" + std::to_string(p));
  }
  o.detail << npMatrix().size() << " points, max(lambda - bound) = " << worst;
}

void appendixTable(Outcome& o) {
  const double printed[] = {1.1036, 1.2142, 1.3310, 1.4536, 1.5813, 1.7137, 1.8501,
                            1.9903, 2.1337, 2.2796, 2.4284, 2.5791, 2.7316, 2.8855,
                            3.0407, 3.1970, 3.3541, 3.5119, 3.6703, 3.8291};
  const auto rows = stability::emitAppendixTable();
  double worst = 0.0;
  int worstRow = 0;
  for (const auto& r : rows) {
    const double d = std::abs(r.Gtilde - printed[r.k - 1]);
    if (d > worst) {
      worst = d;
      worstRow = r.k;
    }
    if (d > 2e-4) {
      std::ostringstream s;
      s.precision(7);
      s << "row " << r.k << ": computed " << r.Gtilde << " vs table " << printed[r.k - 1];
      o.require(false, s.str());
    }
    if (!r.holds) o.require(false, "inequality at row " + std::to_string(r.k));
  }
  o.detail << "max |computed - table| = " << worst << " at row " << worstRow;
}

void minFpOracle(Outcome& o) {
  const std::pair<int, double> cases[] = {{3, 2.0}, {4, 2.0}, {4, 2.5}, {5, 3.0}};
  double worstRel = 0.0, worstCorr = 1.0;
  for (auto [n, p] : cases) {
    const auto sol = steklov::solveSteklov(n, p, buildGrid(n, 4, 0.0));
    const auto num = steklov::minFpNumeric(sol);
    const double closed = steklov::minFpClosedForm(sol);
    worstRel = std::max(worstRel, std::abs(num.value - closed) / std::abs(closed));
    worstCorr = std::min(worstCorr, correlation(num.minimizer.values, sol.phi.derivatives));
  }
  o.detail << "max relative gap = " << worstRel << ", min correlation with phi' = " << worstCorr;
  o.require(worstRel <= 1e-3, "closed form within 1e-3");
  o.require(worstCorr >= 0.999, "correlation >= 0.999");
}

void kSigns(Outcome& o) {
  const double k3 = stability::computeK(3, 2.0, 6.0, steklov::lambda(3, 2.0));
  const double k4 = stability::computeK(4, 2.0, 4.0, steklov::lambda(4, 2.0));
  const double k5 = stability::computeK(5, 2.0, 10.0 / 3.0, steklov::lambda(5, 2.0));
  o.require(k3 < 0.0, "K(3,2,6) < 0");
  o.require(k4 > 0.0, "K(4,2,4) > 0");
  o.require(k5 > 0.0, "K(5,2,10/3) > 0");
  double minGap = 1e300;
  for (auto [n, p] : npMatrix()) {
    const double gap = stability::findQloc(n, p).value - p;
    minGap = std::min(minGap, gap);
    if (!(gap > 0.0)) o.require(false, "q_loc > p at n=" + std::to_string(n));
  }
  const auto ploc = stability::findPloc(4);
  o.require(ploc.value > 2.0, "p_loc(4) > 2");
  o.detail << "K(3,2,6) = " << k3 << ", K(4,2,4) = " << k4 << ", K(5,2,10/3) = " << k5
           << ", min(q_loc - p) = " << minGap << ", p_loc(4) = " << ploc.value;
}

void limitTrend(Outcome& o) {
  for (double p : {2.0, 2.5}) {
    const auto rep = radial::checkLimitTheorem({50.0, 100.0, 200.0, 400.0}, 4, p, 3.0);
    const auto& s = rep.samples;
    const double e100 = std::abs(s[1].rho - 1.0), e200 = std::abs(s[2].rho - 1.0),
                 e400 = std::abs(s[3].rho - 1.0);
    o.detail << "p=" << p << ": |rho-1| = " << e100 << ", " << e200 << ", " << e400 << "; ";
    o.require(e200 < e100 && e400 < e200, "|rho - 1| decreasing at p=" + std::to_string(p));
    o.require(e400 < 0.1, "|rho_400 - 1| < 0.1 at p=" + std::to_string(p));
  }
}

void derivativeAsymptotics(Outcome& o) {
  const ProblemParams slopes[] = {{4, 2.0, 3.0, 400.0}, {4, 3.0, 3.5, 400.0}};
  for (const auto& pp : slopes) {
    const auto sol = radial::solveRadial(pp, buildGrid(pp.n, 4, pp.alpha));
    const auto rep = radial::checkDerivativeAsymptotics(sol);
    o.detail << "p=" << pp.p << ": slope " << rep.boundarySlope << " (expected " << rep.expected
             << "); ";
    o.require(std::abs(rep.boundarySlope - rep.expected) <= 0.05,
              "boundary slope at p=" + std::to_string(pp.p));
  }
  std::size_t checked = 0;
  for (const ProblemParams base : {ProblemParams{4, 2.0, 3.0, 0.0}, ProblemParams{4, 3.0, 3.5, 0.0},
                                   ProblemParams{4, 2.5, 3.0, 0.0}}) {
    for (double alpha : {100.0, 200.0, 400.0}) {
      ProblemParams pp = base;
      pp.alpha = alpha;
      const auto sol = radial::solveRadial(pp, buildGrid(pp.n, 4, alpha));
      for (std::size_t i = 1; i + 1 < sol.v.derivatives.size(); ++i) {
        ++checked;
        if (!(sol.v.derivatives[i] > 0.0)) {
          o.require(false, "v' > 0 at alpha=" + std::to_string(alpha));
          break;
        }
      }
    }
  }
  o.detail << checked << " interior derivatives checked";
}

void secondVariation(Outcome& o) {
  secondvar::AnalyzeOptions opts;
  const ProblemParams positive[] = {{4, 2.0, 2.5, 400.0}, {4, 2.0, 3.0, 400.0},
                                    {4, 2.2, 2.3, 400.0}, {5, 2.5, 2.6, 400.0}};
  const ProblemParams extra[] = {{4, 2.0, 3.5, 400.0}, {4, 2.0, 3.9, 400.0}, {4, 3.0, 3.5, 400.0},
                                 {5, 2.0, 3.3, 400.0}, {3, 2.0, 3.0, 400.0}, {3, 2.0, 5.9, 400.0}};
  std::vector<ProblemParams> matrix(std::begin(positive), std::end(positive));
  matrix.insert(matrix.end(), std::begin(extra), std::end(extra));

  double minSigma = 1e300;
  std::size_t signChecked = 0;
  double worstRatioChange = 0.0;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    const auto& pp = matrix[i];
    const auto rep = secondvar::analyze(pp, opts);
    const std::string tag = "(" + std::to_string(pp.n) + "," + std::to_string(pp.p) + "," +
                            std::to_string(pp.q) + ")";
    if (i < std::size(positive)) {
      minSigma = std::min(minSigma, rep.sigma);
      o.require(rep.sigma > 0.0, "sigma > 0 at " + tag);
      const auto props = secondvar::checkEigenprofileProperties(rep);
      o.require(props.monotone, "h' > 0 at " + tag);
      secondvar::AnalyzeOptions fine = opts;
      fine.refinement = opts.refinement + 1;
      const auto refined = secondvar::checkEigenprofileProperties(secondvar::analyze(pp, fine));
      const double change = std::abs(refined.boundRatio - props.boundRatio) / refined.boundRatio;
      worstRatioChange = std::max(worstRatioChange, change);
      o.require(change < 0.1, "r h'/h(1) stable at " + tag);
    }
    const double lam = steklov::lambda(pp.n, pp.p);
    const double k = stability::computeK(pp.n, pp.p, pp.q, lam);
    if (std::abs(k) > 0.1 * stability::kScale(pp.n, pp.p, lam)) {
      ++signChecked;
      o.require((rep.sigma > 0.0) == (k > 0.0), "sign(sigma) = sign(K) at " + tag);
    }
  }
  o.detail << "min sigma over the positive set = " << minSigma << ", sign checks = " << signChecked
           << "/" << matrix.size() << ", max refinement change of sup r h'/h(1) = "
           << worstRatioChange;
}

void oracleEquivalence(Outcome& o) {
  const ProblemParams pp{4, 2.0, 3.0, 50.0};
  const auto grid = buildGrid(4, 4, pp.alpha);
  const auto sol = radial::solveRadial(pp, grid);
  const auto var = radial::minimizeQRadialOracle(pp, grid);
  const double rel = std::abs(var.mu - sol.mu) / sol.mu;
  o.require(rel <= 1e-3, "muVar within 1e-3");

  std::vector<double> nodes(16);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s = static_cast<double>(i) / 15.0;
    nodes[i] = s * (2.0 - s);
  }
  const auto small = std::make_shared<const RadialGrid>(4, nodes);
  const ProblemParams sp{4, 2.0, 3.0, 20.0};
  const auto forms = secondvar::assembleReducedForms(radial::solveRadial(sp, small));
  const double lowest = secondvar::minRayleigh(forms.a, forms.b).value;
  const double dense = secondvar::denseEigenvalues(forms.a, forms.b).front();
  const double gap = std::abs(lowest - dense);
  o.require(gap <= 1e-12, "16-node pencil within 1e-12");
  o.detail << "mu relative gap = " << rel << ", 16-node eigenvalue gap = " << gap;
}

std::string runLab(const std::string& args, int& code) {
  const std::string cmd = std::string(HENON_LAB_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

void determinism(Outcome& o) {
  const char* commands[] = {"steklov --n 4 --p 2.5",
                            "radial --n 4 --p 2 --q 3 --alpha 100 --oracle",
                            "second-variation --n 4 --p 2.2 --q 2.3 --alpha 200 --refine 3",
                            "stability --n 5 --p 2.5 --q 3", "appendix-table"};
  int identical = 0;
  for (const char* c : commands) {
    int c1 = 0, c2 = 0;
    const auto a = runLab(c, c1);
    const auto b = runLab(c, c2);
    if (c1 != 0 || c2 != 0) {
      o.require(false, std::string("exit status of ") + c);
      continue;
    }
    const auto pa = nlohmann::ordered_json::parse(a).at("payload").dump();
    const auto pb = nlohmann::ordered_json::parse(b).at("payload").dump();
    if (pa == pb) {
      ++identical;
    } else {
      o.require(false, std::string("identical payloads for ") + c);
    }
  }
  o.detail << identical << "/" << std::size(commands) << " commands bit-identical";
}

struct Criterion {
  int id;
  const char* name;
  double limitSeconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "Steklov value", 1.0, steklovValue},
      {2, "Steklov bound", 10.0, steklovBound},
      {3, "appendix table", 1.0, appendixTable},
      {4, "closed-form oracle", 30.0, minFpOracle},
      {5, "K-sign reproduction", 60.0, kSigns},
      {6, "large-alpha limit trend", 120.0, limitTrend},
      {7, "derivative asymptotics", 60.0, derivativeAsymptotics},
      {8, "second-variation positivity", 300.0, secondVariation},
      {9, "oracle equivalence", 60.0, oracleEquivalence},
      {10, "determinism", 0.0, determinism},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  bool allPass = true;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    Outcome o;
    o.detail.precision(10);
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limitSeconds > 0.0 && secs > c.limitSeconds) {
      o.require(false, "runtime limit " + std::to_string(c.limitSeconds) + " s");
    }
    allPass = allPass && o.pass;
    std::printf("criterion %2d %-28s %s  (%.2f s) %s%s\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                secs, o.detail.str().c_str(), o.failures.c_str());
    std::fflush(stdout);
  }
  return allPass ? 0 : 1;
}
