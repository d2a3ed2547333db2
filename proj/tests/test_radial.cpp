#include <cmath>

#include "doctest.h"
#include "henon/errors.hpp"
#include "henon/grid.hpp"
#include "henon/henon_radial.hpp"
#include "henon/special.hpp"
#include "henon/steklov.hpp"

using namespace henon;
using radial::ProblemParams;

namespace {

radial::HenonSolution solve(int n, double p, double q, double alpha, int ref = 4) {
  return radial::solveRadial(ProblemParams{n, p, q, alpha}, buildGrid(n, ref, alpha));
}

}  // namespace

TEST_SUITE("radial") {

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(ProblemParams({4, 2.0, 3.0, 100.0}).validate());
  CHECK_THROWS_AS(ProblemParams({4, 4.0, 5.0, 1.0}).validate(), InputError);
  CHECK_THROWS_AS(ProblemParams({4, 1.5, 3.0, 1.0}).validate(), InputError);
  CHECK_THROWS_AS(ProblemParams({4, 2.0, 2.0, 1.0}).validate(), InputError);
  CHECK_THROWS_AS(ProblemParams({4, 2.0, 3.0, -1.0}).validate(), InputError);
  const ProblemParams pp{4, 2.0, 3.0, 10.0};
  CHECK(pp.pStar() == doctest::Approx(4.0));
  CHECK(pp.pStarStar() == doctest::Approx(3.0));
  CHECK(pp.qUpper() == doctest::Approx(14.0));
  CHECK_THROWS_AS(ProblemParams({4, 2.0, 14.0, 10.0}).validate(), InputError);
}

TEST_CASE("solution invariants") {
  const ProblemParams cases[] = {{4, 2.0, 3.0, 100.0}, {4, 2.5, 3.0, 200.0}, {5, 3.0, 3.5, 150.0}};
  for (const auto& pp : cases) {
    CAPTURE(pp.p);
    CAPTURE(pp.alpha);
    const auto sol = radial::solveRadial(pp, buildGrid(pp.n, 4, pp.alpha));
    CHECK(std::abs(radial::w1pNorm(sol.v, pp.p) - 1.0) < 1e-8);
    CHECK(std::abs(radial::radialQuotient(sol.v, pp) - sol.mu) < 1e-6 * sol.mu);
    for (std::size_t i = 1; i + 1 < sol.v.derivatives.size(); ++i) CHECK(sol.v.derivatives[i] > 0.0);
    const double inv = std::pow(sol.mu, pp.q / pp.p) * std::pow(sol.wNorm, pp.p - pp.q);
    CHECK(std::abs(inv - sol.kappa) < 1e-10 * sol.kappa);
    CHECK(std::abs(sol.nodeFlux.back()) < 1e-8);
    CHECK(sol.rootsFound >= 1);
  }
}

TEST_CASE("level approaches the Steklov scaling") {
  const int n = 4;
  const double p = 2.0, q = 3.0, alpha = 100.0;
  const auto sol = solve(n, p, q, alpha);
  const double scaled =
      sol.mu / (std::pow(alpha + n, p / q) * std::pow(sphereMeasure(n), 1.0 - p / q));
  const double lam = steklov::lambda(n, p);
  CHECK(std::abs(scaled - lam) < 0.1 * lam);
}

TEST_CASE("alpha = 0 gives the constant profile") {
  const int n = 4;
  const double p = 2.0;
  const double c = std::pow(sphereMeasure(n) / n, -1.0 / p);
  const auto exact = solve(n, p, p, 0.0);
  CHECK(exact.mu == doctest::Approx(1.0));
  for (double v : exact.v.values) CHECK(v == doctest::Approx(c).epsilon(1e-14));

  const auto near = solve(n, p, p + 1e-3, 0.0);
  double dev = 0.0;
  for (double v : near.v.values) dev = std::max(dev, std::abs(v - c));
  CHECK(dev < 1e-6 * c);
}

TEST_CASE("variational oracle agrees with shooting") {
  const ProblemParams pp{4, 2.0, 3.0, 50.0};
  const auto grid = buildGrid(4, 4, pp.alpha);
  const auto sol = radial::solveRadial(pp, grid);
  const auto o = radial::minimizeQRadialOracle(pp, grid);
  CHECK(o.mu >= sol.mu - 1e-4 * sol.mu);
  CHECK(std::abs(o.mu - sol.mu) < 1e-3 * sol.mu);
  for (std::size_t i = 1; i < o.history.size(); ++i) CHECK(o.history[i] <= o.history[i - 1]);
  CHECK(std::abs(radial::w1pNorm(o.v, pp.p) - 1.0) < 1e-10);
  double l2 = 0.0;
  const auto w = grid->measureWeights(pp.n - 1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double d = o.v.quadValue(i) - sol.v.quadValue(i);
    l2 += w[i] * d * d;
  }
  CHECK(std::sqrt(sphereMeasure(pp.n) * l2) <= 1e-2);
  std::vector<double> nodes(sol.v.values);
  CHECK(radial::piecewiseLinearQuotient(nodes, *grid, pp) >= o.mu * (1.0 - 1e-12));
}

TEST_CASE("limit trend and parallel reference") {
  const std::vector<double> alphas{50.0, 100.0, 200.0, 400.0};
  const auto rep = radial::checkLimitTheorem(alphas, 4, 2.0, 3.0);
  REQUIRE(rep.samples.size() == 4);
  CHECK(std::abs(rep.samples[3].rho - 1.0) < std::abs(rep.samples[1].rho - 1.0));
  CHECK(rep.samples[3].supError < rep.samples[2].supError);
  CHECK(rep.samples[2].supError < rep.samples[1].supError);
  CHECK(rep.samples[3].supError < 0.1 * rep.phiSup);
  CHECK(rep.pass);

  const auto ser = radial::checkLimitTheoremSerial(alphas, 4, 2.0, 3.0);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    CHECK(rep.samples[i].mu == ser.samples[i].mu);
    CHECK(rep.samples[i].supError == ser.samples[i].supError);
  }
  CHECK_THROWS_AS(radial::checkLimitTheorem({100.0, 200.0, 400.0}, 4, 2.0, 3.0), InputError);
}

TEST_CASE("derivative slopes near both ends") {
  const auto a = radial::checkDerivativeAsymptotics(solve(4, 2.0, 3.0, 400.0));
  CHECK(std::abs(a.boundarySlope - 1.0) < 0.05);
  CHECK(std::abs(a.innerSlope - 1.0) < 0.05);
  CHECK(a.monotone);

  const auto b = radial::checkDerivativeAsymptotics(solve(4, 3.0, 3.5, 400.0));
  CHECK(std::abs(b.boundarySlope - 0.5) < 0.05);
  CHECK(std::abs(b.innerSlope - 0.5) < 0.05);
  CHECK(b.monotone);
  CHECK(b.expected == doctest::Approx(0.5));
}

TEST_CASE("alpha must be positive for the slope check") {
  CHECK_THROWS_AS(radial::checkDerivativeAsymptotics(solve(4, 2.0, 3.0, 0.0)), InputError);
}

}  // TEST_SUITE
