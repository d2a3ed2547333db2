#include <cmath>
#include <memory>

#include "doctest.h"
#include "henon/errors.hpp"
#include "henon/grid.hpp"
#include "henon/second_variation.hpp"
#include "henon/stability.hpp"
#include "henon/steklov.hpp"
#include "henon/tridiag.hpp"

using namespace henon;
using radial::ProblemParams;

namespace {

secondvar::SecondVariationReport run(const ProblemParams& pp, int ref = 4) {
  secondvar::AnalyzeOptions o;
  o.refinement = ref;
  return secondvar::analyze(pp, o);
}

double quotient(const SymTridiag& a, const SymTridiag& b, std::vector<double> x, double c) {
  for (double& v : x) v *= c;
  return a.quadratic(x) / b.quadratic(x);
}

}  // namespace

TEST_SUITE("secondvar") {

TEST_CASE("B of the constant and a positive-definite A without the Hénon term") {
  for (int n : {3, 4, 6}) {
    const ProblemParams pp{n, 2.0, 3.0, 100.0};
    const auto sol = radial::solveRadial(pp, buildGrid(n, 3, pp.alpha));
    const auto f = secondvar::assembleReducedForms(sol);
    std::vector<double> ones(f.b.size(), 1.0);
    // Layer cells are ~1e-4 wide, so each row's stiffness entries cancel at ~1e4 * eps.
    CHECK(f.b.quadratic(ones) == doctest::Approx((n - 1.0) / (n - 2.0) + 1.0 / n).epsilon(1e-8));
    CHECK(isPositiveDefinite(f.positive));
    CHECK(isPositiveDefinite(f.b));
    const auto diff = f.positive.shifted(f.henon, 1.0);
    for (std::size_t i = 0; i < f.a.size(); ++i) CHECK(f.a.diag[i] == doctest::Approx(diff.diag[i]));
  }
  CHECK(secondvar::angularFactor(4, 1) == 3.0);
  CHECK(secondvar::angularFactor(3, 2) == 6.0);
}

TEST_CASE("16-node pencil against a dense eigensolver") {
  const ProblemParams pp{4, 2.0, 3.0, 20.0};
  std::vector<double> nodes(16);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double s = static_cast<double>(i) / 15.0;
    nodes[i] = s * (2.0 - s);
  }
  const auto grid = std::make_shared<const RadialGrid>(4, nodes);
  const auto sol = radial::solveRadial(pp, grid);
  const auto f = secondvar::assembleReducedForms(sol);
  REQUIRE(f.a.size() == 16);
  const auto all = secondvar::denseEigenvalues(f.a, f.b);
  const auto lowest = secondvar::minRayleigh(f.a, f.b);
  CHECK(std::abs(lowest.value - all.front()) <= 1e-12 * std::max(1.0, std::abs(all.front())));
  CHECK_FALSE(lowest.fallback);
  // Inertia counts agree with the full spectrum between well-separated pairs.
  // The upper spectrum clusters at 1 to rounding level, where counts are noise.
  for (std::size_t k = 0; k + 1 < all.size(); ++k) {
    if (all[k + 1] - all[k] < 1e-8) continue;
    const double mid = 0.5 * (all[k] + all[k + 1]);
    CHECK(eigenvaluesBelow(f.a, f.b, mid) == k + 1);
  }
  // Homogeneity of the quotient.
  for (double c : {1e-3, 1.0, 1e4}) {
    CHECK(std::abs(quotient(f.a, f.b, lowest.vector, c) - lowest.value) <=
          1e-10 * std::max(1.0, std::abs(lowest.value)));
  }
  CHECK(f.b.quadratic(lowest.vector) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(lowest.vector.back() > 0.0);
}

TEST_CASE("positive second variation at alpha = 400") {
  const ProblemParams pos[] = {
      {4, 2.0, 2.5, 400.0}, {4, 2.0, 3.0, 400.0}, {4, 2.0, 3.5, 400.0},
      {4, 2.2, 2.3, 400.0}, {5, 2.5, 2.6, 400.0}};
  for (const auto& pp : pos) {
    CAPTURE(pp.n);
    CAPTURE(pp.p);
    CAPTURE(pp.q);
    const auto rep = run(pp);
    CHECK(rep.sigma > 0.0);
    CHECK(rep.tau > 0.0);
    CHECK(rep.positive);
    CHECK(rep.lambdaPQA == 0.0);
    CHECK_FALSE(rep.fallback);
    const double k = stability::computeK(pp.n, pp.p, pp.q, steklov::lambda(pp.n, pp.p));
    CHECK(k > 0.0);
  }
}

TEST_CASE("negative second variation in three dimensions near 2*") {
  const auto rep = run({3, 2.0, 5.9, 400.0});
  CHECK(rep.sigma < 0.0);
  CHECK(rep.lambdaPQA == doctest::Approx(-rep.sigma));
  CHECK(stability::computeK(3, 2.0, 5.9, steklov::lambda(3, 2.0)) < 0.0);
}

TEST_CASE("sigma and tau coincide at p = 2") {
  const auto rep = run({4, 2.0, 3.0, 400.0});
  CHECK(std::abs(rep.sigma - rep.tau) <= 1e-10 * std::abs(rep.sigma));
}

TEST_CASE("refinement stability") {
  const auto a = run({4, 2.0, 3.0, 400.0}, 4);
  const auto b = run({4, 2.0, 3.0, 400.0}, 5);
  CHECK(std::abs(a.sigma - b.sigma) < 1e-3 * std::abs(b.sigma) + 1e-6);

  const auto c = run({4, 3.0, 3.5, 400.0}, 4);
  const auto d = run({4, 3.0, 3.5, 400.0}, 5);
  CHECK(std::abs(c.tau - d.tau) < 1e-3 * std::abs(d.tau) + 1e-6);
  // The B-normalized value keeps its sign but not its size when p > 2.
  CHECK(c.sigma > 0.0);
  CHECK(d.sigma > 0.0);
  CHECK(d.sigma < c.sigma);
}

TEST_CASE("potential has one sign change near the boundary") {
  const double alpha = 400.0;
  const auto rep = run({4, 2.5, 3.0, alpha});
  REQUIRE(rep.r0.size() == 1);
  CHECK(rep.r0[0] > 1.0 - 3.0 * std::log(alpha) / (2.0 * alpha));
  CHECK(rep.r0[0] < 1.0);
}

TEST_CASE("potential at the boundary and without the Hénon term") {
  const ProblemParams cases[] = {{4, 2.0, 3.0, 100.0}, {4, 2.5, 3.0, 200.0}, {5, 2.5, 2.6, 400.0}};
  for (const auto& pp : cases) {
    const auto sol = radial::solveRadial(pp, buildGrid(pp.n, 4, pp.alpha));
    const auto v = secondvar::potentialProfile(sol, 0.0);
    CHECK(v.values.back() < 0.0);
    CHECK(v.radius.back() == 1.0);
    const auto w = secondvar::potentialProfile(sol, 0.0, 1, true);
    for (double x : w.values) CHECK(x > 0.0);
    CHECK(w.signChanges.empty());
  }
}

TEST_CASE("eigenprofile properties") {
  for (const ProblemParams pp : {ProblemParams{4, 2.0, 3.0, 400.0}, ProblemParams{4, 3.0, 3.5, 400.0}}) {
    CAPTURE(pp.p);
    const auto coarse = run(pp, 3);
    const auto fine = run(pp, 4);
    const auto a = secondvar::checkEigenprofileProperties(coarse);
    const auto b = secondvar::checkEigenprofileProperties(fine);
    CHECK(b.monotone);
    CHECK(b.minInteriorDerivative > 0.0);
    CHECK(std::isfinite(b.boundRatio));
    CHECK(std::abs(a.boundRatio - b.boundRatio) < 0.1 * b.boundRatio);
    CHECK(b.diagnosticOnly);
    CHECK(b.slopePoints >= 3);
    CHECK(std::abs(b.nearZeroSlope - b.predictedSlope) < 0.1);
  }
}

TEST_CASE("eigenprofile slope for a negative second variation") {
  const auto rep = run({3, 2.0, 5.9, 400.0});
  const auto props = secondvar::checkEigenprofileProperties(rep);
  CHECK_FALSE(props.diagnosticOnly);
  CHECK(props.predictedSlope == doctest::Approx(-1.0));
  CHECK(std::abs(props.nearZeroSlope - props.variationalSlope) < 0.1);
}

TEST_CASE("positivity scan matches the serial reference and isolates failures") {
  secondvar::AnalyzeOptions o;
  o.refinement = 3;
  const std::vector<double> qs{1.5, 2.5, 3.0};
  const std::vector<double> as{100.0, 200.0};
  const auto par = secondvar::positivityScan(4, 2.0, qs, as, o);
  const auto ser = secondvar::positivityScanSerial(4, 2.0, qs, as, o);
  REQUIRE(par.size() == 3);
  for (std::size_t i = 0; i < par.size(); ++i) {
    REQUIRE(par[i].cells.size() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
      const double a = par[i].cells[j].sigma, b = ser[i].cells[j].sigma;
      CHECK(((std::isnan(a) && std::isnan(b)) || a == b));
      CHECK(par[i].cells[j].error == ser[i].cells[j].error);
    }
  }
  CHECK_FALSE(par[0].cells[0].error.empty());
  CHECK_FALSE(par[0].positiveAtLargestAlpha);
  CHECK(par[1].cells[1].error.empty());
  CHECK(par[1].positiveAtLargestAlpha);
  CHECK(par[2].positiveAtLargestAlpha);
}

TEST_CASE("pencil input checks") {
  SymTridiag a{{1.0}, {}};
  CHECK_THROWS_AS(secondvar::minRayleigh(a, a), InputError);
}

}  // TEST_SUITE
