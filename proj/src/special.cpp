#include "henon/special.hpp"

#include <cmath>
#include <numbers>

#include "henon/errors.hpp"

namespace henon {
namespace {

// Series valid for order > -1 (and order = -1 + k handled by the caller).
double besselSeries(double order, double x) {
  const double half = 0.5 * x;
  const double q = half * half;
  double term = std::pow(half, order) / std::tgamma(order + 1.0);
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (k + order));
    sum += term;
    if (term <= 1e-17 * sum) break;
  }
  return sum;
}

}  // namespace

double gammaFn(double x) {
  require(x > 0.0 && std::isfinite(x), "gammaFn requires a positive finite argument");
  return std::tgamma(x);
}

double besselI(double nu, double x) {
  require(nu >= 0.0, "besselI requires nu >= 0");
  require(x > 0.0 && x <= 10.0, "besselI requires x in (0, 10]");
  return besselSeries(nu, x);
}

double besselIPrime(double nu, double x) {
  require(nu >= 0.0, "besselIPrime requires nu >= 0");
  require(x > 0.0 && x <= 10.0, "besselIPrime requires x in (0, 10]");
  // I_{-1} = I_1, the only negative integer order reachable here.
  const double lower = nu == 0.0 ? besselSeries(1.0, x) : besselSeries(nu - 1.0, x);
  return lower - nu / x * besselSeries(nu, x);
}

double sphereMeasure(int n) {
  require(n >= 1, "sphere dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / gammaFn(0.5 * n);
}

}  // namespace henon
