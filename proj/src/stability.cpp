#include "henon/stability.hpp"

#include <cfenv>
#include <cmath>
#include <numbers>

#include "henon/errors.hpp"
#include "henon/quadrature.hpp"
#include "henon/roots.hpp"
#include "henon/special.hpp"
#include "henon/steklov.hpp"

namespace henon::stability {
namespace {

void checkNP(int n, double p) {
  require(n >= 3, "n must be at least 3");
  require(p >= 2.0 && p < n, "p must satisfy 2 <= p < n");
}

double conjugate(double p) { return p / (p - 1.0); }

double criticalExponent(int n, double p) { return n * p / (n - p); }

ChainLink link(std::string name, double lhs, double rhs) {
  ChainLink l;
  l.name = std::move(name);
  l.lhs = lhs;
  l.rhs = rhs;
  l.margin = rhs - lhs;
  l.holds = lhs < rhs;
  return l;
}

}  // namespace

double kScale(int n, double p, double lambdaP) {
  return std::pow(lambdaP, 2.0 / p) * std::pow(sphereMeasure(n), 2.0 / p - 1.0);
}

double computeK(int n, double p, double q, double lambdaP) {
  require(lambdaP > 0.0, "lambda_p must be positive");
  const double bracket =
      std::pow(lambdaP, -p / (p - 1.0)) * (1.0 - (n - 1) * lambdaP) - (q - 1.0);
  return kScale(n, p, lambdaP) * bracket;
}

double qlocClosedForm(int n, double p, double lambdaP) {
  return 1.0 + std::pow(lambdaP, -conjugate(p)) * (1.0 - (n - 1) * lambdaP);
}

QlocResult findQloc(int n, double p, double tol) {
  checkNP(n, p);
  QlocResult out;
  out.lambdaP = steklov::lambda(n, p);
  const auto k = [&](double q) { return computeK(n, p, q, out.lambdaP); };
  if (!(k(p) > 0.0)) throw SolverError("K(n,p,p) is not positive");
  double hi = p + 1.0;
  for (int i = 0; i < 200 && k(hi) >= 0.0; ++i) hi = p + 2.0 * (hi - p);
  out.value = brent(k, p, hi, RootOptions{tol * 1e-3, 0.0, 200}).root;
  out.beyondCritical = out.value >= criticalExponent(n, p);
  return out;
}

PlocResult findPloc(int n, double tol) {
  require(n >= 4, "p_loc needs n >= 4");
  PlocResult out;
  const auto f = [&](double p) {
    ++out.lambdaEvaluations;
    return computeK(n, p, criticalExponent(n, p), steklov::lambda(n, p));
  };
  const int steps = 40;
  const double top = n - 1e-3;
  double a = 2.0;
  double fa = f(a);
  if (!(fa > 0.0)) throw SolverError("K(n,2,2*) is not positive");
  for (int i = 1; i <= steps; ++i) {
    const double b = 2.0 + (top - 2.0) * i / steps;
    const double fb = f(b);
    if (fb <= 0.0) {
      out.value = brent(f, a, b, RootOptions{tol * 1e-2, 0.0, 200}).root;
      return out;
    }
    a = b;
    fa = fb;
  }
  out.value = n;
  out.capped = true;
  return out;
}

double kappaPn(int n, double p) { return std::pow(n, -1.0 / (p - 1.0)) * (p - 1.0); }

double computeIpn(int n, double p) {
  require(n >= 3 && p >= 2.0 && p <= n, "I_{p,n} needs n >= 3, 2 <= p <= n");
  const double k = kappaPn(n, p);
  const double pc = conjugate(p);
  const double beta = n / pc;
  const double integral =
      integrateAdaptive([&](double t) { return std::pow(t, beta) * std::exp(k * t); }, 0.0, 1.0);
  return std::exp(-k) * k / pc * integral;
}

GValues gG(double t) {
  require(t >= 0.0, "t must be nonnegative");
  constexpr double e = std::numbers::e;
  double numerator;
  // The closed form cancels to O(t^3); below 0.1 the series is the accurate branch.
  if (t < 0.1) {
    // sum_{m>=3} (-2)^{m-1} (m-2) t^m / m!
    numerator = 0.0;
    double term = 1.0;  // (-2)^{m-1} t^m / m! built incrementally
    for (int m = 1; m <= 30; ++m) {
      term *= (m == 1 ? t : -2.0 * t / m);
      if (m >= 3) numerator += (m - 2) * term;
    }
  } else {
    numerator = std::exp(-2.0 * t) * (t + 1.0) + t - 1.0;
  }
  GValues v;
  v.g = t == 0.0 ? 0.0 : 2.0 / e * numerator / t;
  v.G = t * (1.0 - v.g);
  v.Gtilde = std::exp(v.G) + v.G * (t + 1.0);
  return v;
}

double gPrime(double t) {
  constexpr double e = std::numbers::e;
  return (1.0 - 2.0 / e) + 2.0 * std::exp(-2.0 * t - 1.0) * (2.0 * t + 1.0);
}

StabilityPoint stabilityPoint(int n, double p, double q, double lambdaP) {
  StabilityPoint s;
  s.n = n;
  s.p = p;
  s.q = q;
  s.lambdaP = lambdaP;
  s.K = computeK(n, p, q, lambdaP);
  s.kappa = kappaPn(n, p);
  s.Ipn = computeIpn(n, p);
  const double pc = conjugate(p);
  s.beta = n / pc;
  s.tpn = std::pow(n, -1.0 / (p - 1.0)) * p / (n + pc);
  const double g = gG(s.tpn).g;
  s.taupn = ((n - 1) / (pc * s.kappa) * s.tpn * g - s.tpn / pc + 1.0) / s.kappa;
  return s;
}

ChainReport verifyAppendixChain(int n, double p, double lambdaP) {
  require(n >= 3 && p >= 2.0 && p <= n, "chain needs n >= 3, 2 <= p <= n");
  const StabilityPoint s = stabilityPoint(n, p, p, lambdaP);
  const double pc = conjugate(p);
  const double I = s.Ipn;
  const double k = s.kappa;
  const double t = s.tpn;
  const GValues gv = gG(t);

  ChainReport rep;
  rep.n = n;
  rep.p = p;
  rep.links.push_back(link("steklov_upper_bound", lambdaP, (1.0 - I) / n));
  rep.links.push_back(link("main_inequality",
                           lambdaP * (n - 1) + std::pow(lambdaP, pc) * (p - 1.0), 1.0));
  rep.links.push_back(
      link("I_bound", std::pow(1.0 - I, p), std::pow(((n - 1) * I + 1.0) / k, p - 1.0)));
  rep.links.push_back(link("I_lower_estimate", 1.0 / pc * t / (t + 1.0) * (1.0 + gv.g / k), I));
  rep.links.push_back(link("tau_inequality", std::pow(1.0 + t / p - gv.g / (n + pc), p),
                           std::pow(1.0 + s.taupn, p - 1.0) * (1.0 + t)));
  rep.links.push_back(link("fraction_bound", 1.0, std::pow(n, -(n - 2.0) / (n - 1.0)) * (n - 1)));
  // The lower bound is attained at p = n, so allow a rounding-level tie there.
  {
    ChainLink l = link("fraction_monotone", std::pow(n, -(n - 2.0) / (n - 1.0)) * (n - 1),
                       std::pow(n, 1.0 / (p - 1.0)) * (n - 1) / p);
    l.holds = l.margin >= -1e-12 * l.rhs;
    rep.links.push_back(l);
  }
  rep.links.push_back(link("Gtilde_bound", gv.Gtilde, 2.0 * (t + 1.0)));
  {
    double minPrime = gPrime(0.0);
    for (int i = 1; i <= 10000; ++i) minPrime = std::min(minPrime, gPrime(i / 10000.0));
    rep.links.push_back(link("G_increasing", 0.0, minPrime));
  }
  rep.links.push_back(link("K_at_q_equals_p", 0.0, s.K));
  rep.allHold = true;
  for (const auto& l : rep.links) rep.allHold = rep.allHold && l.holds;
  return rep;
}

double roundHalfEven(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  const int old = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double r = std::nearbyint(x * scale) / scale;
  std::fesetround(old);
  return r;
}

std::vector<AppendixTableRow> emitAppendixTable() {
  std::vector<AppendixTableRow> rows;
  for (int k = 1; k <= 20; ++k) {
    AppendixTableRow row;
    row.k = k;
    row.tk = 0.05 * k;
    row.Gtilde = gG(row.tk).Gtilde;
    row.bound = 2.0 * (0.05 * (k - 1) + 1.0);
    row.holds = row.Gtilde < row.bound;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace henon::stability
