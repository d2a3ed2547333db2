#pragma once

#include <string>
#include <vector>

namespace henon::stability {

/// K(n,p,q) = lambda^{2/p} S^{2/p-1} (lambda^{-p/(p-1)} (1 - (n-1) lambda) - (q-1)),
/// with S the area of the unit sphere.
double computeK(int n, double p, double q, double lambdaP);

/// lambda^{2/p} S^{2/p-1}, the unit in which K is linear in q.
double kScale(int n, double p, double lambdaP);

/// 1 + lambda^{-p/(p-1)} (1 - (n-1) lambda), the zero of K in q.
double qlocClosedForm(int n, double p, double lambdaP);

struct QlocResult {
  double value = 0.0;
  double lambdaP = 0.0;
  /// Root at or beyond p* = np/(n-p); K stays positive on the whole
  /// subcritical range.
  bool beyondCritical = false;
};

/// Root of K(n,p,.) by Brent.
QlocResult findQloc(int n, double p, double tol = 1e-6);

struct PlocResult {
  double value = 0.0;
  /// No sign change of K(n,p,p*(p)) on (2,n): value is capped at n.
  bool capped = false;
  int lambdaEvaluations = 0;
};

/// Smallest p in (2,n) with K(n,p,p*(p)) = 0, lambda_p recomputed per trial p.
PlocResult findPloc(int n, double tol = 1e-6);

/// varkappa = n^{-1/(p-1)} (p-1)
double kappaPn(int n, double p);

/// I_{p,n} = (e^{-k} k / p') int_0^1 t^{n/p'} e^{k t} dt with k = kappaPn(n,p).
double computeIpn(int n, double p);

struct GValues {
  double g = 0.0;
  double G = 0.0;
  double Gtilde = 0.0;
};

/// g(t) = (2/e)(e^{-2t}(t+1) + t - 1)/t, G = t(1-g), Gtilde = e^G + G(t+1).
/// Small t uses the Taylor series of the numerator.
GValues gG(double t);

/// G'(t) = (1 - 2/e) + 2 e^{-2t-1} (2t+1)
double gPrime(double t);

struct StabilityPoint {
  int n = 0;
  double p = 0.0;
  double q = 0.0;
  double lambdaP = 0.0;
  double K = 0.0;
  double kappa = 0.0;
  double Ipn = 0.0;
  double tpn = 0.0;
  double taupn = 0.0;
  double beta = 0.0;
};

StabilityPoint stabilityPoint(int n, double p, double q, double lambdaP);

struct ChainLink {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool holds = false;
};

struct ChainReport {
  int n = 0;
  double p = 0.0;
  std::vector<ChainLink> links;
  bool allHold = false;
};

/// Evaluates each inequality of the chain that proves K(n,p,p) > 0.
ChainReport verifyAppendixChain(int n, double p, double lambdaP);

struct AppendixTableRow {
  int k = 0;
  double tk = 0.0;
  double Gtilde = 0.0;
  double bound = 0.0;
  bool holds = false;
};

std::vector<AppendixTableRow> emitAppendixTable();

/// Round half to even at `digits` decimals.
double roundHalfEven(double x, int digits);

}  // namespace henon::stability
