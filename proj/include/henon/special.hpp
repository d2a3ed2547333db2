#pragma once

namespace henon {

/// Gamma function on x > 0.
double gammaFn(double x);

/// Modified Bessel function of the first kind by its power series,
///   I_nu(x) = sum_k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)),
/// for nu >= 0 and x in (0, 10]. All terms are positive, so the sum is
/// accurate to a few ulps.
double besselI(double nu, double x);

/// I'_nu(x) = I_{nu-1}(x) - (nu/x) I_nu(x).
double besselIPrime(double nu, double x);

/// Surface measure of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphereMeasure(int n);

}  // namespace henon
