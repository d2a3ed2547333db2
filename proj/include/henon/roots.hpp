#pragma once

#include <functional>

namespace henon {

struct RootOptions {
  double xtol = 1e-12;
  double ftol = 0.0;
  int maxIterations = 200;
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Brent's method (inverse quadratic interpolation / secant with bisection
/// safeguard). Requires f(a) f(b) < 0; throws BracketError otherwise.
/// Stops once |f| <= ftol or the bracket shrinks below xtol (relative to |x|).
RootResult brent(const std::function<double(double)>& f, double a, double b,
                 const RootOptions& options = {});

/// Convenience form: root with |f| <= tol or bracket width <= tol.
double brentRoot(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace henon
