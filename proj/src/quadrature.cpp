#include "henon/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace henon {

double integrateAdaptive(const std::function<double(double)>& f, double a, double b,
                         double tol) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 15>::integrate(f, a, b, 30, tol);
}

}  // namespace henon
