#include "henon/assembly.hpp"

#include <cmath>

#include "henon/errors.hpp"

namespace henon {
namespace {

struct Element {
  double e00 = 0.0;
  double e01 = 0.0;
  double e11 = 0.0;
};

Element elementMatrix(const RadialGrid& grid, const FormCoefficients& coeffs, std::size_t c) {
  const auto nodes = grid.nodes();
  const auto pts = grid.quadPoints();
  const auto wts = grid.quadWeights();
  const int n = grid.dimension();
  const double a = nodes[c];
  const double h = nodes[c + 1] - a;
  Element e;
  double stiff = 0.0;
  for (int k = 0; k < RadialGrid::kGaussPoints; ++k) {
    const std::size_t i = c * RadialGrid::kGaussPoints + k;
    const double r = pts[i];
    const double rn1 = std::pow(r, n - 1);
    const double rn3 = std::pow(r, n - 3);
    stiff += wts[i] * coeffs.grad[i] * rn1;
    const double w = wts[i] * (coeffs.angular[i] * rn3 + coeffs.mass[i] * rn1);
    const double phi1 = (r - a) / h;
    const double phi0 = 1.0 - phi1;
    e.e00 += w * phi0 * phi0;
    e.e01 += w * phi0 * phi1;
    e.e11 += w * phi1 * phi1;
  }
  stiff /= h * h;
  e.e00 += stiff;
  e.e11 += stiff;
  e.e01 -= stiff;
  return e;
}

void checkSizes(const RadialGrid& grid, const FormCoefficients& coeffs) {
  const std::size_t m = grid.quadPoints().size();
  require(coeffs.grad.size() == m && coeffs.angular.size() == m && coeffs.mass.size() == m,
          "form coefficients must be sampled at every quadrature point");
}

}  // namespace

SymTridiag assembleRadialForm(const RadialGrid& grid, const FormCoefficients& coeffs) {
  checkSizes(grid, coeffs);
  const auto cells = static_cast<std::ptrdiff_t>(grid.cells());
  std::vector<Element> elems(grid.cells());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < cells; ++c) {
    elems[c] = elementMatrix(grid, coeffs, static_cast<std::size_t>(c));
  }

  SymTridiag m;
  m.diag.assign(grid.size(), 0.0);
  m.off.assign(grid.cells(), 0.0);
  const auto nodes = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < nodes; ++i) {
    double d = 0.0;
    if (i > 0) d += elems[i - 1].e11;
    if (i < cells) {
      d += elems[i].e00;
      m.off[i] = elems[i].e01;
    }
    m.diag[i] = d;
  }
  m.diag.back() += coeffs.boundary;
  return m;
}

SymTridiag assembleRadialFormSerial(const RadialGrid& grid, const FormCoefficients& coeffs) {
  checkSizes(grid, coeffs);
  SymTridiag m;
  m.diag.assign(grid.size(), 0.0);
  m.off.assign(grid.cells(), 0.0);
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    const Element e = elementMatrix(grid, coeffs, c);
    m.diag[c] += e.e00;
    m.diag[c + 1] += e.e11;
    m.off[c] += e.e01;
  }
  m.diag.back() += coeffs.boundary;
  return m;
}

}  // namespace henon
