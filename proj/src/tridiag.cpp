#include "henon/tridiag.hpp"

#include <cmath>
#include <limits>

#include "henon/errors.hpp"

namespace henon {

double SymTridiag::quadratic(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) s += diag[i] * x[i] * x[i];
  for (std::size_t i = 0; i < off.size(); ++i) s += 2.0 * off[i] * x[i] * x[i + 1];
  return s;
}

std::vector<double> SymTridiag::apply(std::span<const double> x) const {
  std::vector<double> y(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) y[i] = diag[i] * x[i];
  for (std::size_t i = 0; i < off.size(); ++i) {
    y[i] += off[i] * x[i + 1];
    y[i + 1] += off[i] * x[i];
  }
  return y;
}

SymTridiag SymTridiag::shifted(const SymTridiag& other, double shift) const {
  require(other.size() == size(), "tridiagonal size mismatch");
  SymTridiag m = *this;
  for (std::size_t i = 0; i < diag.size(); ++i) m.diag[i] -= shift * other.diag[i];
  for (std::size_t i = 0; i < off.size(); ++i) m.off[i] -= shift * other.off[i];
  return m;
}

SymTridiag SymTridiag::leadingBlock() const {
  SymTridiag m;
  m.diag.assign(diag.begin(), diag.end() - 1);
  if (!off.empty()) m.off.assign(off.begin(), off.end() - 1);
  return m;
}

std::vector<double> ldlPivots(const SymTridiag& m) {
  std::vector<double> d(m.size());
  constexpr double tiny = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < m.size(); ++i) {
    double piv = m.diag[i];
    if (i > 0) piv -= m.off[i - 1] * m.off[i - 1] / d[i - 1];
    if (piv == 0.0) piv = tiny * (std::abs(m.diag[i]) + tiny);
    d[i] = piv;
  }
  return d;
}

std::size_t eigenvaluesBelow(const SymTridiag& a, const SymTridiag& b, double shift) {
  std::size_t count = 0;
  for (double piv : ldlPivots(a.shifted(b, shift))) count += piv < 0.0 ? 1 : 0;
  return count;
}

bool isPositiveDefinite(const SymTridiag& m) {
  for (double piv : ldlPivots(m)) {
    if (!(piv > 0.0)) return false;
  }
  return true;
}

std::vector<double> solveTridiag(const SymTridiag& m, std::span<const double> rhs) {
  const std::size_t n = m.size();
  require(rhs.size() == n, "right-hand side size mismatch");
  const auto d = ldlPivots(m);
  std::vector<double> y(rhs.begin(), rhs.end());
  for (std::size_t i = 1; i < n; ++i) y[i] -= m.off[i - 1] / d[i - 1] * y[i - 1];
  std::vector<double> x(n);
  x[n - 1] = y[n - 1] / d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (y[i] - m.off[i] * x[i + 1]) / d[i];
  return x;
}

}  // namespace henon
