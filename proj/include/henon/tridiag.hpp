#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace henon {

/// Symmetric tridiagonal matrix: diag (size N) and off-diagonal (size N-1).
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> off;

  std::size_t size() const noexcept { return diag.size(); }
  double quadratic(std::span<const double> x) const;
  std::vector<double> apply(std::span<const double> x) const;
  /// this - shift * other
  SymTridiag shifted(const SymTridiag& other, double shift) const;
  /// Leading (size()-1) block, dropping the last row and column.
  SymTridiag leadingBlock() const;
};

/// Pivots of the LDL^T factorization (no pivoting). A zero pivot is nudged to
/// a tiny value of the local scale so counts stay well defined.
std::vector<double> ldlPivots(const SymTridiag& m);

/// Number of negative pivots of A - shift*B; equals the number of eigenvalues
/// of the pencil (A, B) below shift when B is positive definite.
std::size_t eigenvaluesBelow(const SymTridiag& a, const SymTridiag& b, double shift);

/// True when all LDL^T pivots are positive.
bool isPositiveDefinite(const SymTridiag& m);

/// Solves m x = rhs by LDL^T elimination.
std::vector<double> solveTridiag(const SymTridiag& m, std::span<const double> rhs);

}  // namespace henon
