#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace henon {

/// Graded mesh on [0,1] with a fixed Gauss-Legendre rule on every cell.
///
/// The mesh is graded quadratically toward both r=0 and the right end of
/// the bulk segment. When built for a Hénon weight r^alpha, a boundary layer
/// [1 - 10/alpha, 1] is appended with its own quadratic grading toward r=1,
/// which resolves the (1-r)^{1/(p-1)} behaviour of the radial minimizer.
class RadialGrid {
 public:
  static constexpr int kGaussPoints = 4;

  RadialGrid(int dimension, std::vector<double> nodes, double layerWidth = 0.0);

  int dimension() const noexcept { return dimension_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t cells() const noexcept { return nodes_.size() - 1; }
  double layerWidth() const noexcept { return layerWidth_; }

  /// Gauss abscissae, cell-major: cell c owns [c*kGaussPoints, (c+1)*kGaussPoints).
  std::span<const double> quadPoints() const noexcept { return quadPoints_; }
  /// dr-weights matching quadPoints().
  std::span<const double> quadWeights() const noexcept { return quadWeights_; }

  /// Weights for the measure r^power dr at the quadrature points.
  std::vector<double> measureWeights(double power) const;

  /// Number of nodes in the closed interval [a, b].
  std::size_t countNodes(double a, double b) const;

  /// Index of the cell containing r (clamped to [0, cells()-1]).
  std::size_t locate(double r) const;

 private:
  int dimension_;
  double layerWidth_;
  std::vector<double> nodes_;
  std::vector<double> quadPoints_;
  std::vector<double> quadWeights_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Cells in the bulk segment at a refinement level; doubles per level.
std::size_t bulkCells(int refinement);
/// Cells in the boundary layer at a refinement level; doubles per level.
std::size_t layerCells(int refinement);

/// Builds the graded grid for dimension n. refinement in [1, 12]; alphaHint = 0
/// disables the boundary layer.
GridPtr buildGrid(int n, int refinement, double alphaHint);

}  // namespace henon
