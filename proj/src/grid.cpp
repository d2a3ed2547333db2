#include "henon/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "henon/errors.hpp"

namespace henon {
namespace {

// 4-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kAbscissae = {
    -0.86113631159405257522, -0.33998104358485626480,
    0.33998104358485626480, 0.86113631159405257522};
constexpr std::array<double, 4> kWeights = {
    0.34785484513745385737, 0.65214515486254614263,
    0.65214515486254614263, 0.34785484513745385737};

}  // namespace

RadialGrid::RadialGrid(int dimension, std::vector<double> nodes, double layerWidth)
    : dimension_(dimension), layerWidth_(layerWidth), nodes_(std::move(nodes)) {
  require(dimension_ >= 3, "dimension n must be >= 3");
  require(nodes_.size() >= 2, "grid needs at least two nodes");
  require(nodes_.front() == 0.0 && nodes_.back() == 1.0, "grid must span [0, 1]");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    require(nodes_[i] > nodes_[i - 1], "grid nodes must be strictly increasing");
  }
  quadPoints_.reserve(cells() * kGaussPoints);
  quadWeights_.reserve(cells() * kGaussPoints);
  for (std::size_t c = 0; c < cells(); ++c) {
    const double a = nodes_[c];
    const double b = nodes_[c + 1];
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int k = 0; k < kGaussPoints; ++k) {
      quadPoints_.push_back(mid + half * kAbscissae[k]);
      quadWeights_.push_back(half * kWeights[k]);
    }
  }
}

std::vector<double> RadialGrid::measureWeights(double power) const {
  std::vector<double> w(quadWeights_.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = quadWeights_[i] * std::pow(quadPoints_[i], power);
  }
  return w;
}

std::size_t RadialGrid::countNodes(double a, double b) const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [&](double r) { return r >= a && r <= b; }));
}

std::size_t RadialGrid::locate(double r) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
  if (it == nodes_.begin()) return 0;
  const auto idx = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(idx, cells() - 1);
}

std::size_t bulkCells(int refinement) { return std::size_t{16} << refinement; }
std::size_t layerCells(int refinement) { return std::size_t{32} << refinement; }

GridPtr buildGrid(int n, int refinement, double alphaHint) {
  require(n >= 3, "dimension n must be >= 3");
  require(refinement >= 1 && refinement <= 12, "refinement must be in [1, 12]");
  require(alphaHint >= 0.0 && std::isfinite(alphaHint), "alphaHint must be >= 0");

  const double width = alphaHint > 0.0 ? std::min(10.0 / alphaHint, 0.5) : 0.0;
  const double bulkEnd = 1.0 - width;
  const std::size_t m = bulkCells(refinement);

  std::vector<double> nodes;
  nodes.reserve(m + layerCells(refinement) + 1);
  // Quadratic grading toward both ends of [0, bulkEnd].
  for (std::size_t i = 0; i <= m; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(m);
    double r;
    if (2 * i <= m) {
      r = 0.5 * bulkEnd * (2.0 * s) * (2.0 * s);
    } else {
      const double t = 2.0 * (1.0 - s);
      r = bulkEnd * (1.0 - 0.5 * t * t);
    }
    nodes.push_back(r);
  }
  nodes.front() = 0.0;
  nodes.back() = bulkEnd;

  if (width > 0.0) {
    const std::size_t l = layerCells(refinement);
    for (std::size_t k = 1; k <= l; ++k) {
      const double t = 1.0 - static_cast<double>(k) / static_cast<double>(l);
      nodes.push_back(1.0 - width * t * t);
    }
    nodes.back() = 1.0;
  }
  return std::make_shared<const RadialGrid>(n, std::move(nodes), width);
}

}  // namespace henon
