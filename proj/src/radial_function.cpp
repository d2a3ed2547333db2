#include "henon/radial_function.hpp"

#include <algorithm>
#include <cmath>

#include "henon/errors.hpp"

namespace henon {

double RadialFunction::value(double r) const {
  const auto nodes = grid->nodes();
  const std::size_t c = grid->locate(r);
  const double a = nodes[c];
  const double h = nodes[c + 1] - a;
  const double t = (r - a) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * values[c] + h10 * h * derivatives[c] + h01 * values[c + 1] +
         h11 * h * derivatives[c + 1];
}

double RadialFunction::derivative(double r) const {
  const auto nodes = grid->nodes();
  const std::size_t c = grid->locate(r);
  const double t = (r - nodes[c]) / (nodes[c + 1] - nodes[c]);
  return (1.0 - t) * derivatives[c] + t * derivatives[c + 1];
}

double RadialFunction::quadValue(std::size_t i) const {
  return hasQuadSamples() ? quadValues[i] : value(grid->quadPoints()[i]);
}

double RadialFunction::quadDerivative(std::size_t i) const {
  return hasQuadSamples() ? quadDerivatives[i] : derivative(grid->quadPoints()[i]);
}

double RadialFunction::integrateNodal() const {
  const auto nodes = grid->nodes();
  double sum = 0.0;
  for (std::size_t c = 0; c + 1 < nodes.size(); ++c) {
    const double h = nodes[c + 1] - nodes[c];
    sum += 0.5 * h * (values[c] + values[c + 1]) +
           h * h / 12.0 * (derivatives[c] - derivatives[c + 1]);
  }
  return sum;
}

double RadialFunction::supNorm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void RadialFunction::scale(double factor) {
  for (auto* vec : {&values, &derivatives, &quadValues, &quadDerivatives}) {
    for (double& x : *vec) x *= factor;
  }
}

RadialFunction sampleFunction(GridPtr grid, const std::function<double(double)>& f,
                              const std::function<double(double)>& df) {
  RadialFunction out;
  out.grid = grid;
  for (double r : grid->nodes()) {
    out.values.push_back(f(r));
    out.derivatives.push_back(df(r));
  }
  for (double r : grid->quadPoints()) {
    out.quadValues.push_back(f(r));
    out.quadDerivatives.push_back(df(r));
  }
  return out;
}

double supDistance(const RadialFunction& a, const RadialFunction& b) {
  require(a.values.size() == b.values.size(), "profiles live on different grids");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

RadialFunction piecewiseLinear(GridPtr grid, std::vector<double> values) {
  RadialFunction f;
  f.grid = grid;
  const auto nodes = grid->nodes();
  const std::size_t cells = grid->cells();
  std::vector<double> slopes(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    slopes[c] = (values[c + 1] - values[c]) / (nodes[c + 1] - nodes[c]);
  }
  f.derivatives.resize(values.size());
  f.derivatives.front() = slopes.front();
  f.derivatives.back() = slopes.back();
  for (std::size_t i = 1; i < cells; ++i) f.derivatives[i] = 0.5 * (slopes[i - 1] + slopes[i]);
  const auto pts = grid->quadPoints();
  f.quadValues.resize(pts.size());
  f.quadDerivatives.resize(pts.size());
  for (std::size_t c = 0; c < cells; ++c) {
    for (int k = 0; k < RadialGrid::kGaussPoints; ++k) {
      const std::size_t i = c * RadialGrid::kGaussPoints + k;
      const double t = (pts[i] - nodes[c]) / (nodes[c + 1] - nodes[c]);
      f.quadValues[i] = (1.0 - t) * values[c] + t * values[c + 1];
      f.quadDerivatives[i] = slopes[c];
    }
  }
  f.values = std::move(values);
  return f;
}

}  // namespace henon
