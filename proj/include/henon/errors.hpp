#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace henon {

/// Invalid arguments or parameter points outside the admissible region.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A bracket that does not change sign.
class BracketError : public InputError {
 public:
  BracketError(const std::string& what, double a, double b)
      : InputError(what), a_(a), b_(b) {}
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

 private:
  double a_;
  double b_;
};

/// Numerical failure of a solver. `radius()` carries the last valid radius
/// when the failure happened during a radial integration, NaN otherwise.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what,
                       double radius = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), radius_(radius) {}
  double radius() const noexcept { return radius_; }

 private:
  double radius_;
};

void require(bool condition, const std::string& message);

}  // namespace henon
