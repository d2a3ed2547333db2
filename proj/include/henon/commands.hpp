#pragma once

#include <optional>
#include <string>

#include "henon/report.hpp"

namespace henon::commands {

using report::Json;

struct SteklovArgs {
  int n = 3;
  double p = 2.0;
  int refine = 4;
  double tol = 1e-10;
  bool besselCheck = false;
};

struct RadialArgs {
  int n = 4;
  double p = 2.0;
  double q = 3.0;
  double alpha = 100.0;
  int refine = 4;
  double tol = 1e-10;
  bool oracle = false;
  std::string profileOut;
};

struct SecondVariationArgs {
  int n = 4;
  double p = 2.0;
  double q = 3.0;
  double alpha = 400.0;
  int harmonic = 1;
  int refine = 4;
  double tol = 1e-10;
  std::string eigenprofileOut;
};

struct StabilityArgs {
  int n = 4;
  double p = 2.0;
  std::optional<double> q;
};

struct AppendixArgs {
  std::string out;
};

// Each returns the result payload; InputError and SolverError propagate.
Json runSteklov(const SteklovArgs& args);
Json runRadial(const RadialArgs& args);
Json runSecondVariation(const SecondVariationArgs& args);
Json runStability(const StabilityArgs& args);
Json runAppendixTable(const AppendixArgs& args);

Json toJson(const SteklovArgs& a);
Json toJson(const RadialArgs& a);
Json toJson(const SecondVariationArgs& a);
Json toJson(const StabilityArgs& a);
Json toJson(const AppendixArgs& a);

}  // namespace henon::commands
