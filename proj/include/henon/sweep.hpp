#pragma once

#include <string>
#include <vector>

#include "henon/henon_radial.hpp"
#include "henon/report.hpp"

namespace henon::sweep {

using report::Json;

/// Batch of radial solves. JSON layout:
///   {"points": [{"n":4,"p":2,"q":3,"alpha":100}, ...],
///    "refine": 4, "tol": 1e-10, "output_dir": "", "threads": 0,
///    "second_variation": false}
/// threads = 0 keeps the OpenMP default.
struct SweepConfig {
  std::vector<radial::ProblemParams> points;
  int refine = 4;
  double tol = 1e-10;
  std::string outputDir;
  int threads = 0;
  bool secondVariation = false;
};

/// Validates every field; throws InputError with the offending key.
SweepConfig parseConfig(const Json& j);
SweepConfig loadConfig(const std::string& path);

/// One record per point, in input order. A failing point yields an error
/// record and does not stop the others.
std::vector<Json> runSweep(const SweepConfig& config);
std::vector<Json> runSweepSerial(const SweepConfig& config);

}  // namespace henon::sweep
