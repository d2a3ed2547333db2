#include "henon/sweep.hpp"

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>

#include "henon/commands.hpp"
#include "henon/errors.hpp"

namespace henon::sweep {
namespace {

template <typename T>
T field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("config field '") + key + "' has the wrong type");
  }
}

Json runPoint(const SweepConfig& cfg, std::size_t index) {
  const auto& pt = cfg.points[index];
  const std::string csv =
      cfg.outputDir.empty() ? "" : (std::filesystem::path(cfg.outputDir) / ("point_" + std::to_string(index) + ".csv")).string();
  if (cfg.secondVariation) {
    commands::SecondVariationArgs a;
    a.n = pt.n;
    a.p = pt.p;
    a.q = pt.q;
    a.alpha = pt.alpha;
    a.refine = cfg.refine;
    a.tol = cfg.tol;
    a.eigenprofileOut = csv;
    try {
      return commands::runSecondVariation(a);
    } catch (const SolverError& e) {
      return report::errorRecord("second-variation", commands::toJson(a), "solver", e.what(), e.radius());
    } catch (const std::exception& e) {
      return report::errorRecord("second-variation", commands::toJson(a), "input", e.what(), std::numeric_limits<double>::quiet_NaN());
    }
  }
  commands::RadialArgs a;
  a.n = pt.n;
  a.p = pt.p;
  a.q = pt.q;
  a.alpha = pt.alpha;
  a.refine = cfg.refine;
  a.tol = cfg.tol;
  a.profileOut = csv;
  try {
    return commands::runRadial(a);
  } catch (const SolverError& e) {
    return report::errorRecord("radial", commands::toJson(a), "solver", e.what(), e.radius());
  } catch (const std::exception& e) {
    return report::errorRecord("radial", commands::toJson(a), "input", e.what(), std::numeric_limits<double>::quiet_NaN());
  }
}

}  // namespace

SweepConfig parseConfig(const Json& j) {
  if (!j.is_object()) throw InputError("sweep config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    static const char* known[] = {"points", "refine", "tol", "output_dir", "threads", "second_variation"};
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw InputError("unknown config field '" + key + "'");
    }
  }
  SweepConfig cfg;
  cfg.refine = field(j, "refine", cfg.refine);
  cfg.tol = field(j, "tol", cfg.tol);
  cfg.outputDir = field(j, "output_dir", cfg.outputDir);
  cfg.threads = field(j, "threads", cfg.threads);
  cfg.secondVariation = field(j, "second_variation", cfg.secondVariation);
  require(cfg.refine >= 1 && cfg.refine <= 12, "refine must be in [1, 12]");
  require(cfg.tol > 0.0 && cfg.tol < 1e-2, "tol must be in (0, 1e-2)");
  require(cfg.threads >= 0, "threads must be nonnegative");
  if (j.contains("points")) {
    if (!j["points"].is_array()) throw InputError("config field 'points' must be an array");
    for (const auto& p : j["points"]) {
      if (!p.is_object()) throw InputError("each point must be an object");
      radial::ProblemParams pp;
      pp.n = field(p, "n", pp.n);
      pp.p = field(p, "p", pp.p);
      pp.q = field(p, "q", pp.q);
      pp.alpha = field(p, "alpha", pp.alpha);
      cfg.points.push_back(pp);
    }
  }
  return cfg;
}

SweepConfig loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  return parseConfig(j);
}

std::vector<Json> runSweep(const SweepConfig& config) {
  if (!config.outputDir.empty()) std::filesystem::create_directories(config.outputDir);
  std::vector<Json> out(config.points.size());
  const long count = static_cast<long>(config.points.size());
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < count; ++i) out[i] = runPoint(config, static_cast<std::size_t>(i));
  return out;
}

std::vector<Json> runSweepSerial(const SweepConfig& config) {
  if (!config.outputDir.empty()) std::filesystem::create_directories(config.outputDir);
  std::vector<Json> out;
  for (std::size_t i = 0; i < config.points.size(); ++i) out.push_back(runPoint(config, i));
  return out;
}

}  // namespace henon::sweep
