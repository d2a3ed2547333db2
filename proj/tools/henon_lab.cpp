// henon-lab: command-line front end for the radial Hénon-Neumann solvers.
//
// Exit codes: 0 success, 1 solver failure, 2 input error (including unknown
// flags). Results go to stdout as {"payload": ..., "metadata": ...}.

#include <chrono>
#include <functional>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "henon/commands.hpp"
#include "henon/errors.hpp"
#include "henon/report.hpp"
#include "henon/sweep.hpp"

namespace {

using henon::report::Json;

constexpr int kSolverFailure = 1;
constexpr int kInputFailure = 2;

int emit(const std::string& command, const Json& input, const std::function<Json()>& run) {
  const auto start = std::chrono::steady_clock::now();
  try {
    Json payload = run();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << henon::report::withMetadata(std::move(payload), wall).dump(2) << '\n';
    return 0;
  } catch (const henon::SolverError& e) {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << henon::report::withMetadata(
                     henon::report::errorRecord(command, input, "solver", e.what(), e.radius()), wall)
                     .dump(2)
              << '\n';
    std::cerr << "henon-lab: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    std::cout << henon::report::withMetadata(
                     henon::report::errorRecord(command, input, "input", e.what(),
                                                std::numeric_limits<double>::quiet_NaN()),
                     0.0)
                     .dump(2)
              << '\n';
    std::cerr << "henon-lab: input error: " << e.what() << '\n';
    return kInputFailure;
  } catch (const std::exception& e) {
    std::cerr << "henon-lab: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial solvers for the Neumann Hénon problem in the unit ball"};
  app.require_subcommand(1);

  henon::commands::SteklovArgs st;
  auto* steklov = app.add_subcommand("steklov", "first Steklov eigenpair lambda_p, phi_p");
  steklov->add_option("--n", st.n, "dimension")->capture_default_str();
  steklov->add_option("--p", st.p, "p-Laplacian exponent")->capture_default_str();
  steklov->add_option("--refine", st.refine, "grid refinement level 1..12")->capture_default_str();
  steklov->add_option("--tol", st.tol, "integrator tolerance")->capture_default_str();
  steklov->add_flag("--bessel-check", st.besselCheck, "compare with the Bessel formula (p = 2)");

  henon::commands::RadialArgs ra;
  auto* radial = app.add_subcommand("radial", "radial minimizer v_alpha and level mu");
  radial->add_option("--n", ra.n)->capture_default_str();
  radial->add_option("--p", ra.p)->capture_default_str();
  radial->add_option("--q", ra.q)->capture_default_str();
  radial->add_option("--alpha", ra.alpha)->capture_default_str();
  radial->add_option("--refine", ra.refine)->capture_default_str();
  radial->add_option("--tol", ra.tol)->capture_default_str();
  radial->add_flag("--oracle", ra.oracle, "cross-check with the direct variational minimizer");
  radial->add_option("--profile-out", ra.profileOut, "CSV file for the profile");

  henon::commands::SecondVariationArgs sv;
  auto* second = app.add_subcommand("second-variation", "sign of the reduced second variation");
  second->add_option("--n", sv.n)->capture_default_str();
  second->add_option("--p", sv.p)->capture_default_str();
  second->add_option("--q", sv.q)->capture_default_str();
  second->add_option("--alpha", sv.alpha)->capture_default_str();
  second->add_option("--harmonic", sv.harmonic, "spherical harmonic degree")->capture_default_str();
  second->add_option("--refine", sv.refine)->capture_default_str();
  second->add_option("--tol", sv.tol)->capture_default_str();
  second->add_option("--eigenprofile-out", sv.eigenprofileOut, "CSV file for h");

  henon::commands::StabilityArgs sa;
  double qValue = 0.0;
  auto* stab = app.add_subcommand("stability", "K(n,p,q), q_loc, p_loc and the inequality chain");
  stab->add_option("--n", sa.n)->capture_default_str();
  stab->add_option("--p", sa.p)->capture_default_str();
  auto* qOpt = stab->add_option("--q", qValue, "evaluate K at this q");

  henon::commands::AppendixArgs aa;
  auto* table = app.add_subcommand("appendix-table", "the 20-row table of Gtilde(t_k)");
  table->add_option("--out", aa.out, "CSV output file");

  std::string configPath;
  auto* sweep = app.add_subcommand("sweep", "batch of radial solves from a JSON config");
  sweep->add_option("config", configPath, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "henon-lab: " << e.what() << "\n\n" << app.help();
    return kInputFailure;
  }

  using namespace henon::commands;
  if (*steklov) return emit("steklov", toJson(st), [&] { return runSteklov(st); });
  if (*radial) return emit("radial", toJson(ra), [&] { return runRadial(ra); });
  if (*second) return emit("second-variation", toJson(sv), [&] { return runSecondVariation(sv); });
  if (*stab) {
    if (*qOpt) sa.q = qValue;
    return emit("stability", toJson(sa), [&] { return runStability(sa); });
  }
  if (*table) return emit("appendix-table", toJson(aa), [&] { return runAppendixTable(aa); });
  if (*sweep) {
    const Json input{{"config", configPath}};
    return emit("sweep", input, [&] {
      const auto cfg = henon::sweep::loadConfig(configPath);
      Json rec = henon::report::makeRecord("sweep", input);
      rec["results"] = henon::sweep::runSweep(cfg);
      std::size_t failed = 0;
      for (const auto& r : rec["results"]) failed += r.contains("error") ? 1 : 0;
      rec["diagnostics"] = {{"points", cfg.points.size()}, {"failed", failed}};
      return rec;
    });
  }
  return kInputFailure;
}
