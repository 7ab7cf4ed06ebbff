#include "cli/runner.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "cli/acceptance.hpp"
#include "cli/config.hpp"
#include "cli/scenarios.hpp"
#include "flowlab/errors.hpp"

namespace flowlab {
namespace cli {

namespace {

const char* error_type(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const ParameterError*>(&e)) return "ParameterError";
  if (dynamic_cast<const GeometryError*>(&e)) return "GeometryError";
  if (dynamic_cast<const ShapeError*>(&e)) return "ShapeError";
  if (dynamic_cast<const DimensionError*>(&e)) return "DimensionError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const ParityError*>(&e)) return "ParityError";
  if (dynamic_cast<const DataError*>(&e)) return "DataError";
  if (dynamic_cast<const SingularityError*>(&e)) return "SingularityError";
  if (dynamic_cast<const SolverError*>(&e)) return "SolverError";
  if (dynamic_cast<const AccuracyError*>(&e)) return "AccuracyError";
  return "InternalError";
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SolverError*>(&e) ||
      dynamic_cast<const AccuracyError*>(&e))
    return 3;
  if (dynamic_cast<const Error*>(&e)) return 2;
  return 3;  // unexpected failure inside a solve
}

int report_error(const std::exception& e) {
  const int code = exit_code_for(e);
  nlohmann::ordered_json diag;
  diag["error"]["type"] = error_type(e);
  diag["error"]["message"] = e.what();
  diag["error"]["exit"] = code;
  std::fputs(dump_json17(diag).c_str(), stderr);
  return code;
}

void append_sidecar_log(const std::string& out_dir, int argc,
                        const char* const* argv, double elapsed_ms) {
  std::filesystem::create_directories(out_dir);
  std::ofstream log((std::filesystem::path(out_dir) / "run.log").string(),
                    std::ios::app);
  if (!log) return;
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%S", std::gmtime(&now));
  log << stamp << "Z";
  for (int i = 0; i < argc; ++i) log << " " << argv[i];
  char ms[32];
  std::snprintf(ms, sizeof(ms), " (%.0f ms)", elapsed_ms);
  log << ms << "\n";
}

int run_verify(const std::string& suite, const std::string& jobs) {
  if (!jobs.empty()) setenv("FLOWLAB_THREADS", jobs.c_str(), 1);
  std::vector<int> ids = suite_criteria(suite);
  bool all_pass = true;
  for (int id : ids) {
    CriterionResult r = run_criterion(id);
    all_pass = all_pass && r.pass;
    std::printf("criterion %2d [%s] %s: %s\n", r.id,
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("suite %s: %s\n", suite.c_str(), all_pass ? "PASS" : "FAIL");
  return all_pass ? 0 : 1;
}

}  // namespace

int run_main(int argc, const char* const* argv) {
  CLI::App app{"flowlab: a numerical laboratory for bounded Navier-Stokes "
               "flows (mild solutions, kernels, axisymmetric swirl, blowup "
               "diagnostics)"};
  app.require_subcommand(1);

  std::string config_path, emit, seed, jobs;
  bool quiet = false;
  std::string run_name, suite;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--emit", emit, "comma-separated artifact list");
    sub->add_option("--seed", seed, "seed for stochastic data");
    sub->add_option("--jobs", jobs, "cap on parallel sweep workers");
    sub->add_flag("--quiet", quiet, "suppress progress output");
    sub->allow_extras();
  };

  std::vector<std::pair<std::string, CLI::App*>> scenario_subs;
  for (const std::string& name : scenario_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " scenario");
    add_common(sub);
    scenario_subs.emplace_back(name, sub);
  }
  CLI::App* run_sub = app.add_subcommand("run", "run a scenario by name");
  run_sub->add_option("scenario", run_name, "scenario name")->required();
  add_common(run_sub);

  CLI::App* verify_sub =
      app.add_subcommand("verify", "run an acceptance suite");
  verify_sub
      ->add_option("suite", suite,
                   "kernels | mild | maxprinciple | axisym | blowup | all")
      ->required();
  verify_sub->add_option("--jobs", jobs, "cap on parallel sweep workers");
  verify_sub->add_flag("--quiet", quiet, "suppress progress output");

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    nlohmann::ordered_json diag;
    diag["error"]["type"] = "ConfigError";
    diag["error"]["message"] = e.what();
    diag["error"]["exit"] = 2;
    std::fputs(dump_json17(diag).c_str(), stderr);
    return 2;
  }

  try {
    if (verify_sub->parsed()) return run_verify(suite, jobs);

    std::string name;
    std::vector<std::string> extras;
    if (run_sub->parsed()) {
      name = run_name;
      extras = run_sub->remaining();
    } else {
      for (const auto& [n, sub] : scenario_subs)
        if (sub->parsed()) {
          name = n;
          extras = sub->remaining();
        }
    }

    Config cfg(schema_for(name));
    if (!config_path.empty()) cfg.load_file(config_path);
    for (const auto& [k, v] : parse_kv_tokens(extras)) cfg.set(k, v);
    if (!seed.empty()) cfg.set("seed", seed);
    if (!emit.empty()) cfg.set("emit", emit);
    if (!jobs.empty()) {
      char* end = nullptr;
      long j = std::strtol(jobs.c_str(), &end, 10);
      if (end != jobs.c_str() + jobs.size() || j < 1)
        throw ConfigError("--jobs expects a positive integer, got `" + jobs +
                          "`");
      setenv("FLOWLAB_THREADS", jobs.c_str(), 1);
    }

    const auto start = std::chrono::steady_clock::now();
    run_scenario(cfg, quiet);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    append_sidecar_log(cfg.get_str("out_dir"), argc, argv, ms);
    return 0;
  } catch (const std::exception& e) {
    return report_error(e);
  }
}

}  // namespace cli
}  // namespace flowlab
