#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sdamp/error.hpp"
#include "sdamp/harness/config.hpp"
#include "sdamp/harness/initial_conditions.hpp"
#include "sdamp/harness/linkdv_reports.hpp"
#include "sdamp/harness/run.hpp"
#include "sdamp/models.hpp"

using namespace sdamp;
using namespace sdamp::harness;

namespace {

struct RunFlags {
  std::string config;
  std::string preset;
  std::optional<std::string> model, ic, damping, gamma, window, reference, out;
  std::optional<double> L, dt, t_final, k1, cg_tol;
  std::optional<std::size_t> modes, f1, f2, workers;
  bool print_config = false;
};

void add_run_flags(CLI::App* app, RunFlags& f) {
  app->add_option("--config", f.config, "JSON config file");
  app->add_option("--preset", f.preset, "named preset (see list-presets)");
  app->add_option("--model", f.model, "kdv | nls | linkdv | riemann-kdv | kawahara | eckhaus");
  app->add_option("--ic", f.ic, "initial condition name or expr:<expression in x>");
  app->add_option("--L", f.L, "half-width of the domain [-L, L)");
  app->add_option("--modes", f.modes, "number of grid points m (power of two)");
  app->add_option("--dt", f.dt, "time step");
  app->add_option("--t-final", f.t_final, "final time");
  app->add_option("--damping", f.damping, "none | exp | heat | both");
  app->add_option("--gamma", f.gamma, "decay mask profile: right | even");
  app->add_option("--k1", f.k1, "heat damping coefficient");
  app->add_option("--f1", f.f1, "heat step period in time steps");
  app->add_option("--f2", f.f2, "decay mask period in time steps");
  app->add_option("--cg-tol", f.cg_tol, "conjugate gradient tolerance");
  app->add_option("--window", f.window, "comparison window LO:HI");
  app->add_option("--reference", f.reference, "none | analytic | auto | <csv file>");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--workers", f.workers, "concurrent sweep cells");
  app->add_flag("--print-config", f.print_config, "print the resolved config and exit");
}

json flag_overrides(const RunFlags& f) {
  json j = json::object();
  if (f.model) j["model"] = *f.model;
  if (f.ic) j["ic"] = *f.ic;
  if (f.L) j["L"] = *f.L;
  if (f.modes) j["m"] = *f.modes;
  if (f.dt) j["dt"] = *f.dt;
  if (f.t_final) j["t_final"] = *f.t_final;
  if (f.damping) j["damping"]["mode"] = *f.damping;
  if (f.gamma) j["damping"]["gamma"] = *f.gamma;
  if (f.k1) j["damping"]["k1"] = *f.k1;
  if (f.f1) j["damping"]["f1"] = *f.f1;
  if (f.f2) j["damping"]["f2"] = *f.f2;
  if (f.cg_tol) j["damping"]["cg_tol"] = *f.cg_tol;
  if (f.window) {
    const auto colon = f.window->find(':');
    if (colon == std::string::npos) throw ConfigError("--window expects LO:HI");
    try {
      std::size_t used = 0;
      const std::string lo = f.window->substr(0, colon), hi = f.window->substr(colon + 1);
      const double a = std::stod(lo, &used);
      if (used != lo.size()) throw std::invalid_argument(lo);
      const double b = std::stod(hi, &used);
      if (used != hi.size()) throw std::invalid_argument(hi);
      j["window"] = json::array({a, b});
    } catch (const std::logic_error&) {
      throw ConfigError("--window expects LO:HI with numbers, got '" + *f.window + "'");
    }
  }
  if (f.reference) j["reference"] = *f.reference;
  if (f.out) j["out_dir"] = *f.out;
  if (f.workers) j["workers"] = *f.workers;
  return j;
}

RunConfig resolve(const RunFlags& f) {
  std::optional<RunConfig> base;
  if (!f.preset.empty()) base = preset(f.preset);
  RunConfig cfg = f.config.empty() ? base.value_or(RunConfig{})
                                   : load_config(f.config, base ? &*base : nullptr);
  return with_overrides(std::move(cfg), flag_overrides(f));
}

int do_run(const RunFlags& f, bool require_sweep) {
  const RunConfig cfg = resolve(f);
  if (f.print_config) {
    std::cout << dump_config(cfg);
    return 0;
  }
  if (require_sweep && cfg.sweep.empty())
    throw ConfigError("sweep: the configuration has no sweep axes (use run for a single cell)");
  const auto records = run_sweep(cfg, cfg.workers);
  if (cfg.sweep.empty()) {
    std::cout << to_json(records.front()).dump(2) << "\n";
  } else {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    std::cout << arr.dump(2) << "\n";
  }
  for (const auto& r : records)
    if (r.failure) std::cerr << "sdamp: " << (r.cell.empty() ? cfg.name : r.cell) << ": " << *r.failure << "\n";
  return exit_code(records);
}

void write_report(const std::string& out_dir, const std::string& name, const json& doc) {
  if (out_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const std::string path = (std::filesystem::path(out_dir) / (name + ".json")).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("failed writing '" + path + "'");
}

int do_analyze(const std::string& which, const std::string& out_dir, std::size_t workers,
               double t) {
  json doc;
  if (which == "table2") {
    doc = json::array();
    for (const auto& row : run_table2(workers, {}, t)) doc.push_back(to_json(row));
  } else if (which == "bounds-sweep") {
    json points = json::array(), trap = json::array();
    for (const auto& p : run_bounds_sweep({100.0, 200.0, 400.0}, {20.0, 50.0, 150.0}))
      points.push_back(to_json(p));
    for (const auto& c : run_trapezoid_checks()) trap.push_back(to_json(c));
    doc = {{"points", points}, {"trapezoid", trap}};
  } else {
    throw ConfigError("analyze-linkdv: unknown preset '" + which + "' (expected table2 | bounds-sweep)");
  }
  write_report(out_dir, "linkdv-" + which, doc);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

void list_presets() {
  std::cout << "presets:\n";
  for (const auto& p : preset_list()) {
    const RunConfig c = preset(p.name);
    std::printf("  %-20s %s%s\n", p.name.c_str(), p.description.c_str(),
                c.long_running ? " [long-running]" : "");
  }
  std::cout << "analyze-linkdv presets:\n";
  std::printf("  %-20s %s\n", "table2", "damped linearized KdV vs the periodic heuristic, four rows");
  std::printf("  %-20s %s\n", "bounds-sweep", "lattice-sum and trapezoid error bounds over (L, t)");
  std::cout << "initial conditions:\n";
  for (const auto& ic : initial_condition_list())
    std::printf("  %-20s %-44s %s\n", ic.name.c_str(), ic.expression.c_str(), ic.description.c_str());
  std::cout << "models:\n";
  for (const auto& m : model_names()) std::printf("  %s\n", m.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Damped Fourier solver for dispersive PDEs"};
  app.require_subcommand(1);

  RunFlags run_flags, sweep_flags;
  auto* run = app.add_subcommand("run", "run one configuration (or its sweep)");
  add_run_flags(run, run_flags);
  auto* sweep = app.add_subcommand("sweep", "run every cell of a configured sweep");
  add_run_flags(sweep, sweep_flags);

  std::string analyze_preset = "table2", analyze_out;
  std::size_t analyze_workers = 1;
  double analyze_t = 150.0;
  auto* analyze = app.add_subcommand("analyze-linkdv", "linearized-KdV heuristic and bound reports");
  analyze->add_option("--preset", analyze_preset, "table2 | bounds-sweep");
  analyze->add_option("--out", analyze_out, "directory for the JSON report");
  analyze->add_option("--workers", analyze_workers, "concurrent table rows");
  analyze->add_option("--t-final", analyze_t, "evaluation time for table2");

  app.add_subcommand("list-presets", "list presets, initial conditions and models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return do_run(run_flags, false);
    if (sweep->parsed()) return do_run(sweep_flags, true);
    if (analyze->parsed()) return do_analyze(analyze_preset, analyze_out, analyze_workers, analyze_t);
    list_presets();
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "sdamp: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "sdamp: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "sdamp: numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "sdamp: I/O error: " << e.what() << "\n";
    return 4;
  }
}
