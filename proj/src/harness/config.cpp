#include "sdamp/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sdamp/error.hpp"
#include "sdamp/harness/initial_conditions.hpp"
#include "sdamp/models.hpp"

namespace sdamp::harness {

std::string_view to_string(ReferenceKind k) {
  switch (k) {
    case ReferenceKind::None: return "none";
    case ReferenceKind::Analytic: return "analytic";
    case ReferenceKind::File: return "file";
    case ReferenceKind::Auto: return "auto";
  }
  return "none";
}

ReferenceKind parse_reference_kind(std::string_view s) {
  if (s == "none") return ReferenceKind::None;
  if (s == "analytic") return ReferenceKind::Analytic;
  if (s == "file") return ReferenceKind::File;
  if (s == "auto") return ReferenceKind::Auto;
  throw ConfigError("unknown reference kind '" + std::string(s) +
                    "' (expected none|analytic|file|auto)");
}

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Typed field readers; a failed read records an error and leaves the target.
class Reader {
 public:
  Reader(std::vector<std::string>& errors, std::string prefix)
      : errors_(errors), prefix_(std::move(prefix)) {}

  void error(const std::string& key, const std::string& what) {
    errors_.push_back("'" + prefix_ + key + "': " + what);
  }
  void number(const std::string& key, const json& v, double& out) {
    if (v.is_number())
      out = v.get<double>();
    else
      error(key, "expected a number");
  }
  void optional_number(const std::string& key, const json& v, std::optional<double>& out) {
    if (v.is_null())
      out.reset();
    else if (v.is_number())
      out = v.get<double>();
    else
      error(key, "expected a number or null");
  }
  void count(const std::string& key, const json& v, std::size_t& out) {
    if (v.is_number_unsigned())
      out = v.get<std::size_t>();
    else if (v.is_number() && v.get<double>() >= 0 && std::floor(v.get<double>()) == v.get<double>())
      out = static_cast<std::size_t>(v.get<double>());
    else
      error(key, "expected a non-negative integer");
  }
  void string(const std::string& key, const json& v, std::string& out) {
    if (v.is_string())
      out = v.get<std::string>();
    else
      error(key, "expected a string");
  }
  void boolean(const std::string& key, const json& v, bool& out) {
    if (v.is_boolean())
      out = v.get<bool>();
    else
      error(key, "expected true or false");
  }
  template <class Enum>
  void enumeration(const std::string& key, const json& v, Enum& out,
                   Enum (*parse)(std::string_view)) {
    if (!v.is_string()) return error(key, "expected a string");
    try {
      out = parse(v.get<std::string>());
    } catch (const ConfigError& e) {
      error(key, e.what());
    }
  }

 private:
  std::vector<std::string>& errors_;
  std::string prefix_;
};

void overlay_damping(DampingSettings& d, const json& j, std::vector<std::string>& errors) {
  Reader r(errors, "damping.");
  if (!j.is_object()) {
    errors.push_back("'damping': expected an object");
    return;
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "mode")
      r.enumeration(key, v, d.mode, &parse_damping_mode);
    else if (key == "k1")
      r.number(key, v, d.k1);
    else if (key == "f1")
      r.count(key, v, d.f1);
    else if (key == "f2")
      r.count(key, v, d.f2);
    else if (key == "cg_tol")
      r.number(key, v, d.cg_tol);
    else if (key == "cg_max_iters")
      r.count(key, v, d.cg_max_iters);
    else if (key == "gamma")
      r.enumeration(key, v, d.gamma, &parse_gamma_kind);
    else if (key == "l1")
      r.optional_number(key, v, d.l1);
    else if (key == "l2")
      r.optional_number(key, v, d.l2);
    else if (key == "R")
      r.optional_number(key, v, d.R);
    else
      errors.push_back("unknown key 'damping." + key + "'");
  }
}

void overlay_reference(ReferenceSpec& ref, const json& j, std::vector<std::string>& errors) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "none" || s == "analytic" || s == "auto") {
      ref = ReferenceSpec{};
      ref.kind = parse_reference_kind(s);
    } else {
      ref = ReferenceSpec{ReferenceKind::File, s, std::nullopt, std::nullopt};
    }
    return;
  }
  if (!j.is_object()) {
    errors.push_back("'reference': expected an object or a string");
    return;
  }
  Reader r(errors, "reference.");
  for (const auto& [key, v] : j.items()) {
    if (key == "kind") {
      r.enumeration(key, v, ref.kind, &parse_reference_kind);
    } else if (key == "path") {
      r.string(key, v, ref.path);
    } else if (key == "L") {
      r.optional_number(key, v, ref.L);
    } else if (key == "m") {
      if (v.is_null()) {
        ref.m.reset();
      } else {
        std::size_t m = 0;
        r.count(key, v, m);
        ref.m = m;
      }
    } else {
      errors.push_back("unknown key 'reference." + key + "'");
    }
  }
}

void overlay_window(std::optional<WindowSpec>& w, const json& j, std::vector<std::string>& errors) {
  if (j.is_null()) {
    w.reset();
    return;
  }
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    w = WindowSpec{j[0].get<double>(), j[1].get<double>()};
    return;
  }
  errors.push_back("'window': expected [lo, hi] or null");
}

const std::vector<std::string>& sweepable_keys() {
  static const std::vector<std::string> keys = {
      "model",        "L",          "m",          "dt",          "t_final",
      "ic",           "epsilon",    "c_minus",    "dealias",     "damping.mode",
      "damping.k1",   "damping.f1", "damping.f2", "damping.cg_tol", "damping.cg_max_iters",
      "damping.gamma", "damping.l1", "damping.l2", "damping.R",   "reference.kind",
      "reference.L",  "reference.m", "reference.path"};
  return keys;
}

void overlay_sweep(std::vector<SweepGroup>& sweep, const json& j, std::vector<std::string>& errors) {
  sweep.clear();
  if (j.is_null()) return;
  if (!j.is_array()) {
    errors.push_back("'sweep': expected a list of groups");
    return;
  }
  for (std::size_t g = 0; g < j.size(); ++g) {
    const json& group = j[g];
    if (!group.is_object()) {
      errors.push_back("'sweep[" + std::to_string(g) + "]': expected an object of lists");
      continue;
    }
    SweepGroup sg;
    for (const auto& [key, values] : group.items()) {
      if (!values.is_array()) {
        errors.push_back("'sweep[" + std::to_string(g) + "]." + key + "': expected a list");
        continue;
      }
      sg.axes.push_back({key, values.get<std::vector<json>>()});
    }
    sweep.push_back(std::move(sg));
  }
}

json sweep_to_json(const std::vector<SweepGroup>& sweep) {
  json out = json::array();
  for (const auto& g : sweep) {
    json obj = json::object();
    for (const auto& a : g.axes) obj[a.key] = a.values;
    out.push_back(std::move(obj));
  }
  return out;
}

bool is_power_of_two(std::size_t m) { return m >= 8 && (m & (m - 1)) == 0; }

// Floats in shortest round-trip form, so 100.0 labels as "100".
std::string value_label(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return std::string(buf, res.ptr);
  }
  return v.dump();
}

}  // namespace

json to_json(const RunConfig& c) {
  const auto& d = c.damping;
  json damping = {{"mode", std::string(to_string(d.mode))},
                  {"k1", d.k1},
                  {"f1", d.f1},
                  {"f2", d.f2},
                  {"cg_tol", d.cg_tol},
                  {"cg_max_iters", d.cg_max_iters},
                  {"gamma", std::string(to_string(d.gamma))},
                  {"l1", opt(d.l1)},
                  {"l2", opt(d.l2)},
                  {"R", opt(d.R)}};
  json reference = {{"kind", std::string(to_string(c.reference.kind))},
                    {"path", c.reference.path},
                    {"L", opt(c.reference.L)},
                    {"m", c.reference.m ? json(*c.reference.m) : json(nullptr)}};
  return json{{"name", c.name},
              {"model", c.model},
              {"L", c.L},
              {"m", c.m},
              {"dt", c.dt},
              {"t_final", c.t_final},
              {"ic", c.ic},
              {"epsilon", c.epsilon},
              {"c_minus", opt(c.c_minus)},
              {"dealias", c.dealias},
              {"damping", std::move(damping)},
              {"window", c.window ? json::array({c.window->lo, c.window->hi}) : json(nullptr)},
              {"reference", std::move(reference)},
              {"out_dir", c.out_dir},
              {"write_solution", c.write_solution},
              {"workers", c.workers},
              {"long_running", c.long_running},
              {"sweep", sweep_to_json(c.sweep)}};
}

void overlay(RunConfig& c, const json& j, std::vector<std::string>& errors) {
  if (!j.is_object()) {
    errors.push_back("configuration must be a JSON object");
    return;
  }
  Reader r(errors, "");
  for (const auto& [key, v] : j.items()) {
    if (key == "name")
      r.string(key, v, c.name);
    else if (key == "model")
      r.string(key, v, c.model);
    else if (key == "L")
      r.number(key, v, c.L);
    else if (key == "m")
      r.count(key, v, c.m);
    else if (key == "dt")
      r.number(key, v, c.dt);
    else if (key == "t_final")
      r.number(key, v, c.t_final);
    else if (key == "ic")
      r.string(key, v, c.ic);
    else if (key == "epsilon")
      r.number(key, v, c.epsilon);
    else if (key == "c_minus")
      r.optional_number(key, v, c.c_minus);
    else if (key == "dealias")
      r.boolean(key, v, c.dealias);
    else if (key == "damping")
      overlay_damping(c.damping, v, errors);
    else if (key == "window")
      overlay_window(c.window, v, errors);
    else if (key == "reference")
      overlay_reference(c.reference, v, errors);
    else if (key == "out_dir")
      r.string(key, v, c.out_dir);
    else if (key == "write_solution")
      r.boolean(key, v, c.write_solution);
    else if (key == "workers")
      r.count(key, v, c.workers);
    else if (key == "long_running")
      r.boolean(key, v, c.long_running);
    else if (key == "sweep")
      overlay_sweep(c.sweep, v, errors);
    else if (key == "preset")
      errors.push_back("'preset' is only accepted at the top level of a config file");
    else
      errors.push_back("unknown key '" + key + "'");
  }
}

std::vector<std::string> validation_errors(const RunConfig& c) {
  std::vector<std::string> e;
  const auto& names = model_names();
  if (std::find(names.begin(), names.end(), c.model) == names.end())
    e.push_back("model '" + c.model + "' is not one of kdv, nls, linkdv, riemann-kdv, kawahara, eckhaus");
  if (!(c.L > 0.0) || !std::isfinite(c.L)) e.push_back("L must be positive");
  if (!is_power_of_two(c.m)) e.push_back("m must be a power of two >= 8");
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) e.push_back("dt must be positive");
  if (!(c.t_final > 0.0) || !std::isfinite(c.t_final)) {
    e.push_back("t_final must be positive");
  } else if (c.dt > 0.0) {
    const double n = std::round(c.t_final / c.dt);
    if (n < 1.0 || std::abs(n * c.dt - c.t_final) > 1e-9 * c.t_final)
      e.push_back("t_final must be an integer multiple of dt");
  }
  try {
    resolve_initial_condition(c.ic);
  } catch (const ConfigError& err) {
    e.push_back(err.what());
  }
  if (!(c.epsilon > 0.0)) e.push_back("epsilon must be positive");
  if (c.c_minus && !std::isfinite(*c.c_minus)) e.push_back("c_minus must be finite");

  const auto& d = c.damping;
  if (!(d.k1 >= 0.0)) e.push_back("damping.k1 must be >= 0");
  if (d.f1 < 1) e.push_back("damping.f1 must be >= 1");
  if (d.f2 < 1) e.push_back("damping.f2 must be >= 1");
  if (!(d.cg_tol > 0.0)) e.push_back("damping.cg_tol must be positive");
  if (d.R && !(*d.R > 0.0)) e.push_back("damping.R must be positive");
  if (d.mode != DampingMode::None && c.L > 0.0) {
    const double l1 = d.l1.value_or(default_l1(c.L));
    const double P = -l1;
    const double R = d.R.value_or(std::min(100.0, 0.9 * P));
    if (!(P < c.L)) e.push_back("damping profile: -L < -P fails (l1 must exceed -L)");
    if (!(R < P)) e.push_back("damping profile: R < P fails");
  }

  if (c.window) {
    if (!(c.window->lo < c.window->hi)) e.push_back("window: lo must be < hi");
    if (c.L > 0.0 && (c.window->hi < -c.L || c.window->lo >= c.L))
      e.push_back("window does not overlap the domain");
  }

  switch (c.reference.kind) {
    case ReferenceKind::None: break;
    case ReferenceKind::Analytic:
      if (!has_analytic_solution(c.ic, c.model))
        e.push_back("reference: no analytic solution for ic '" + c.ic + "' under model '" +
                    c.model + "'");
      break;
    case ReferenceKind::File:
      if (c.reference.path.empty()) e.push_back("reference.path must be set for a file reference");
      break;
    case ReferenceKind::Auto:
      if (c.reference.L && !(*c.reference.L > c.L)) e.push_back("reference.L must exceed L");
      if (c.reference.m && !is_power_of_two(*c.reference.m))
        e.push_back("reference.m must be a power of two >= 8");
      break;
  }
  if (c.workers < 1) e.push_back("workers must be >= 1");
  if (c.write_solution && c.out_dir.empty()) e.push_back("out_dir must be set to write solutions");

  if (!c.sweep.empty()) {
    const auto& allowed = sweepable_keys();
    std::vector<std::string> seen;
    bool structural = false;
    for (std::size_t g = 0; g < c.sweep.size(); ++g) {
      const auto& group = c.sweep[g];
      if (group.axes.empty()) {
        e.push_back("sweep group " + std::to_string(g) + " is empty");
        structural = true;
      }
      for (const auto& axis : group.axes) {
        if (std::find(allowed.begin(), allowed.end(), axis.key) == allowed.end()) {
          e.push_back("sweep key '" + axis.key + "' is not a sweepable scalar field");
          structural = true;
        }
        if (std::find(seen.begin(), seen.end(), axis.key) != seen.end()) {
          e.push_back("sweep key '" + axis.key + "' appears more than once");
          structural = true;
        }
        seen.push_back(axis.key);
        if (axis.values.empty()) {
          e.push_back("sweep key '" + axis.key + "' has no values");
          structural = true;
        }
        if (axis.values.size() != group.axes.front().values.size()) {
          e.push_back("sweep group " + std::to_string(g) + ": lists differ in length");
          structural = true;
        }
      }
    }
    if (!structural) {
      try {
        for (const auto& cell : expand_sweep(c))
          for (const auto& msg : validation_errors(cell.config))
            e.push_back("cell [" + cell.label + "]: " + msg);
      } catch (const ConfigError& err) {
        e.push_back(err.what());
      }
    }
  }
  return e;
}

void validate(const RunConfig& cfg) {
  const auto errs = validation_errors(cfg);
  if (errs.empty()) return;
  std::string msg = "invalid configuration:";
  for (const auto& s : errs) msg += "\n  - " + s;
  throw ConfigError(msg);
}

RunConfig parse_config(std::string_view text, std::string_view origin, const RunConfig* base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(err.byte ? err.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = err.what();
    if (auto p = what.find("parse error"); p != std::string::npos) what = what.substr(p);
    throw ConfigError(std::string(origin) + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": " + what);
  }
  RunConfig cfg = base ? *base : RunConfig{};
  if (j.is_object() && j.contains("preset")) {
    if (base) throw ConfigError(std::string(origin) + ": 'preset' conflicts with --preset");
    if (!j["preset"].is_string())
      throw ConfigError(std::string(origin) + ": 'preset' must be a string");
    cfg = preset(j["preset"].get<std::string>());
    j.erase("preset");
  }
  std::vector<std::string> errors;
  overlay(cfg, j, errors);
  if (!errors.empty()) {
    std::string msg = std::string(origin) + ": invalid configuration:";
    for (const auto& s : errors) msg += "\n  - " + s;
    throw ConfigError(msg);
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path, const RunConfig* base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path, base);
}

RunConfig with_overrides(RunConfig base, const json& overrides) {
  std::vector<std::string> errors;
  overlay(base, overrides, errors);
  if (!errors.empty()) {
    std::string msg = "invalid overrides:";
    for (const auto& s : errors) msg += "\n  - " + s;
    throw ConfigError(msg);
  }
  validate(base);
  return base;
}

std::string dump_config(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

std::vector<SweepCell> expand_sweep(const RunConfig& cfg) {
  RunConfig base = cfg;
  base.sweep.clear();
  if (cfg.sweep.empty()) return {SweepCell{"", {}, base}};

  std::vector<SweepCell> cells;
  std::vector<std::size_t> index(cfg.sweep.size(), 0);
  for (;;) {
    json patch = json::object();
    std::string label;
    for (std::size_t g = 0; g < cfg.sweep.size(); ++g) {
      for (const auto& axis : cfg.sweep[g].axes) {
        const json& v = axis.values.at(index[g]);
        const auto dot = axis.key.find('.');
        if (dot == std::string::npos)
          patch[axis.key] = v;
        else
          patch[axis.key.substr(0, dot)][axis.key.substr(dot + 1)] = v;
        if (!label.empty()) label += ",";
        label += axis.key + "=" + value_label(v);
      }
    }
    RunConfig cell = base;
    std::vector<std::string> errors;
    overlay(cell, patch, errors);
    if (!errors.empty()) {
      std::string msg = "sweep cell [" + label + "]:";
      for (const auto& s : errors) msg += " " + s + ";";
      throw ConfigError(msg);
    }
    cells.push_back({label, index, std::move(cell)});

    std::size_t g = cfg.sweep.size();
    while (g > 0) {
      --g;
      if (++index[g] < cfg.sweep[g].axes.front().values.size()) break;
      index[g] = 0;
      if (g == 0) return cells;
    }
  }
}

// ---------------------------------------------------------------------------
// Presets

namespace {

RunConfig kdv_t150() {
  RunConfig c;
  c.name = "kdv-t150";
  c.model = "kdv";
  c.L = 600.0;
  c.m = 4096;
  c.dt = 0.01;
  c.t_final = 150.0;
  c.ic = "gauss";
  c.damping = {DampingMode::Both, 1.0, 1, 1000, 1e-10, 0, GammaKind::Right, {}, {}, {}};
  c.window = WindowSpec{-99.85, 100.05};
  c.reference = {ReferenceKind::Auto, "", 10000.0, 65536};
  return c;
}

RunConfig exp_even(RunConfig c, std::size_t f2) {
  c.damping = {DampingMode::ExpOnly, 0.0, 1, f2, 1e-10, 0, GammaKind::Even, {}, {}, {}};
  return c;
}

struct PresetEntry {
  PresetInfo info;
  std::function<RunConfig()> make;
};

const std::vector<PresetEntry>& registry() {
  static const std::vector<PresetEntry> entries = {
      {{"kdv-t150", "KdV Gaussian to t = 150 on [-600, 600], heat + decay damping"}, kdv_t150},
      {{"kdv-t50", "kdv-t150 stopped at t = 50, compared with the default auto reference"},
       [] {
         RunConfig c = kdv_t150();
         c.name = "kdv-t50";
         c.t_final = 50.0;
         c.reference = {ReferenceKind::Auto, "", {}, {}};
         return c;
       }},
      {{"table1", "KdV Gaussian at t = 150: (L, m) rows crossed with undamped/damped"},
       [] {
         RunConfig c = kdv_t150();
         c.name = "table1";
         c.sweep = {SweepGroup{{{"L", {100.0, 200.0, 600.0, 1200.0}}, {"m", {512, 1024, 4096, 8192}}}},
                    SweepGroup{{{"damping.mode", {"none", "both"}}}}};
         return c;
       }},
      {{"nls-t150", "NLS modulated Gaussian to t = 150 on [-1200, 1200], even decay mask"},
       [] {
         RunConfig c = exp_even(RunConfig{}, 1000);
         c.name = "nls-t150";
         c.model = "nls";
         c.L = 1200.0;
         c.m = 8192;
         c.dt = 0.01;
         c.t_final = 150.0;
         c.ic = "nls-gauss";
         c.window = WindowSpec{-99.85, 100.05};
         c.reference = {ReferenceKind::Auto, "", {}, {}};
         return c;
       }},
      {{"riemann-kdv-t25", "Riemann problem for q_t + q q_x + eps^2 q_xxx = 0 to t = 25 on [-40, 40]"},
       [] {
         RunConfig c = exp_even(RunConfig{}, 1000);
         c.name = "riemann-kdv-t25";
         c.model = "riemann-kdv";
         c.L = 40.0;
         c.m = 4096;
         c.dt = 0.001;
         c.t_final = 25.0;
         c.ic = "riemann-step";
         return c;
       }},
      {{"kawahara-t24", "Kawahara step problem to t = 24 on [-1000, 1000], decay every 100 steps"},
       [] {
         RunConfig c = exp_even(RunConfig{}, 100);
         c.name = "kawahara-t24";
         c.model = "kawahara";
         c.L = 1000.0;
         c.m = 32768;
         c.dt = 0.001;
         c.t_final = 24.0;
         c.ic = "kawahara-step";
         return c;
       }},
      {{"kawahara-reference", "Kawahara reference on [-1e5, 1e5], m = 2^22 (long-running)"},
       [] {
         RunConfig c;
         c.name = "kawahara-reference";
         c.model = "kawahara";
         c.L = 100000.0;
         c.m = 4194304;
         c.dt = 0.0005;
         c.t_final = 24.0;
         c.ic = "kawahara-step";
         c.window = WindowSpec{-1000.0, 1000.0};
         c.long_running = true;
         return c;
       }},
      {{"linkdv-table2", "Linearized KdV with heat damping vs the whole-line solution, L = 200"},
       [] {
         RunConfig c;
         c.name = "linkdv-table2";
         c.model = "linkdv";
         c.L = 200.0;
         c.m = 1024;
         c.dt = 0.01;
         c.t_final = 150.0;
         c.ic = "linkdv-gauss";
         c.damping = {DampingMode::HeatOnly, 1.0, 1, 1000, 1e-10, 0, GammaKind::Right, {}, {}, {}};
         c.reference = {ReferenceKind::Analytic, "", {}, {}};
         return c;
       }},
      {{"two-soliton", "KdV 6 exp(-x^2) to t = 5 on [-200, 200]"},
       [] {
         RunConfig c;
         c.name = "two-soliton";
         c.model = "kdv";
         c.L = 200.0;
         c.m = 2048;
         c.dt = 0.001;
         c.t_final = 5.0;
         c.ic = "two-soliton";
         c.damping = {DampingMode::Both, 1.0, 1, 1000, 1e-10, 0, GammaKind::Right, {}, {}, {}};
         return c;
       }},
      {{"riemann-sech2", "Riemann-KdV with q0 = -sech^2 x to t = 5 on [-40, 40]"},
       [] {
         RunConfig c = exp_even(RunConfig{}, 1000);
         c.name = "riemann-sech2";
         c.model = "riemann-kdv";
         c.L = 40.0;
         c.m = 4096;
         c.dt = 0.001;
         c.t_final = 5.0;
         c.ic = "riemann-sech2";
         return c;
       }},
      {{"soliton-shelf", "Riemann-KdV with a bump on a step to t = 5 on [-40, 40]"},
       [] {
         RunConfig c = exp_even(RunConfig{}, 1000);
         c.name = "soliton-shelf";
         c.model = "riemann-kdv";
         c.L = 40.0;
         c.m = 4096;
         c.dt = 0.001;
         c.t_final = 5.0;
         c.ic = "soliton-shelf";
         return c;
       }},
      {{"eckhaus", "Eckhaus equation with q0 = exp(-x^2) to t = 10 on [-200, 200]"},
       [] {
         RunConfig c = exp_even(RunConfig{}, 1000);
         c.name = "eckhaus";
         c.model = "eckhaus";
         c.L = 200.0;
         c.m = 1024;
         c.dt = 0.01;
         c.t_final = 10.0;
         c.ic = "eckhaus-gauss";
         return c;
       }},
      {{"kdv-soliton", "KdV one-soliton on [-30, 30] to t = 1 vs the closed form"},
       [] {
         RunConfig c;
         c.name = "kdv-soliton";
         c.model = "kdv";
         c.L = 30.0;
         c.m = 1024;
         c.dt = 0.001;
         c.t_final = 1.0;
         c.ic = "kdv-soliton";
         c.window = WindowSpec{-30.0, 30.0};
         c.reference = {ReferenceKind::Analytic, "", {}, {}};
         return c;
       }},
      {{"nls-soliton", "NLS bright soliton on [-30, 30] to t = 1 vs the closed form"},
       [] {
         RunConfig c;
         c.name = "nls-soliton";
         c.model = "nls";
         c.L = 30.0;
         c.m = 1024;
         c.dt = 0.001;
         c.t_final = 1.0;
         c.ic = "nls-soliton";
         c.window = WindowSpec{-30.0, 30.0};
         c.reference = {ReferenceKind::Analytic, "", {}, {}};
         return c;
       }},
      {{"zero", "Zero initial condition, KdV, compared with the zero solution"},
       [] {
         RunConfig c;
         c.name = "zero";
         c.model = "kdv";
         c.L = 50.0;
         c.m = 256;
         c.dt = 0.01;
         c.t_final = 1.0;
         c.ic = "zero";
         c.reference = {ReferenceKind::Analytic, "", {}, {}};
         return c;
       }},
  };
  return entries;
}

}  // namespace

const std::vector<PresetInfo>& preset_list() {
  static const std::vector<PresetInfo> list = [] {
    std::vector<PresetInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return list;
}

RunConfig preset(std::string_view name) {
  for (const auto& e : registry())
    if (e.info.name == name) return e.make();
  throw ConfigError("unknown preset '" + std::string(name) + "' (see list-presets)");
}

}  // namespace sdamp::harness
