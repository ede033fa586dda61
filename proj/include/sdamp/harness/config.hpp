#pragma once

// Run configuration: JSON load/save, CLI overlays, validation, presets.
//
// Config files are JSON objects. Every key is optional; absent keys keep the
// value of the base (defaults, or the preset named by "preset"). Unknown keys
// are rejected. Sweeps are a list of groups: axes inside a group advance
// together, groups are crossed.
//
//   {
//     "preset": "kdv-t150",
//     "L": 600, "m": 4096, "dt": 0.01, "t_final": 150,
//     "damping": {"mode": "both", "k1": 1, "f1": 1, "f2": 1000},
//     "window": [-99.85, 100.05],
//     "reference": {"kind": "auto", "L": 10000, "m": 65536},
//     "sweep": [{"L": [100, 200], "m": [512, 1024]}, {"damping.mode": ["none", "both"]}]
//   }

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sdamp/damping.hpp"

namespace sdamp::harness {

using json = nlohmann::json;

struct WindowSpec {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const WindowSpec&) const = default;
};

enum class ReferenceKind { None, Analytic, File, Auto };
std::string_view to_string(ReferenceKind k);
ReferenceKind parse_reference_kind(std::string_view s);

struct ReferenceSpec {
  ReferenceKind kind = ReferenceKind::None;
  std::string path;                // File
  std::optional<double> L;         // Auto; default 8 L
  std::optional<std::size_t> m;    // Auto; default scales m with the domain
  bool operator==(const ReferenceSpec&) const = default;
};

struct DampingSettings {
  DampingMode mode = DampingMode::None;
  double k1 = 0.0;
  std::size_t f1 = 1;
  std::size_t f2 = 1000;
  double cg_tol = 1e-10;
  std::size_t cg_max_iters = 0;  // 0 means 10 m
  GammaKind gamma = GammaKind::Right;
  std::optional<double> l1;
  std::optional<double> l2;
  std::optional<double> R;
  bool operator==(const DampingSettings&) const = default;
};

struct SweepAxis {
  std::string key;  // dotted path, e.g. "damping.mode"
  std::vector<json> values;
  bool operator==(const SweepAxis&) const = default;
};

struct SweepGroup {
  std::vector<SweepAxis> axes;
  bool operator==(const SweepGroup&) const = default;
};

struct RunConfig {
  std::string name = "run";
  std::string model = "kdv";
  double L = 100.0;
  std::size_t m = 1024;
  double dt = 0.01;
  double t_final = 1.0;
  // Registry name, or "expr:<expression in x>".
  std::string ic = "gauss";
  double epsilon = 0.031622776601683791;  // Riemann-KdV dispersion, 10^{-1.5}
  std::optional<double> c_minus;          // default q0(-L)
  bool dealias = false;
  DampingSettings damping;
  std::optional<WindowSpec> window;  // default [-R, R]
  ReferenceSpec reference;
  std::string out_dir = "out";
  bool write_solution = true;
  std::size_t workers = 1;
  bool long_running = false;
  std::vector<SweepGroup> sweep;

  bool operator==(const RunConfig&) const = default;
};

json to_json(const RunConfig& cfg);
// Overlays the keys present in `j` onto `base`. Collects structural errors
// (unknown keys, wrong types) into `errors` instead of throwing.
void overlay(RunConfig& base, const json& j, std::vector<std::string>& errors);

// Every semantic violation, one message each; empty when valid. Sweep cells
// are expanded and checked too.
std::vector<std::string> validation_errors(const RunConfig& cfg);
// Throws ConfigError listing every violation.
void validate(const RunConfig& cfg);

// Parses JSON text over `base` (defaults when null), resolving a "preset" key
// first. Parse errors report line and column. The result is validated.
RunConfig parse_config(std::string_view text, std::string_view origin = "<string>",
                       const RunConfig* base = nullptr);
RunConfig load_config(const std::string& path, const RunConfig* base = nullptr);
// Applies `overrides` (same schema) on top of `base` and validates.
RunConfig with_overrides(RunConfig base, const json& overrides);
std::string dump_config(const RunConfig& cfg);

struct PresetInfo {
  std::string name;
  std::string description;
};
const std::vector<PresetInfo>& preset_list();
// Throws ConfigError for unknown names.
RunConfig preset(std::string_view name);

// One sweep cell: label like "L=600,damping.mode=both" and its index in the
// cross product (group-major).
struct SweepCell {
  std::string label;
  std::vector<std::size_t> index;
  RunConfig config;
};
// A config without sweep axes expands to a single unlabeled cell.
std::vector<SweepCell> expand_sweep(const RunConfig& cfg);

}  // namespace sdamp::harness
