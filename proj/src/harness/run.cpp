#include "sdamp/harness/run.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "sdamp/antiderivative.hpp"
#include "sdamp/error.hpp"
#include "sdamp/evolution.hpp"
#include "sdamp/harness/initial_conditions.hpp"
#include "sdamp/models.hpp"

namespace sdamp::harness {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw IoError("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

namespace {

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void write_file(const std::string& path, std::string_view bytes) {
  const fs::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string sanitize(const std::string& label) {
  std::string s = label;
  for (char& ch : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' ||
                    ch == '_' || ch == '=';
    if (!ok) ch = '_';
  }
  return s;
}

DampingConfig damping_config(const DampingSettings& d, const DampingProfile& profile) {
  DampingConfig dc;
  dc.mode = d.mode;
  dc.k1 = d.k1;
  dc.f1 = d.f1;
  dc.f2 = d.f2;
  dc.cg_tol = d.cg_tol;
  dc.cg_max_iters = d.cg_max_iters;
  dc.profile = profile;
  return dc;
}

ProfileParams profile_params(const DampingSettings& d) {
  ProfileParams p;
  p.l1 = d.l1;
  p.l2 = d.l2;
  p.gamma = d.gamma;
  p.comparison_half_width = d.R;
  return p;
}

struct Prepared {
  Grid grid;
  PdeModel model;
  CVec initial;  // samples of the evolved variable (q, or q_x for derivative forms)
  double c_minus;
};

Prepared prepare(const RunConfig& cfg) {
  Grid grid = make_grid(cfg.L, cfg.m);
  const Expression q0 = resolve_initial_condition(cfg.ic);
  const bool derivative_form = model_uses_antiderivative(cfg.model);
  const double c_minus = cfg.c_minus.value_or(q0(-cfg.L).real());
  PdeModel model = make_model(cfg.model, grid, RiemannContext{c_minus, cfg.epsilon});
  model.dealias = cfg.dealias;
  CVec init(grid.size());
  for (std::size_t i = 0; i < init.size(); ++i) {
    const double x = grid.point(i);
    init[i] = derivative_form ? q0.value_and_derivative(x).second : q0(x);
    if (!std::isfinite(init[i].real()) || !std::isfinite(init[i].imag()))
      throw ConfigError("initial condition '" + cfg.ic + "' is not finite at x = " +
                        std::to_string(x));
    if (model.field_kind == FieldKind::Real) {
      if (std::abs(init[i].imag()) > 1e-12 * (1.0 + std::abs(init[i].real())))
        throw ConfigError("model '" + cfg.model + "' needs a real initial condition; '" + cfg.ic +
                          "' is complex at x = " + std::to_string(x));
      init[i] = init[i].real();
    }
  }
  return {grid, std::move(model), std::move(init), c_minus};
}

CVec physical(const Prepared& p, const SpectralField& final_field) {
  CVec q = p.model.uses_antiderivative ? AntiderivativeOperator(p.grid, p.c_minus)(final_field)
                                       : inverse(final_field);
  if (p.model.field_kind == FieldKind::Real)
    for (auto& v : q) v = v.real();
  return q;
}

// Index offset when `ref` contains every point of `grid`, else nullopt.
std::optional<std::ptrdiff_t> coincident_offset(const Grid& grid, const Grid& ref) {
  const double dx = grid.spacing(), dr = ref.spacing();
  if (std::abs(dx - dr) > 1e-12 * dx) return std::nullopt;
  const double shift = (grid.point(0) - ref.point(0)) / dr;
  const double k = std::round(shift);
  if (std::abs(shift - k) > 1e-6 || k < 0) return std::nullopt;
  if (static_cast<std::size_t>(k) + grid.size() > ref.size()) return std::nullopt;
  return static_cast<std::ptrdiff_t>(k);
}

struct WindowError {
  double value = 0.0;
  double at = 0.0;
};

WindowError window_error(const Grid& grid, std::span<const cplx> q, WindowSpec w,
                         const std::function<cplx(std::size_t)>& reference_at) {
  WindowError e;
  bool any = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i);
    if (x < w.lo || x > w.hi) continue;
    any = true;
    const double d = std::abs(q[i] - reference_at(i));
    if (d > e.value || !std::isfinite(d)) {
      e.value = d;
      e.at = x;
    }
  }
  if (!any) throw ConfigError("comparison window contains no grid points");
  return e;
}

WindowError compare_with_entry(const Grid& grid, std::span<const cplx> q, WindowSpec w,
                               const ReferenceCache::Entry& ref, bool derivative_form) {
  if (auto off = coincident_offset(grid, ref.grid)) {
    return window_error(grid, q, w, [&](std::size_t i) {
      return ref.samples[static_cast<std::size_t>(*off) + i];
    });
  }
  if (derivative_form || !ref.field)
    throw ConfigError("reference grid does not contain the run's grid points; derivative-form "
                      "models need a reference with the same spacing and aligned points");
  if (w.lo < -ref.grid.half_width() || w.hi > ref.grid.half_width())
    throw ConfigError("comparison window extends beyond the reference domain");
  return window_error(grid, q, w,
                      [&](std::size_t i) { return evaluate_at(*ref.field, grid.point(i)); });
}

std::string describe_reference(const RunConfig& cfg, double Lr, std::size_t mr) {
  switch (cfg.reference.kind) {
    case ReferenceKind::None: return "";
    case ReferenceKind::Analytic: return "analytic " + cfg.ic;
    case ReferenceKind::File: return "file " + cfg.reference.path;
    case ReferenceKind::Auto: {
      std::ostringstream s;
      s << "auto L=" << Lr << " m=" << mr;
      return s.str();
    }
  }
  return "";
}

std::pair<double, std::size_t> auto_reference_size(const RunConfig& cfg) {
  const double Lr = cfg.reference.L.value_or(8.0 * cfg.L);
  if (cfg.reference.m) return {Lr, *cfg.reference.m};
  const double want = static_cast<double>(cfg.m) * Lr / cfg.L;
  std::size_t mr = 8;
  while (static_cast<double>(mr) < want * (1.0 - 1e-12)) mr *= 2;
  return {Lr, mr};
}

// Same model, IC, dt and step structure on the larger domain with every
// damping mechanism switched off: heat runs keep their Strang half steps with
// an identity heat solve.
ReferenceCache::Entry compute_auto_reference(const RunConfig& cfg, double Lr, std::size_t mr) {
  RunConfig rc = cfg;
  rc.L = Lr;
  rc.m = mr;
  rc.c_minus.reset();
  const Prepared p = prepare(rc);
  DampingConfig dc;
  if (uses_heat(cfg.damping.mode)) {
    dc.mode = DampingMode::HeatOnly;
    dc.k1 = 0.0;
    dc.f1 = cfg.damping.f1;
    dc.profile = DampingProfile::make(p.grid, profile_params(cfg.damping));
  }
  const EvolveSpec spec{p.model, cfg.dt, cfg.t_final, dc, {}};
  EvolutionResult r = evolve(std::span<const cplx>(p.initial), spec);
  ReferenceCache::Entry e{p.grid, physical(p, r.final_field), std::nullopt};
  if (!p.model.uses_antiderivative) e.field = std::move(r.final_field);
  return e;
}

std::string auto_reference_key(const RunConfig& cfg, double Lr, std::size_t mr) {
  json k = {{"model", cfg.model},     {"ic", cfg.ic},
            {"epsilon", cfg.epsilon}, {"dealias", cfg.dealias},
            {"dt", cfg.dt},           {"t_final", cfg.t_final},
            {"L", Lr},                {"m", mr},
            {"split", uses_heat(cfg.damping.mode) ? static_cast<long>(cfg.damping.f1) : 0L}};
  return k.dump();
}

}  // namespace

std::string solution_path(const RunConfig& cfg, const std::string& label) {
  std::string file = cfg.name;
  if (!label.empty()) file += "__" + sanitize(label);
  return (fs::path(cfg.out_dir) / (file + ".csv")).string();
}

std::string format_solution_csv(const Grid& grid, std::span<const cplx> samples) {
  if (samples.size() != grid.size()) throw ConfigError("emit_solution: sample count mismatch");
  std::string out = "x,re,im\n";
  out.reserve(out.size() + samples.size() * 64);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    append_double(out, grid.point(i));
    out.push_back(',');
    append_double(out, samples[i].real());
    out.push_back(',');
    append_double(out, samples[i].imag());
    out.push_back('\n');
  }
  return out;
}

OutputFile emit_solution(const Grid& grid, std::span<const cplx> samples, const std::string& path) {
  const std::string csv = format_solution_csv(grid, samples);
  write_file(path, csv);
  return {path, sha256_hex(csv), csv.size()};
}

SolutionTable read_solution_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read reference file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "x,re,im")
    throw ConfigError(path + ": expected header 'x,re,im'");
  SolutionTable t;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    double v[3];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int k = 0; k < 3; ++k) {
      const auto res = std::from_chars(p, end, v[k]);
      if (res.ec != std::errc() || (k < 2 && (res.ptr == end || *res.ptr != ',')) ||
          (k == 2 && res.ptr != end))
        throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed row");
      p = res.ptr + 1;
    }
    t.x.push_back(v[0]);
    t.q.emplace_back(v[1], v[2]);
  }
  if (t.x.size() < 8) throw ConfigError(path + ": too few rows");
  return t;
}

std::shared_ptr<const ReferenceCache::Entry> ReferenceCache::get(
    const std::string& key, const std::function<Entry()>& compute) {
  std::promise<std::shared_ptr<const Entry>> promise;
  std::shared_future<std::shared_ptr<const Entry>> fut;
  bool owner = false;
  {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      fut = promise.get_future().share();
      entries_.emplace(key, fut);
      owner = true;
    } else {
      fut = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(std::make_shared<const Entry>(compute()));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

RunOutcome run_cell(const RunConfig& cfg_in, const std::string& label,
                    const std::vector<std::size_t>& index, ReferenceCache* cache) {
  RunConfig cfg = cfg_in;
  cfg.sweep.clear();
  validate(cfg);

  RunOutcome out;
  RunRecord& rec = out.record;
  rec.cell = label;
  rec.cell_index = index;
  rec.config = cfg;

  const Prepared p = prepare(cfg);
  const DampingProfile profile = DampingProfile::make(p.grid, profile_params(cfg.damping));
  rec.window = cfg.window.value_or(WindowSpec{-profile.R, profile.R});
  const auto [Lr, mr] = auto_reference_size(cfg);
  rec.reference = describe_reference(cfg, Lr, mr);

  const EvolveSpec spec{p.model, cfg.dt, cfg.t_final, damping_config(cfg.damping, profile), {}};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const EvolutionResult r = evolve(std::span<const cplx>(p.initial), spec);
    rec.steps = r.steps_taken;
    rec.cg_iterations = r.cg_iterations_total;
    out.samples = physical(p, r.final_field);
    out.grid = p.grid;
  } catch (const BlowUpError& e) {
    rec.blow_up = true;
    rec.steps = e.step();
    rec.failure = e.what();
  } catch (const NumericalError& e) {
    rec.failure = e.what();
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (rec.failed()) return out;

  if (cfg.write_solution && !cfg.out_dir.empty())
    rec.outputs.push_back(emit_solution(p.grid, out.samples, solution_path(cfg, label)));

  std::optional<WindowError> err;
  const bool derivative_form = p.model.uses_antiderivative;
  try {
    switch (cfg.reference.kind) {
      case ReferenceKind::None: break;
      case ReferenceKind::Analytic: {
        const CVec ref = analytic_solution(cfg.ic, cfg.model, p.grid, cfg.t_final);
        err = window_error(p.grid, out.samples, rec.window, [&](std::size_t i) { return ref[i]; });
        break;
      }
      case ReferenceKind::File: {
        const SolutionTable t = read_solution_csv(cfg.reference.path);
        const double Lf = -t.x.front();
        const Grid fg = make_grid(Lf, t.x.size());
        for (std::size_t i = 0; i < t.x.size(); ++i)
          if (std::abs(t.x[i] - fg.point(i)) > 1e-9 * Lf)
            throw ConfigError(cfg.reference.path + ": x column is not a uniform grid on [-L, L)");
        ReferenceCache::Entry e{fg, t.q, std::nullopt};
        if (!derivative_form) e.field = forward(fg, std::span<const cplx>(t.q));
        err = compare_with_entry(p.grid, out.samples, rec.window, e, derivative_form);
        break;
      }
      case ReferenceKind::Auto: {
        auto compute = [&] { return compute_auto_reference(cfg, Lr, mr); };
        std::shared_ptr<const ReferenceCache::Entry> e;
        if (cache)
          e = cache->get(auto_reference_key(cfg, Lr, mr), compute);
        else
          e = std::make_shared<const ReferenceCache::Entry>(compute());
        err = compare_with_entry(p.grid, out.samples, rec.window, *e, derivative_form);
        break;
      }
    }
  } catch (const BlowUpError& e) {
    rec.failure = std::string("reference run failed: ") + e.what();
  } catch (const NumericalError& e) {
    rec.failure = std::string("reference run failed: ") + e.what();
  }
  if (err) {
    rec.max_window_error = err->value;
    rec.error_at_x = err->at;
  }
  return out;
}

json to_json(const RunRecord& r, bool include_timing) {
  json cfg = to_json(r.config);
  cfg.erase("sweep");
  json j = {{"cell", r.cell},
            {"cell_index", r.cell_index},
            {"config", std::move(cfg)},
            {"steps", r.steps},
            {"cg_iterations", r.cg_iterations},
            {"blow_up", r.blow_up},
            {"window", json::array({r.window.lo, r.window.hi})}};
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  if (r.failure) j["failure"] = *r.failure;
  if (!r.reference.empty()) j["reference"] = r.reference;
  if (r.max_window_error) j["max_window_error"] = *r.max_window_error;
  if (r.error_at_x) j["error_at_x"] = *r.error_at_x;
  json outs = json::array();
  for (const auto& o : r.outputs)
    outs.push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  j["outputs"] = std::move(outs);
  return j;
}

std::vector<RunRecord> run_sweep(const RunConfig& cfg, std::size_t workers) {
  validate(cfg);
  const std::vector<SweepCell> cells = expand_sweep(cfg);
  std::vector<std::optional<RunRecord>> slots(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  ReferenceCache cache;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        slots[i] = run_cell(cells[i].config, cells[i].label, cells[i].index, &cache).record;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(workers, cells.size()));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<RunRecord> records;
  for (auto& s : slots) records.push_back(std::move(*s));
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.cell_index < b.cell_index; });

  if (!cfg.out_dir.empty()) {
    const bool single = cfg.sweep.empty();
    json doc = single ? to_json(records.front()) : json::array();
    if (!single)
      for (const auto& r : records) doc.push_back(to_json(r));
    const std::string path =
        (fs::path(cfg.out_dir) / (cfg.name + (single ? ".record.json" : ".records.json"))).string();
    write_file(path, doc.dump(2) + "\n");
  }
  return records;
}

int exit_code(const std::vector<RunRecord>& records) {
  for (const auto& r : records)
    if (r.failed()) return 3;
  return 0;
}

}  // namespace sdamp::harness
