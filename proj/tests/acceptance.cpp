// Acceptance suite. Each criterion prints one PASS/FAIL line per check and the
// process exits non-zero if any check failed.
//
//   acceptance <criterion>...   criterion ids: 1 2 3 3-fast 4 5 6 7 8 9 10, or all

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "dense.hpp"
#include "sdamp/antiderivative.hpp"
#include "sdamp/damping.hpp"
#include "sdamp/error.hpp"
#include "sdamp/evolution.hpp"
#include "sdamp/harness/config.hpp"
#include "sdamp/harness/linkdv_reports.hpp"
#include "sdamp/harness/run.hpp"
#include "sdamp/models.hpp"
#include "test_util.hpp"

using namespace sdamp;
using namespace sdamp::harness;
using namespace testutil;
using std::numbers::pi;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& what) {
  std::printf("%s  %-6s %s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Diagnostic output that does not affect the exit status.
void note(const std::string& id, const std::string& what) {
  std::printf("INFO  %-6s %s\n", id.c_str(), what.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

RunOutcome quiet_run(RunConfig cfg) {
  cfg.write_solution = false;
  return run_cell(cfg);
}

CVec kdv_soliton(const Grid& g, double t) {
  return sample(g, [&](double x) {
    const double s = sech(x - 4.0 * t);
    return cplx(2.0 * s * s);
  });
}

CVec nls_soliton(const Grid& g, double eta, double v, double t) {
  return sample(g, [&](double x) {
    return eta * sech(eta * (x - 2 * v * t)) * std::exp(cplx(0, v * x + (eta * eta - v * v) * t));
  });
}

EvolveSpec plain(PdeModel model, double dt, double T) {
  return EvolveSpec{.model = std::move(model), .dt = dt, .t_final = T, .damping = {},
                    .snapshot_times = {}};
}

// ---------------------------------------------------------------------------

void criterion_1() {
  for (const Table2Row& row : run_table2(workers())) {
    report("1", row.within_factor_two(),
           fmt("linkdv L=%g m=%zu: max window difference %.4g vs published %g (ratio %.2f, %.0f s)",
               row.L, row.m, row.result.max_difference, row.published, row.ratio(),
               row.result.wall_seconds));
  }
}

void criterion_2() {
  const Grid g = make_grid(30.0, 1024);
  const EvolutionResult k = evolve(kdv_soliton(g, 0.0), plain(kdv_model(g), 1e-3, 1.0));
  const double ek = max_diff(inverse(k.final_field), kdv_soliton(g, 1.0));
  report("2", ek <= 1e-6, fmt("KdV soliton L=30 m=1024 dt=1e-3 t=1: max error %.3g <= 1e-6", ek));

  const EvolutionResult n = evolve(nls_soliton(g, 1.0, 1.0, 0.0), plain(nls_model(g), 1e-3, 1.0));
  const double en = max_diff(inverse(n.final_field), nls_soliton(g, 1.0, 1.0, 1.0));
  report("2", en <= 1e-6, fmt("NLS soliton eta=1 v=1 L=30 m=1024 dt=1e-3 t=1: max error %.3g <= 1e-6", en));
}

void report_reference_run(const std::string& id, const RunOutcome& out, bool want_large,
                          double threshold, const std::string& label) {
  const auto& r = out.record;
  if (r.failed() || !r.max_window_error) {
    report(id, false, label + ": run failed: " + r.failure.value_or("no reference error"));
    return;
  }
  const double e = *r.max_window_error;
  const bool ok = want_large ? e >= threshold : e <= threshold;
  report(id, ok,
         fmt("%s: max window error %.3g %s %g on [%g, %g] vs %s (%.0f s)", label.c_str(), e,
             want_large ? ">=" : "<=", threshold, r.window.lo, r.window.hi, r.reference.c_str(),
             r.wall_seconds));
}

void criterion_3() {
  RunConfig undamped = preset("kdv-t150");
  undamped.L = 200.0;
  undamped.m = 1024;
  undamped.damping.mode = DampingMode::None;
  undamped.reference = ReferenceSpec{.kind = ReferenceKind::Auto, .path = "", .L = std::nullopt,
                                     .m = std::nullopt};
  report_reference_run("3a", quiet_run(undamped), true, 0.1, "undamped KdV L=200 m=1024 T=150");
  report_reference_run("3b", quiet_run(preset("kdv-t150")), false, 1e-5,
                       "damped KdV L=600 m=4096 T=150");
}

void criterion_3_fast() {
  report_reference_run("3-fast", quiet_run(preset("kdv-t50")), false, 1e-5,
                       "damped KdV L=600 m=4096 T=50");
  RunConfig small = preset("kdv-t50");
  small.L = 300.0;
  small.m = 2048;
  small.window = WindowSpec{-100.0, 100.0};
  small.reference = ReferenceSpec{.kind = ReferenceKind::Auto, .path = "", .L = 3000.0, .m = 32768};
  report_reference_run("3-fast", quiet_run(small), false, 1e-5,
                       "damped KdV L=300 m=2048 T=50 vs undamped L=3000");
}

void criterion_4() {
  const Grid g = make_grid(30.0, 1024);
  const PdeModel kdv = kdv_model(g);
  const SpectralField c0 = forward(g, kdv_soliton(g, 0.0));
  const CVec exact = kdv_soliton(g, 1.0);
  std::vector<double> dts = {2e-3, 1e-3, 5e-4, 2.5e-4}, errs;
  for (double dt : dts) {
    const auto steps = static_cast<std::size_t>(std::lround(1.0 / dt));
    errs.push_back(max_diff(inverse(evolve_undamped(c0, kdv, dt, steps)), exact));
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double p = std::log2(errs[i - 1] / errs[i]);
    report("4", std::abs(p - 4.0) <= 0.3,
           fmt("KdV soliton dt %g -> %g: error %.3g -> %.3g, observed order %.3f (4 +/- 0.3)",
               dts[i - 1], dts[i], errs[i - 1], errs[i], p));
  }
}

void criterion_5() {
  {
    const Grid g = make_grid(50.0, 1024);
    const PdeModel kdv = kdv_model(g);
    SpectralField c = forward(g, sample(g, [](double x) { return cplx(1.3 * std::exp(-x * x)); }));
    const cplx m0 = c.mean();
    c = evolve_undamped(c, kdv, 1e-3, 10000);
    const double drift = std::abs(c.mean() - m0) / std::abs(m0);
    report("5", drift <= 1e-10,
           fmt("KdV 1.3 exp(-x^2) L=50 m=1024, 1e4 steps dt=1e-3: relative c0 drift %.3g <= 1e-10",
               drift));
  }
  {
    const Grid g = make_grid(50.0, 1024);
    const PdeModel nls = nls_model(g);
    SpectralField c = forward(g, sample(g, [](double x) {
      return (1.0 + x) * std::exp(cplx(-0.7 * x * x, x));
    }));
    const double n0 = norm2(c.coeffs);
    c = evolve_undamped(c, nls, 0.01, 10000);
    const double drift = std::abs(norm2(c.coeffs) * norm2(c.coeffs) - n0 * n0) / (n0 * n0);
    report("5", drift <= 1e-8,
           fmt("NLS (1+x)exp(ix-0.7x^2) L=50 m=1024, 1e4 steps dt=0.01: relative sum|c|^2 drift "
               "%.3g <= 1e-8",
               drift));
  }
}

void criterion_6() {
  std::mt19937_64 rng(2024);
  {
    const Grid g = make_grid(40.0, 256);
    const HeatStep heat(g, sigma_profile(g, default_l1(40.0), default_l2(40.0)), 1.0, 0.01, 1e-12, 2560);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const CVec c = random_vector(256, rng);
      worst = std::max(worst, norm2(heat.solve(c).x) / norm2(c));
    }
    report("6a", worst <= 1.0 + 1e-12,
           fmt("heat step on 200 random fields: max |out|/|in| = %.15f <= 1", worst));
  }
  {
    const Grid g = make_grid(20.0, 128);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const CVec q = random_vector(128, rng);
      RVec gamma(128);
      for (auto& v : gamma) v = u(rng);
      const CVec out = inverse(apply_decay(forward(g, q), gamma));
      for (std::size_t i = 0; i < 128; ++i) worst = std::max(worst, std::abs(out[i]) - std::abs(q[i]));
    }
    report("6b", worst <= 1e-12, fmt("decay mask: max pointwise growth %.3g <= 1e-12", worst));
  }
  {
    const Grid g = make_grid(10.0, 64);
    const HeatStep heat(g, sigma_profile(g, default_l1(10.0), default_l2(10.0)), 1.0, 0.05, 1e-13, 640);
    const LinearOperator B = [&](std::span<const cplx> in, std::span<cplx> out) { heat.apply_B(in, out); };
    const LinearOperator A = [&](std::span<const cplx> in, std::span<cplx> out) { heat.apply_A(in, out); };
    const CVec c = forward(g, random_vector(64, rng)).coeffs;
    const CVec direct = solve(assemble(B, 64), matvec(assemble(A, 64), c));
    const double d = max_diff(heat.solve(c).x, direct);
    report("6c", d <= 1e-10, fmt("heat step vs dense direct solve, m=64: max difference %.3g <= 1e-10", d));
  }
  {
    const Grid g = make_grid(200.0, 1024);
    const HeatStep heat(g, sigma_profile(g, default_l1(200.0), default_l2(200.0)), 1.0, 0.01, 1e-10, 10240);
    const double d = heat.hermitian_defect(50, 77u);
    report("6d", d <= 1e-10, fmt("B Hermitian on 50 random pairs, m=1024: max defect %.3g <= 1e-10", d));
  }
}

void criterion_7() {
  const double L = 40.0;
  const Grid g = make_grid(L, 4096);
  auto q0 = [](double x) { return 1.0 / (1.0 + std::exp(10.0 * x)); };
  const SpectralField u = forward(g, sample(g, [](double x) {
    const double s = sech(5.0 * x);
    return cplx(-2.5 * s * s);
  }));
  const double e = max_diff(AntiderivativeOperator(g, q0(-L))(u),
                            sample(g, [&](double x) { return cplx(q0(x)); }));
  report("7", e <= 1e-8, fmt("H(q0') for the logistic step, L=40 m=4096: max error %.3g <= 1e-8", e));

  const Grid h = make_grid(20.0, 512);
  const double r = derivative_roundtrip_check(h, sample(h, [](double x) { return cplx(std::exp(-x * x)); }));
  report("7", r <= 1e-10, fmt("Gaussian round trip, L=20 m=512: residual %.3g <= 1e-10", r));
}

double shelf_mean(const RunOutcome& out) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < out.grid->size(); ++i) {
    const double x = out.grid->point(i);
    if (x < 20.0 || x > 35.0) continue;
    sum += out.samples[i].real();
    ++n;
  }
  return sum / static_cast<double>(n);
}

struct KawaharaSetup {
  const char* label;
  std::string ic;
  std::size_t m;
  std::vector<double> dts;
};

// Physical q at t = 1 for a short Kawahara run on [-50, 50].
CVec kawahara_short(const KawaharaSetup& k, double dt, bool damped) {
  RunConfig c = preset("kawahara-t24");
  c.L = 50.0;
  c.m = k.m;
  c.ic = k.ic;
  c.dt = dt;
  c.t_final = 1.0;
  c.damping.mode = damped ? DampingMode::ExpOnly : DampingMode::None;
  // Masks every 0.5 time units for every dt.
  c.damping.f2 = static_cast<std::size_t>(std::lround(0.5 / dt));
  c.reference = {};
  const RunOutcome out = quiet_run(c);
  if (out.record.failed()) throw NumericalError(*out.record.failure);
  return out.samples;
}

// Observed orders log2(d_{i-1} / d_i) from successive dt halvings.
void kawahara_orders(const KawaharaSetup& k, bool damped, bool gated) {
  std::vector<CVec> q;
  for (double dt : k.dts) q.push_back(kawahara_short(k, dt, damped));
  for (std::size_t i = 2; i < q.size(); ++i) {
    const double a = max_diff(q[i - 2], q[i - 1]);
    const double b = max_diff(q[i - 1], q[i]);
    const double p = std::log2(a / b);
    const std::string what =
        fmt("Kawahara %s %s L=50 m=%zu t=1, dt %g/%g/%g: differences %.3g, %.3g, order %.3f",
            damped ? "damped" : "undamped", k.label, k.m, k.dts[i - 2], k.dts[i - 1], k.dts[i],
            a, b, p);
    if (gated)
      report("8", std::abs(p - 4.0) <= 0.3, what);
    else
      note("8", what);
  }
}

void criterion_8() {
  const RunOutcome damped = quiet_run(preset("riemann-kdv-t25"));
  if (damped.record.failed()) {
    report("8", false, "damped Riemann-KdV run failed: " + *damped.record.failure);
  } else {
    const double m = shelf_mean(damped);
    report("8", std::abs(m) <= 0.02,
           fmt("damped Riemann-KdV t=25: mean q on [20, 35] = %.4f, |mean| <= 0.02", m));
  }
  RunConfig u = preset("riemann-kdv-t25");
  u.damping.mode = DampingMode::None;
  const RunOutcome undamped = quiet_run(u);
  if (undamped.record.failed()) {
    report("8", true, "undamped Riemann-KdV run fails outright: " + *undamped.record.failure);
  } else {
    const double m = shelf_mean(undamped);
    report("8", std::abs(m) > 0.02,
           fmt("undamped Riemann-KdV t=25: mean q on [20, 35] = %.4f, shifted beyond 0.02", m));
  }

  // Modes above 1e-8 of the peak have k <= 3, so dt (k^5 - k^3) <= 0.3 once dt <= 1.25e-3.
  const KawaharaSetup smooth{"sech^2 bump", "expr:2*sech(x/4)^2", 256,
                             {0.0025, 0.00125, 0.000625, 0.0003125}};
  for (bool with_mask : {false, true}) kawahara_orders(smooth, with_mask, true);
  // The step front fills modes where dt k^5 >> 1, so these stay pre-asymptotic.
  const KawaharaSetup step{"step", "kawahara-step", 2048, {0.01, 0.005, 0.0025, 0.00125}};
  for (bool with_mask : {false, true}) kawahara_orders(step, with_mask, false);
}

void criterion_9() {
  const auto points = run_bounds_sweep({100.0, 200.0, 400.0}, {20.0, 50.0, 150.0});
  for (const BoundsPoint& p : points) {
    report("9", p.undamped_ok(),
           fmt("L=%g t=%g: |exact - undamped lattice| %.3g <= 10 x bound %.3g", p.L, p.t,
               p.undamped_measured, p.undamped_bound));
    report("9", p.tail_ok(),
           fmt("L=%g t=%g: |exact - damped integral| %.3g <= tail bound %.3g", p.L, p.t,
               p.tail_measured, p.tail_bound));
  }
  for (const TrapezoidCheck& c : run_trapezoid_checks())
    report("9", c.ok(),
           fmt("trapezoid %s a=%g step=%g: error %.3g <= bound %.3g", c.integrand.c_str(), c.a,
               c.step, c.measured, c.bound));
}

void criterion_10() {
  const RunConfig base = preset("kdv-t150");
  RunConfig fine = base;
  fine.dt = 0.005;
  const RunOutcome a = quiet_run(base);
  const RunOutcome b = quiet_run(fine);
  if (a.record.failed() || b.record.failed()) {
    report("10", false, "damped KdV run failed");
    return;
  }
  const Window w{base.window->lo, base.window->hi};
  const double d = compare_on_window(a.samples, b.samples, *a.grid, w);
  report("10", d <= 1e-7,
         fmt("damped KdV T=150 L=600 m=4096: dt=0.01 vs dt=0.005 max difference %.3g <= 1e-7 on "
             "[%g, %g]",
             d, w.lo, w.hi));
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::function<void()>> criteria = {
      {"1", criterion_1}, {"2", criterion_2}, {"3", criterion_3}, {"3-fast", criterion_3_fast},
      {"4", criterion_4}, {"5", criterion_5}, {"6", criterion_6}, {"7", criterion_7},
      {"8", criterion_8}, {"9", criterion_9}, {"10", criterion_10}};
  const std::vector<std::string> order = {"1", "2", "3-fast", "3", "4", "5", "6", "7", "8", "9", "10"};

  std::vector<std::string> ids(argv + 1, argv + argc);
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = order;
  for (const auto& id : ids) {
    const auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion '%s'\n", id.c_str());
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    try {
      it->second();
    } catch (const std::exception& e) {
      report(id, false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("       criterion %s took %.1f s\n", id.c_str(), secs);
  }
  return failures == 0 ? 0 : 1;
}
