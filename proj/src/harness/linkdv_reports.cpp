#include "sdamp/harness/linkdv_reports.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace sdamp::harness {

using namespace sdamp::linkdv;

const std::vector<Table2Spec>& table2_rows() {
  static const std::vector<Table2Spec> rows = {
      {100.0, 512, 0.02}, {200.0, 1024, 0.01}, {600.0, 4096, 0.007}, {1200.0, 8192, 0.003}};
  return rows;
}

std::vector<Table2Row> run_table2(std::size_t workers, std::vector<std::size_t> rows, double t) {
  const auto& spec = table2_rows();
  if (rows.empty())
    for (std::size_t i = 0; i < spec.size(); ++i) rows.push_back(i);
  std::vector<Table2Row> out(rows.size());
  std::vector<std::exception_ptr> errors(rows.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      try {
        const Table2Spec& s = spec.at(rows[k]);
        out[k].L = s.L;
        out[k].m = s.m;
        out[k].published = s.published;
        out[k].result = heuristic_fidelity(s.m, default_params(s.L, t));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n = std::max<std::size_t>(1, std::min(workers, rows.size()));
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

json to_json(const Table2Row& r) {
  return {{"L", r.L},
          {"m", r.m},
          {"published", r.published},
          {"max_difference", r.result.max_difference},
          {"at_x", r.result.at_x},
          {"window", json::array({r.result.window.lo, r.result.window.hi})},
          {"ratio", r.ratio()},
          {"within_factor_two", r.within_factor_two()},
          {"cg_iterations", r.result.cg_iterations},
          {"wall_seconds", r.result.wall_seconds}};
}

std::vector<BoundsPoint> run_bounds_sweep(const std::vector<double>& Ls,
                                          const std::vector<double>& ts, double delta,
                                          std::size_t samples) {
  std::vector<BoundsPoint> out;
  for (const double L : Ls) {
    for (const double t : ts) {
      const WavePacketParams wp = default_params(L, t);
      BoundsPoint p;
      p.L = L;
      p.t = t;
      p.P = wp.P;
      p.R = wp.R;
      p.delta = delta;
      p.undamped_bound = capitalQ_bound(t, delta, wp);
      p.tail_bound = tail_bound(t, wp);
      p.lattice_bound = damped_lattice_bound(t, wp);
      for (std::size_t i = 0; i < samples; ++i) {
        const double x = -wp.R + 2.0 * wp.R * static_cast<double>(i) / static_cast<double>(samples - 1);
        const cplx exact = exact_solution(x, t, wp);
        const cplx line = damped_heuristic_line(x, t, wp);
        p.undamped_measured = std::max(p.undamped_measured, std::abs(exact - undamped_periodic(x, t, wp)));
        p.tail_measured = std::max(p.tail_measured, std::abs(exact - line));
        p.lattice_measured =
            std::max(p.lattice_measured, std::abs(line - damped_heuristic_periodic(x, t, wp)));
      }
      out.push_back(p);
    }
  }
  return out;
}

json to_json(const BoundsPoint& p) {
  return {{"L", p.L},
          {"t", p.t},
          {"P", p.P},
          {"R", p.R},
          {"delta", p.delta},
          {"undamped_measured", p.undamped_measured},
          {"undamped_bound", p.undamped_bound},
          {"undamped_ok", p.undamped_ok()},
          {"tail_measured", p.tail_measured},
          {"tail_bound", p.tail_bound},
          {"tail_ok", p.tail_ok()},
          {"lattice_measured", p.lattice_measured},
          {"lattice_bound", p.lattice_bound}};
}

std::vector<TrapezoidCheck> run_trapezoid_checks() {
  constexpr double pi = std::numbers::pi;
  std::vector<TrapezoidCheck> out;
  // int_0^{2pi} e^{sin theta} = 2 pi I_0(1); |e^{sin(E + i eta)}| <= e^{cosh a} on the strip.
  const double exact_periodic = 2.0 * pi * std::cyl_bessel_i(0.0, 1.0);
  for (const double a : {0.5, 1.0, 2.0}) {
    for (std::size_t N = 1; N <= 12; ++N) {
      const double approx = trapezoid_periodic([](double th) { return std::exp(std::sin(th)); },
                                               2.0 * pi, N);
      out.push_back({"exp(sin(theta))", a, static_cast<double>(N), std::abs(approx - exact_periodic),
                     trapezoid_bound_periodic(2.0 * pi, std::exp(std::cosh(a)), a, N)});
    }
  }
  // int e^{-k^2} = sqrt(pi); int |e^{-(E + i eta)^2}| dE = sqrt(pi) e^{eta^2}.
  for (const double a : {0.5, 1.0, 2.0}) {
    for (const double h : {0.4, 0.6, 0.8, 1.0, 1.5}) {
      double sum = 0.0;
      for (long j = -200; j <= 200; ++j) {
        const double k = static_cast<double>(j) * h;
        sum += std::exp(-k * k);
      }
      out.push_back({"exp(-k^2)", a, h, std::abs(h * sum - std::sqrt(pi)),
                     trapezoid_bound_line(std::sqrt(pi) * std::exp(a * a), a, h)});
    }
  }
  return out;
}

json to_json(const TrapezoidCheck& c) {
  return {{"integrand", c.integrand}, {"a", c.a},         {"step", c.step},
          {"measured", c.measured},   {"bound", c.bound}, {"ok", c.ok()}};
}

}  // namespace sdamp::harness
