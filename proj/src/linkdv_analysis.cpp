#include "sdamp/linkdv_analysis.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <numbers>

#include "sdamp/damping.hpp"
#include "sdamp/error.hpp"
#include "sdamp/models.hpp"

namespace sdamp::linkdv {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-10;
constexpr int kMaxDoublings = 22;

// 16-point Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration.
struct GaussLegendre {
  static constexpr int n = 16;
  std::array<double, n> x{}, w{};
  GaussLegendre() {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GaussLegendre& gl() {
  static const GaussLegendre rule;
  return rule;
}

template <class T, class F>
T gl_panels(const F& f, double a, double b, std::size_t panels) {
  const auto& r = gl();
  const double h = (b - a) / static_cast<double>(panels);
  T sum{};
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    T part{};
    for (int i = 0; i < GaussLegendre::n; ++i) part += r.w[i] * f(mid + 0.5 * h * r.x[i]);
    sum += part;
  }
  return sum * (0.5 * h);
}

// Composite Gauss-Legendre, doubling panels until the change is below kQuadTol.
template <class T, class F>
T gl_integrate(const F& f, double a, double b) {
  if (!(b > a)) return T{};
  std::size_t panels = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(b - a)));
  T prev = gl_panels<T>(f, a, b, panels);
  for (int d = 0; d < kMaxDoublings; ++d) {
    panels *= 2;
    const T next = gl_panels<T>(f, a, b, panels);
    if (std::abs(next - prev) < kQuadTol) return next;
    prev = next;
  }
  throw NumericalError("Gauss-Legendre quadrature did not converge on [" + std::to_string(a) +
                       ", " + std::to_string(b) + "]");
}

cplx integrand(double k, double x, double t, const WavePacketParams& wp) {
  return std::polar(1.0, k * x + k * k * k * t) * wp.q0_hat(k);
}

double split_k(double t, const WavePacketParams& wp) { return std::sqrt(wp.P / (3.0 * t)); }

// (h / 2pi) sum_{|k_j| <= k_cut} w(k_j) e^{i k_j x + i k_j^3 t} q0_hat(k_j), k_j = j h.
template <class W>
cplx lattice_sum(double x, double t, double h, const WavePacketParams& wp, const W& weight) {
  const auto J = static_cast<long>(std::floor(wp.k_cut / h));
  cplx sum = 0.0;
  for (long j = -J; j <= J; ++j) {
    const double k = static_cast<double>(j) * h;
    sum += weight(k) * integrand(k, x, t, wp);
  }
  return sum * (h / (2.0 * kPi));
}

void require_time(double t, bool allow_zero) {
  if (!(allow_zero ? t >= 0.0 : t > 0.0))
    throw ConfigError(allow_zero ? "time must be >= 0" : "time must be > 0");
}

}  // namespace

void WavePacketParams::validate() const {
  std::string errs;
  if (!q0_hat) errs += " q0_hat is empty;";
  if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) errs += " epsilon0 must lie in (0, 1);";
  if (!(P > 0.0)) errs += " P must be positive;";
  if (!(L > 0.0)) errs += " L must be positive;";
  if (!(R > 0.0)) errs += " R must be positive;";
  if (!(t > 0.0)) errs += " t must be positive;";
  if (!(k_cut > 0.0)) errs += " k_cut must be positive;";
  if (!(sigma0 > 0.0) || !(omega_dwell > 0.0)) errs += " sigma0 and omega must be positive;";
  if (!errs.empty()) throw ConfigError("invalid wave packet parameters:" + errs);
}

WavePacketParams default_params(double L, double t) {
  WavePacketParams wp;
  wp.L = L;
  wp.t = t;
  wp.P = -default_l1(L);
  wp.R = std::min(100.0, 0.9 * wp.P);
  return wp;
}

BoundParams damped_bound_params(double t, const WavePacketParams& wp) {
  require_time(t, false);
  BoundParams b;
  b.a = 1.0 / (3.0 * t);
  b.k_M = split_k(t, wp);
  b.A = std::exp(b.a * wp.R + b.a * b.a * b.a * t + b.a * b.a) / (2.0 * kPi);
  return b;
}

BoundParams undamped_bound_params(double t, double delta, const WavePacketParams& wp) {
  require_time(t, false);
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  BoundParams b;
  b.delta = delta;
  b.a = (1.0 - delta) / (3.0 * t);
  b.k_M = split_k(t, wp);
  b.C = std::sqrt(kPi / (1.0 - 3.0 * b.a * t));
  b.A = b.C * std::exp(b.a * wp.R + b.a * b.a * b.a * t + b.a * b.a) / (2.0 * kPi);
  return b;
}

cplx exact_solution(double x, double t, const WavePacketParams& wp) {
  require_time(t, true);
  const double kc = wp.k_cut;
  // The rule with step h sums the images q(x + 2 pi n / h), so the first step
  // must put every image beyond the dispersive support |x| <= 3 k_cut^2 t.
  const double reach = std::abs(x) + 3.0 * kc * kc * t + 50.0;
  std::size_t n = 512;
  while (2.0 * kc / static_cast<double>(n) > 2.0 * kPi / (2.0 * reach)) n *= 2;
  double h = 2.0 * kc / static_cast<double>(n);
  cplx sum = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double k = -kc + static_cast<double>(i) * h;
    sum += (i == 0 || i == n ? 0.5 : 1.0) * integrand(k, x, t, wp);
  }
  cplx prev = sum * (h / (2.0 * kPi));
  for (int d = 0; d < kMaxDoublings; ++d) {
    h *= 0.5;
    for (std::size_t i = 0; i < n; ++i)
      sum += integrand(-kc + (2.0 * static_cast<double>(i) + 1.0) * h, x, t, wp);
    n *= 2;
    const cplx next = sum * (h / (2.0 * kPi));
    if (std::abs(next - prev) < kQuadTol) return next;
    prev = next;
  }
  throw NumericalError("trapezoidal quadrature did not converge at x = " + std::to_string(x) +
                       ", t = " + std::to_string(t));
}

cplx damped_heuristic_line(double x, double t, const WavePacketParams& wp) {
  require_time(t, false);
  const double kc = wp.k_cut;
  const double kP = std::min(split_k(t, wp), kc);
  auto f = [&](double k) { return integrand(k, x, t, wp); };
  cplx inner = gl_integrate<cplx>(f, -kP, kP);
  cplx outer = gl_integrate<cplx>(f, -kc, -kP) + gl_integrate<cplx>(f, kP, kc);
  return (inner + wp.epsilon0 * outer) / (2.0 * kPi);
}

cplx damped_heuristic_periodic(double x, double t, const WavePacketParams& wp) {
  require_time(t, false);
  const double P = wp.P;
  const double eps0 = wp.epsilon0;
  return lattice_sum(x, t, kPi / wp.L, wp,
                     [&](double k) { return 3.0 * k * k * t < P ? 1.0 : eps0; });
}

cplx undamped_periodic(double x, double t, const WavePacketParams& wp) {
  require_time(t, true);
  return lattice_sum(x, t, kPi / wp.L, wp, [](double) { return 1.0; });
}

double tail_bound(double t, const WavePacketParams& wp) {
  require_time(t, false);
  const double kc = wp.k_cut;
  const double kP = std::min(split_k(t, wp), kc);
  auto f = [&](double k) { return std::abs(wp.q0_hat(k)); };
  const double tail = gl_integrate<double>(f, -kc, -kP) + gl_integrate<double>(f, kP, kc);
  return (1.0 - wp.epsilon0) / (2.0 * kPi) * tail;
}

double pt_condition_min_P(double t, double epsilon1) {
  require_time(t, false);
  if (!(epsilon1 > 0.0 && epsilon1 < 1.0)) throw ConfigError("epsilon1 must lie in (0, 1)");
  const double l = std::log(1.0 / epsilon1);
  return 3.0 * t * l * l;
}

bool pt_condition_holds(double P, double t, double epsilon1) {
  return std::sqrt(P / (3.0 * t)) >= std::log(1.0 / epsilon1);
}

double damped_lattice_bound(double t, const WavePacketParams& wp) {
  const BoundParams b = damped_bound_params(t, wp);
  const double a = b.a;
  return 2.0 * b.k_M / kPi * std::exp(a * wp.R + a * a * a * t + a * a - 2.0 * a * wp.L);
}

double capitalQ_bound(double t, double delta, const WavePacketParams& wp) {
  const BoundParams b = undamped_bound_params(t, delta, wp);
  const double a = b.a;
  return b.C / kPi * std::exp(a * wp.R + a * a * a * t + a * a - 2.0 * a * wp.L);
}

double bound_damped_L(double epsilon, double t, const WavePacketParams& wp) {
  require_time(t, false);
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  return 1.5 * t * std::log(1.0 / epsilon) +
         1.5 * t * std::log(2.0 / kPi * std::sqrt(wp.P / (3.0 * t))) + 0.5 * wp.R +
         2.0 / (9.0 * t);
}

double bound_undamped_L(double epsilon, double t, double delta, const WavePacketParams& wp) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  const BoundParams b = undamped_bound_params(t, delta, wp);
  const double s = 1.0 / (1.0 - delta);
  return s * (1.5 * t * std::log(1.0 / epsilon) + 1.5 * t * std::log(b.C / kPi) + 0.5 * wp.R +
              2.0 / (9.0 * t));
}

double trapezoid_periodic(const std::function<double(double)>& v, double T_period, std::size_t N) {
  if (!(T_period > 0.0) || N == 0) throw ConfigError("trapezoid rule needs T > 0 and N >= 1");
  double sum = 0.0;
  for (std::size_t k = 1; k <= N; ++k)
    sum += v(static_cast<double>(k) * T_period / static_cast<double>(N));
  return T_period / static_cast<double>(N) * sum;
}

double trapezoid_bound_periodic(double T_period, double A, double a, std::size_t N) {
  if (!(T_period > 0.0 && A > 0.0 && a > 0.0) || N == 0)
    throw ConfigError("trapezoid bound needs positive T, A, a, N");
  return 2.0 * T_period * A / std::expm1(2.0 * kPi * a * static_cast<double>(N) / T_period);
}

double trapezoid_bound_line(double A, double a, double h) {
  if (!(A > 0.0 && a > 0.0 && h > 0.0)) throw ConfigError("trapezoid bound needs positive A, a, h");
  return 2.0 * A / std::expm1(2.0 * kPi * a / h);
}

CVec initial_samples(const Grid& grid, const WavePacketParams& wp) {
  CVec q(grid.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = exact_solution(grid.point(i), 0.0, wp);
  return q;
}

FidelityResult heuristic_fidelity(std::size_t m, const WavePacketParams& wp,
                                  const FidelityOptions& opts) {
  wp.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const Grid grid = make_grid(wp.L, m);
  EvolveSpec spec{linear_kdv_model(grid), opts.dt, wp.t, {}, {}};
  spec.damping.mode = DampingMode::HeatOnly;
  spec.damping.k1 = opts.k1;
  spec.damping.f1 = 1;
  spec.damping.profile = DampingProfile::make(grid);
  const auto run = evolve(std::span<const cplx>(initial_samples(grid, wp)), spec);
  const CVec q = inverse(run.final_field);

  FidelityResult res;
  res.window = {spec.damping.profile.l1 + opts.window_margin, opts.window_hi.value_or(wp.L)};
  res.cg_iterations = run.cg_iterations_total;
  bool any = false;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = grid.point(i);
    if (x < res.window.lo || x > res.window.hi) continue;
    any = true;
    const double d = std::abs(q[i] - damped_heuristic_periodic(x, wp.t, wp));
    if (d > res.max_difference) {
      res.max_difference = d;
      res.at_x = x;
    }
  }
  if (!any) throw ConfigError("fidelity window contains no grid points");
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace sdamp::linkdv
