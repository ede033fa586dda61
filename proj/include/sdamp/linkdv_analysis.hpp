#pragma once

// Linearized KdV q_t + q_xxx = 0: whole-line solution by quadrature, the
// periodic lattice sums that model undamped and damped Fourier solutions, and
// the trapezoidal-rule error bounds relating them.
//
// Conventions: q(x,t) = (1/2pi) int e^{ikx + ik^3 t} q0_hat(k) dk, and lattice
// sums use k_j = pi j / L with weight 1/(2L).

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>

#include "sdamp/evolution.hpp"
#include "sdamp/spectral.hpp"

namespace sdamp::linkdv {

struct WavePacketParams {
  std::function<cplx(double)> q0_hat = [](double k) { return cplx(std::exp(-k * k)); };
  // |q0_hat(k)| < 1e-16 for |k| > k_cut; sqrt(ln 1e16) for the Gaussian.
  double k_cut = 6.0697085;
  double P = 60.0;
  double epsilon0 = 1e-3;
  double sigma0 = 1.0;
  double omega_dwell = 6.907755278982137;  // -ln(epsilon0) / sigma0
  double R = 50.0;
  double L = 100.0;
  double t = 150.0;

  // epsilon0 in (0, 1), positive P, L, R, t, k_cut. Throws ConfigError.
  void validate() const;
};

// Defaults on [-L, L]: P = L/2 + 10 (inner edge of the sigma profile),
// R = min(100, 0.9 P).
WavePacketParams default_params(double L, double t);

struct BoundParams {
  double a = 0.0;
  double delta = 0.0;
  double epsilon1 = 0.0;
  double k_M = 0.0;
  double A = 0.0;
  double C = 0.0;
};

// a = 1/(3t), k_M = sqrt(P/3t), A = e^{aR + a^3 t + a^2} / 2pi.
BoundParams damped_bound_params(double t, const WavePacketParams& wp);
// a = (1-delta)/(3t), C = sqrt(pi / (1 - 3at)), A = C e^{aR + a^3 t + a^2} / 2pi.
BoundParams undamped_bound_params(double t, double delta, const WavePacketParams& wp);

// Whole-line solution by trapezoidal quadrature over |k| <= k_cut; node count
// doubles until successive results differ by < 1e-10.
cplx exact_solution(double x, double t, const WavePacketParams& wp);

// Split integral: weight 1 where 3k^2 t < P and epsilon0 beyond.
cplx damped_heuristic_line(double x, double t, const WavePacketParams& wp);

// (1/2L) sum_j w(k_j) e^{i k_j x + i k_j^3 t} q0_hat(k_j) with the split weight.
cplx damped_heuristic_periodic(double x, double t, const WavePacketParams& wp);

// Unsplit lattice sum on the period-2L lattice.
cplx undamped_periodic(double x, double t, const WavePacketParams& wp);

// (1 - epsilon0)/(2pi) int_{3k^2 t > P} |q0_hat(k)| dk.
double tail_bound(double t, const WavePacketParams& wp);

// Smallest P with sqrt(P/3t) >= ln(1/epsilon1).
double pt_condition_min_P(double t, double epsilon1);
bool pt_condition_holds(double P, double t, double epsilon1);

// Lattice-vs-integral error estimate for the damped sum: (2 k_M / pi) e^{aR + a^3 t + a^2 - 2aL}.
double damped_lattice_bound(double t, const WavePacketParams& wp);
// Undamped counterpart: (C/pi) e^{aR + a^3 t + a^2 - 2aL} with a = (1-delta)/(3t).
double capitalQ_bound(double t, double delta, const WavePacketParams& wp);

// Domain half-widths needed for error epsilon.
double bound_damped_L(double epsilon, double t, const WavePacketParams& wp);
double bound_undamped_L(double epsilon, double t, double delta, const WavePacketParams& wp);

// Periodic trapezoid rule (T/N) sum_{k=1}^{N} v(kT/N) and its error bound
// 2TA / (e^{2 pi a N / T} - 1).
double trapezoid_periodic(const std::function<double(double)>& v, double T_period, std::size_t N);
double trapezoid_bound_periodic(double T_period, double A, double a, std::size_t N);
// Whole-line bound 2A / (e^{2 pi a / h} - 1).
double trapezoid_bound_line(double A, double a, double h);

// Numerical damped run versus the periodic heuristic.
struct FidelityOptions {
  double dt = 0.01;
  double k1 = 1.0;
  // Window is [-P_damp + margin, hi] with P_damp = -l1 of the sigma profile;
  // hi defaults to the right end of the grid.
  double window_margin = 7.0;
  std::optional<double> window_hi;
};

struct FidelityResult {
  double max_difference = 0.0;
  double at_x = 0.0;
  Window window{};
  std::size_t cg_iterations = 0;
  double wall_seconds = 0.0;
};

// Samples q(x,0) = inverse transform of q0_hat on the grid.
CVec initial_samples(const Grid& grid, const WavePacketParams& wp);

FidelityResult heuristic_fidelity(std::size_t m, const WavePacketParams& wp,
                                  const FidelityOptions& opts = {});

}  // namespace sdamp::linkdv
