#pragma once

// Integrating-factor RK4 and the damped time-stepping driver.
//
// With a(t) = e^{Mt} c(t) the coefficient system c' + Mc = F(c) becomes
// a' = e^{Mt} F(e^{-Mt} a), which RK4 integrates without the stiff linear part.
// The equations are autonomous, so the driver always steps from t = 0 and
// unwinds with e^{-M dt} afterwards.

#include <chrono>
#include <cstddef>
#include <utility>
#include <vector>

#include "sdamp/damping.hpp"
#include "sdamp/models.hpp"
#include "sdamp/spectral.hpp"

namespace sdamp {

// Generic RK4 step of a' = e^{Mt} F(e^{-Mt} a) from t_n to t_n + dt.
SpectralField rk4_step(const SpectralField& a, double t_n, double dt, const PdeModel& model);

// RK4 from t_n = 0 with cached integrating factors for a fixed step h.
class Rk4Stepper {
 public:
  Rk4Stepper(const PdeModel& model, double h);

  double step_size() const { return h_; }
  // out = rk4(a, 0, h). `step` and `time` only label blow-up errors.
  void step(std::span<const cplx> a, std::span<cplx> out, std::size_t step = 0, double time = 0.0);
  // c <- e^{-Mh} rk4(c, 0, h)
  void advance(std::span<cplx> c, std::size_t step = 0, double time = 0.0);
  const DiagonalSymbol& unwind() const { return exp_minus_full_; }

 private:
  void stage(std::span<const cplx> a, std::span<const cplx> f, double weight,
             const DiagonalSymbol& down, const DiagonalSymbol& up, std::span<cplx> out);
  void check(std::span<const cplx> v, std::size_t step, double time, const char* where) const;

  const PdeModel* model_;
  double h_;
  DiagonalSymbol exp_plus_half_, exp_minus_half_, exp_plus_full_, exp_minus_full_;
  CVec f1_, f2_, f3_, f4_, tmp_, next_;
};

struct EvolveSpec {
  PdeModel model;
  double dt = 0.01;
  double t_final = 1.0;
  DampingConfig damping;
  std::vector<double> snapshot_times;

  // N = round(T / dt); throws ConfigError if T is not a multiple of dt to 1e-9 T.
  std::size_t step_count() const;
};

struct EvolutionResult {
  SpectralField final_field;
  std::vector<std::pair<double, SpectralField>> snapshots;
  std::size_t steps_taken = 0;
  std::size_t cg_iterations_total = 0;
  std::chrono::duration<double> wall_time{};
};

EvolutionResult evolve(std::span<const cplx> initial_physical, const EvolveSpec& spec);
EvolutionResult evolve(const SpectralField& initial, const EvolveSpec& spec);

// Plain undamped loop of Rk4Stepper::advance, for cross-checking the driver.
SpectralField evolve_undamped(const SpectralField& initial, const PdeModel& model, double dt,
                              std::size_t steps);

struct Window {
  double lo;
  double hi;
};

// max |a_i - b_i| over grid points with lo <= x_i <= hi.
double compare_on_window(std::span<const cplx> a, std::span<const cplx> b, const Grid& grid,
                         Window window);
// Fields on different grids: the coarser field's trigonometric interpolant is
// evaluated at the finer grid's window points.
double compare_on_window(const SpectralField& a, const SpectralField& b, Window window);

}  // namespace sdamp
