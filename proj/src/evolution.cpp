#include "sdamp/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdamp/error.hpp"
#include "sdamp/kernels.hpp"

namespace sdamp {

namespace {

void scale_by(const DiagonalSymbol& s, std::span<cplx> v) { kernels::mul(s.entries, v, v); }

}  // namespace

SpectralField rk4_step(const SpectralField& a, double t_n, double dt, const PdeModel& model) {
  const std::size_t m = a.size();
  if (m != model.grid.size()) throw ConfigError("rk4_step: field and model grids differ");
  const auto up0 = exp_symbol(model.linear, t_n);
  const auto down0 = exp_symbol(model.linear, -t_n);
  const auto up1 = exp_symbol(model.linear, t_n + dt / 2);
  const auto down1 = exp_symbol(model.linear, -(t_n + dt / 2));
  const auto up2 = exp_symbol(model.linear, t_n + dt);
  const auto down2 = exp_symbol(model.linear, -(t_n + dt));

  CVec f1(m), f2(m), f3(m), f4(m), tmp(m);
  auto eval = [&](std::span<const cplx> base, const CVec* f, double w, const DiagonalSymbol& down,
                  const DiagonalSymbol& up, CVec& out) {
    if (f)
      kernels::axpy(w, *f, base, tmp);
    else
      std::copy(base.begin(), base.end(), tmp.begin());
    scale_by(down, tmp);
    model.apply_nonlinear(tmp, out);
    scale_by(up, out);
  };
  eval(a.coeffs, nullptr, 0.0, down0, up0, f1);
  eval(a.coeffs, &f1, dt / 2, down1, up1, f2);
  eval(a.coeffs, &f2, dt / 2, down1, up1, f3);
  eval(a.coeffs, &f3, dt, down2, up2, f4);
  SpectralField out = SpectralField::zeros(a.grid);
  kernels::rk4_combine(dt, a.coeffs, f1, f2, f3, f4, out.coeffs);
  return out;
}

Rk4Stepper::Rk4Stepper(const PdeModel& model, double h)
    : model_(&model),
      h_(h),
      exp_plus_half_(exp_symbol(model.linear, h / 2)),
      exp_minus_half_(exp_symbol(model.linear, -h / 2)),
      exp_plus_full_(exp_symbol(model.linear, h)),
      exp_minus_full_(exp_symbol(model.linear, -h)) {
  const std::size_t m = model.grid.size();
  if (!model.is_linear()) {
    f1_.resize(m);
    f2_.resize(m);
    f3_.resize(m);
    f4_.resize(m);
    tmp_.resize(m);
  }
}

void Rk4Stepper::check(std::span<const cplx> v, std::size_t step, double time,
                       const char* where) const {
  if (!kernels::all_finite(v)) throw BlowUpError(step, time, where);
}

void Rk4Stepper::stage(std::span<const cplx> a, std::span<const cplx> f, double weight,
                       const DiagonalSymbol& down, const DiagonalSymbol& up,
                       std::span<cplx> out) {
  kernels::axpy(weight, f, a, tmp_);
  scale_by(down, tmp_);
  model_->apply_nonlinear(tmp_, out);
  scale_by(up, out);
}

void Rk4Stepper::step(std::span<const cplx> a, std::span<cplx> out, std::size_t step,
                      double time) {
  if (model_->is_linear()) {
    // F == 0 leaves a(t) constant.
    std::copy(a.begin(), a.end(), out.begin());
    return;
  }
  model_->apply_nonlinear(a, f1_);
  check(f1_, step, time, "rk4 stage 1");
  stage(a, f1_, h_ / 2, exp_minus_half_, exp_plus_half_, f2_);
  check(f2_, step, time, "rk4 stage 2");
  stage(a, f2_, h_ / 2, exp_minus_half_, exp_plus_half_, f3_);
  check(f3_, step, time, "rk4 stage 3");
  stage(a, f3_, h_, exp_minus_full_, exp_plus_full_, f4_);
  check(f4_, step, time, "rk4 stage 4");
  kernels::rk4_combine(h_, a, f1_, f2_, f3_, f4_, out);
  check(out, step, time, "rk4 update");
}

void Rk4Stepper::advance(std::span<cplx> c, std::size_t step, double time) {
  if (model_->is_linear()) {
    scale_by(exp_minus_full_, c);
    return;
  }
  next_.resize(c.size());
  this->step(c, next_, step, time);
  kernels::mul(exp_minus_full_.entries, next_, c);
}

std::size_t EvolveSpec::step_count() const {
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  if (!(t_final > 0.0)) throw ConfigError("final time must be positive");
  const double n = std::round(t_final / dt);
  if (n < 1.0 || std::abs(n * dt - t_final) > 1e-9 * t_final)
    throw ConfigError("final time " + std::to_string(t_final) +
                      " is not an integer multiple of dt = " + std::to_string(dt));
  return static_cast<std::size_t>(n);
}

EvolutionResult evolve(std::span<const cplx> initial_physical, const EvolveSpec& spec) {
  const Grid& grid = spec.model.grid;
  if (initial_physical.size() != grid.size())
    throw ConfigError("initial condition has " + std::to_string(initial_physical.size()) +
                      " samples, grid has " + std::to_string(grid.size()));
  if (!kernels::all_finite(initial_physical))
    throw ConfigError("initial condition contains non-finite samples");
  return evolve(forward(grid, initial_physical), spec);
}

EvolutionResult evolve(const SpectralField& initial, const EvolveSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  const PdeModel& model = spec.model;
  const Grid& grid = model.grid;
  if (!(initial.grid == grid)) throw ConfigError("initial field and model live on different grids");
  const std::size_t steps = spec.step_count();
  const DampingConfig& damp = spec.damping;
  damp.validate(grid);
  const bool heat_on = uses_heat(damp.mode);
  const bool decay_on = uses_decay(damp.mode);
  const double dt = spec.dt;

  std::vector<double> snaps = spec.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;

  EvolutionResult result{initial, {}, 0, 0, {}};
  CVec& c = result.final_field.coeffs;

  auto take_snapshots = [&](double t) {
    while (next_snap < snaps.size() && snaps[next_snap] <= t + dt / 2) {
      if (std::abs(snaps[next_snap] - t) <= dt / 2)
        result.snapshots.emplace_back(t, SpectralField(grid, c));
      ++next_snap;
    }
  };
  take_snapshots(0.0);

  Rk4Stepper full(model, dt);
  std::optional<Rk4Stepper> half;
  std::optional<HeatStep> heat;
  if (heat_on) {
    half.emplace(model, dt / 2);
    heat.emplace(grid, damp.profile.sigma, damp.k1, dt, damp.cg_tol, damp.max_iters_for(grid));
    if (damp.k1 > 0.0) {
      const double defect = heat->hermitian_defect(2, 12345u);
      if (defect > 1e-10)
        throw NumericalError("heat operator is not Hermitian (defect " + std::to_string(defect) +
                             ")");
    }
  }

  CVec a(grid.size());
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    if (heat_on && n % damp.f1 == 0) {
      half->step(c, a, n, t);
      kernels::mul(half->unwind().entries, a, c);
      CgResult r = heat->solve(c);
      result.cg_iterations_total += r.iterations;
      half->step(r.x, a, n, t);
      kernels::mul(half->unwind().entries, a, c);
    } else {
      full.step(c, a, n, t);
      kernels::mul(full.unwind().entries, a, c);
    }
    if (decay_on && n % damp.f2 == 0) apply_decay_inplace(c, damp.profile.gamma);
    if (!kernels::all_finite(c)) throw BlowUpError(n, t, "damping");
    take_snapshots(static_cast<double>(n + 1) * dt);
  }
  result.steps_taken = steps;
  result.wall_time = std::chrono::steady_clock::now() - t0;
  return result;
}

SpectralField evolve_undamped(const SpectralField& initial, const PdeModel& model, double dt,
                              std::size_t steps) {
  SpectralField c = initial;
  Rk4Stepper stepper(model, dt);
  for (std::size_t n = 0; n < steps; ++n)
    stepper.advance(c.coeffs, n, static_cast<double>(n) * dt);
  return c;
}

double compare_on_window(std::span<const cplx> a, std::span<const cplx> b, const Grid& grid,
                         Window window) {
  if (a.size() != grid.size() || b.size() != grid.size())
    throw ConfigError("compare_on_window: sample count does not match grid");
  double worst = 0.0;
  bool any = false;
  const auto x = grid.points();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < window.lo || x[i] > window.hi) continue;
    any = true;
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  if (!any) throw ConfigError("comparison window contains no grid points");
  return worst;
}

double compare_on_window(const SpectralField& a, const SpectralField& b, Window window) {
  if (a.grid == b.grid) return compare_on_window(inverse(a), inverse(b), a.grid, window);
  const bool a_finer = a.grid.spacing() <= b.grid.spacing();
  const SpectralField& fine = a_finer ? a : b;
  const SpectralField& coarse = a_finer ? b : a;
  const double Lc = coarse.grid.half_width();
  if (window.lo < -Lc || window.hi > Lc)
    throw ConfigError("comparison window extends beyond the coarser domain");
  const CVec fine_vals = inverse(fine);
  const auto x = fine.grid.points();
  double worst = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < window.lo || x[i] > window.hi) continue;
    any = true;
    worst = std::max(worst, std::abs(fine_vals[i] - evaluate_at(coarse, x[i])));
  }
  if (!any) throw ConfigError("comparison window contains no grid points");
  return worst;
}

}  // namespace sdamp
