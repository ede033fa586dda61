#include "sdamp/damping.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sdamp/error.hpp"
#include "sdamp/evolution.hpp"
#include "sdamp/kernels.hpp"
#include "sdamp/models.hpp"

namespace sdamp {

std::string_view to_string(DampingMode m) {
  switch (m) {
    case DampingMode::None: return "none";
    case DampingMode::ExpOnly: return "exp";
    case DampingMode::HeatOnly: return "heat";
    case DampingMode::Both: return "both";
  }
  return "none";
}

std::string_view to_string(GammaKind g) { return g == GammaKind::Right ? "right" : "even"; }

DampingMode parse_damping_mode(std::string_view s) {
  if (s == "none") return DampingMode::None;
  if (s == "exp" || s == "exp-only") return DampingMode::ExpOnly;
  if (s == "heat" || s == "heat-only") return DampingMode::HeatOnly;
  if (s == "both") return DampingMode::Both;
  throw ConfigError("unknown damping mode '" + std::string(s) + "' (expected none|exp|heat|both)");
}

GammaKind parse_gamma_kind(std::string_view s) {
  if (s == "right") return GammaKind::Right;
  if (s == "even") return GammaKind::Even;
  throw ConfigError("unknown gamma profile '" + std::string(s) + "' (expected right|even)");
}

double sigma_value(double x, double l1, double l2) {
  return 1.0 - 0.5 * (std::tanh(x - l1) + 1.0) + 0.5 * (std::tanh(-x - l2) + 1.0);
}

RVec sigma_profile(const Grid& grid, double l1, double l2) {
  RVec s(grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = sigma_value(grid.point(i), l1, l2);
  return s;
}

RVec gamma_right(const Grid& grid, double l1, double l2) {
  RVec g(grid.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = std::clamp(1.0 - sigma_value(-grid.point(i), l1, l2), 0.0, 1.0);
  return g;
}

RVec gamma_even(const Grid& grid, double l1, double l2) {
  RVec g(grid.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = grid.point(i);
    g[i] = std::clamp(1.0 - (sigma_value(x, l1, l2) + sigma_value(-x, l1, l2)), 0.0, 1.0);
  }
  return g;
}

DampingProfile DampingProfile::make(const Grid& grid, const ProfileParams& params) {
  const double L = grid.half_width();
  DampingProfile p;
  p.l1 = params.l1.value_or(default_l1(L));
  p.l2 = params.l2.value_or(default_l2(L));
  p.gamma_kind = params.gamma;
  p.sigma = sigma_profile(grid, p.l1, p.l2);
  p.gamma = params.gamma == GammaKind::Right ? gamma_right(grid, p.l1, p.l2)
                                             : gamma_even(grid, p.l1, p.l2);
  // sigma switches on left of l1; the mirrored profiles switch on right of -l1.
  p.p_minus = -p.l1;
  p.p_plus = p.p_minus;
  p.R = params.comparison_half_width.value_or(std::min(100.0, 0.9 * p.p_minus));
  return p;
}

std::vector<std::string> DampingProfile::ordering_violations(double L) const {
  std::vector<std::string> v;
  if (!(-L < -p_minus)) v.push_back("-L < -P- fails");
  if (!(-p_minus < -R)) v.push_back("-P- < -R fails");
  if (!(R < p_plus)) v.push_back("R < P+ fails");
  if (!(p_plus < L)) v.push_back("P+ < L fails");
  return v;
}

void DampingConfig::validate(const Grid& grid) const {
  std::vector<std::string> errs;
  if (!(k1 >= 0.0)) errs.push_back("k1 must be >= 0");
  if (f1 < 1) errs.push_back("f1 must be >= 1");
  if (f2 < 1) errs.push_back("f2 must be >= 1");
  if (!(cg_tol > 0.0)) errs.push_back("cg_tol must be > 0");
  if (uses_heat(mode) && profile.sigma.size() != grid.size())
    errs.push_back("sigma profile length does not match grid");
  if (uses_decay(mode) && profile.gamma.size() != grid.size())
    errs.push_back("gamma profile length does not match grid");
  if (errs.empty()) return;
  std::string msg = "invalid damping configuration:";
  for (const auto& e : errs) msg += " " + e + ";";
  throw ConfigError(msg);
}

void apply_decay_inplace(std::span<cplx> coeffs, std::span<const double> gamma) {
  if (gamma.size() != coeffs.size()) throw ConfigError("apply_decay: length mismatch");
  fft::inverse_inplace(coeffs);
  kernels::mul_real(gamma, coeffs, coeffs);
  fft::forward_inplace(coeffs);
}

SpectralField apply_decay(const SpectralField& field, std::span<const double> gamma) {
  SpectralField out = field;
  apply_decay_inplace(out.coeffs, gamma);
  return out;
}

CgResult cg_solve(const LinearOperator& apply_B, std::span<const cplx> rhs, double tol,
                  std::size_t max_iters) {
  if (!(tol > 0.0)) throw ConfigError("cg tolerance must be positive");
  const std::size_t n = rhs.size();
  CgResult res;
  res.x.assign(n, cplx(0.0));
  CVec r(rhs.begin(), rhs.end());
  CVec p = r;
  CVec q(n);
  double rr = kernels::norm2sq(r);
  std::size_t it = 0;
  // The recursive residual drifts from the true one; if the true residual is
  // still above tol when the recursion says converged, restart from it.
  for (;;) {
    while (std::sqrt(rr) > tol) {
      if (it >= max_iters) {
        apply_B(res.x, q);
        kernels::axpy(-1.0, q, rhs, q);
        throw CgError(it, std::sqrt(kernels::norm2sq(q)));
      }
      apply_B(p, q);
      const double alpha = rr / kernels::dot(p, q).real();
      kernels::axpy(alpha, p, res.x, res.x);
      kernels::axpy(-alpha, q, r, r);
      const double rr_new = kernels::norm2sq(r);
      kernels::axpy(rr_new / rr, p, r, p);
      rr = rr_new;
      ++it;
    }
    apply_B(res.x, q);
    kernels::axpy(-1.0, q, rhs, r);
    rr = kernels::norm2sq(r);
    res.residual = std::sqrt(rr);
    if (res.residual <= tol) break;
    p = r;
  }
  res.iterations = it;
  return res;
}

HeatStep::HeatStep(const Grid& grid, RVec sigma, double k1, double dt, double cg_tol,
                   std::size_t cg_max_iters)
    : grid_(grid),
      sigma_(std::move(sigma)),
      d1_(diff_symbol(grid, 1)),
      half_k1dt_(0.5 * k1 * dt),
      cg_tol_(cg_tol),
      cg_max_iters_(cg_max_iters) {
  if (sigma_.size() != grid.size()) throw ConfigError("sigma profile length does not match grid");
  if (!(k1 >= 0.0)) throw ConfigError("k1 must be >= 0");
  if (!(dt > 0.0)) throw ConfigError("heat step needs dt > 0");
}

void HeatStep::diffusion(std::span<const cplx> x, std::span<cplx> out) const {
  kernels::mul(d1_.entries, x, out);
  fft::inverse_inplace(out);
  kernels::mul_real(sigma_, out, out);
  fft::forward_inplace(out);
  kernels::mul(d1_.entries, out, out);
}

void HeatStep::apply_B(std::span<const cplx> x, std::span<cplx> out) const {
  diffusion(x, out);
  kernels::axpy(-half_k1dt_, out, x, out);
}

void HeatStep::apply_A(std::span<const cplx> x, std::span<cplx> out) const {
  diffusion(x, out);
  kernels::axpy(half_k1dt_, out, x, out);
}

CgResult HeatStep::solve(std::span<const cplx> c) const {
  if (half_k1dt_ == 0.0) return CgResult{CVec(c.begin(), c.end()), 0, 0.0};
  CVec rhs(c.size());
  apply_A(c, rhs);
  return cg_solve([this](std::span<const cplx> in, std::span<cplx> out) { apply_B(in, out); },
                  rhs, cg_tol_, cg_max_iters_);
}

double HeatStep::hermitian_defect(std::size_t pairs, unsigned seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const std::size_t m = grid_.size();
  CVec u(m), v(m), Bu(m), Bv(m);
  double worst = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      u[i] = cplx(nd(rng), nd(rng));
      v[i] = cplx(nd(rng), nd(rng));
    }
    apply_B(u, Bu);
    apply_B(v, Bv);
    const cplx lhs = kernels::dot(Bu, v);
    const cplx rhs = kernels::dot(u, Bv);
    const double scale = std::sqrt(kernels::norm2sq(u) * kernels::norm2sq(v));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

SpectralField heat_step(const SpectralField& field, const DampingConfig& cfg, double dt,
                        std::size_t* cg_iterations) {
  const HeatStep heat(field.grid, cfg.profile.sigma, cfg.k1, dt, cfg.cg_tol,
                      cfg.max_iters_for(field.grid));
  CgResult r = heat.solve(field.coeffs);
  if (cg_iterations) *cg_iterations = r.iterations;
  return {field.grid, std::move(r.x)};
}

SpectralField strang_damped_step(const SpectralField& field, const PdeModel& model,
                                 const DampingConfig& cfg, double dt,
                                 std::size_t* cg_iterations) {
  Rk4Stepper half(model, dt / 2);
  const HeatStep heat(field.grid, cfg.profile.sigma, cfg.k1, dt, cfg.cg_tol,
                      cfg.max_iters_for(field.grid));
  CVec a(field.size());
  CVec c(field.size());
  half.step(field.coeffs, a);
  kernels::mul(half.unwind().entries, a, c);
  CgResult r = heat.solve(c);
  if (cg_iterations) *cg_iterations = r.iterations;
  half.step(r.x, a);
  kernels::mul(half.unwind().entries, a, c);
  return {field.grid, std::move(c)};
}

}  // namespace sdamp
