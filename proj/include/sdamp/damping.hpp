#pragma once

// Artificial damping outside the comparison window.
//
// Two mechanisms act on the Fourier coefficients:
//   * heat damping: the variable-coefficient heat equation c' = k1 D F(sigma F^{-1}(D c)),
//     discretized with the trapezoidal rule, B c^{n+1} = A c^n, and solved by
//     unpreconditioned conjugate gradients from a zero initial guess;
//   * decay masking: physical samples are multiplied by gamma(x) in [0, 1],
//     the k2 -> infinity limit of q_t = -k2 (1 - gamma) q.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdamp/spectral.hpp"

namespace sdamp {

struct PdeModel;

enum class DampingMode { None, ExpOnly, HeatOnly, Both };
enum class GammaKind { Right, Even };

std::string_view to_string(DampingMode m);
std::string_view to_string(GammaKind g);
DampingMode parse_damping_mode(std::string_view s);  // none | exp | heat | both
GammaKind parse_gamma_kind(std::string_view s);      // right | even

inline bool uses_heat(DampingMode m) { return m == DampingMode::HeatOnly || m == DampingMode::Both; }
inline bool uses_decay(DampingMode m) { return m == DampingMode::ExpOnly || m == DampingMode::Both; }

// sigma(x; l1, l2) = 1 - (tanh(x - l1) + 1)/2 + (tanh(-x - l2) + 1)/2
double sigma_value(double x, double l1, double l2);
inline double default_l1(double L) { return -L + L / 2.0 - 10.0; }
inline double default_l2(double L) { return L - 5.0; }

RVec sigma_profile(const Grid& grid, double l1, double l2);
// 1 - sigma(-x), clamped to [0, 1].
RVec gamma_right(const Grid& grid, double l1, double l2);
// 1 - (sigma(x) + sigma(-x)), clamped to [0, 1].
RVec gamma_even(const Grid& grid, double l1, double l2);

struct ProfileParams {
  std::optional<double> l1;  // default -L/2 - 10
  std::optional<double> l2;  // default L - 5
  GammaKind gamma = GammaKind::Right;
  std::optional<double> comparison_half_width;  // R; default min(100, 0.9 P)
};

struct DampingProfile {
  RVec sigma;
  RVec gamma;
  double l1 = 0.0;
  double l2 = 0.0;
  double p_minus = 0.0;
  double p_plus = 0.0;
  double R = 0.0;
  GammaKind gamma_kind = GammaKind::Right;

  static DampingProfile make(const Grid& grid, const ProfileParams& params = {});
  // Human-readable list of violated interval orderings (-L < -P- < -R, R < P+ < L).
  std::vector<std::string> ordering_violations(double L) const;
};

struct DampingConfig {
  DampingMode mode = DampingMode::None;
  double k1 = 0.0;
  std::size_t f1 = 1;
  std::size_t f2 = 1000;
  double cg_tol = 1e-10;
  std::size_t cg_max_iters = 0;  // 0 means 10 m
  DampingProfile profile;

  // Throws ConfigError listing every violation.
  void validate(const Grid& grid) const;
  std::size_t max_iters_for(const Grid& grid) const {
    return cg_max_iters ? cg_max_iters : 10 * grid.size();
  }
};

// Physical-space mask applied in coefficient space: forward(gamma * inverse(c)).
SpectralField apply_decay(const SpectralField& field, std::span<const double> gamma);
void apply_decay_inplace(std::span<cplx> coeffs, std::span<const double> gamma);

struct CgResult {
  CVec x;
  std::size_t iterations = 0;
  double residual = 0.0;  // ||rhs - B x||_2 recomputed from the returned x
};

using LinearOperator = std::function<void(std::span<const cplx> in, std::span<cplx> out)>;

// Conjugate gradients for a Hermitian positive definite B; starts from zero,
// no preconditioner. Throws CgError when max_iters is exhausted.
CgResult cg_solve(const LinearOperator& apply_B, std::span<const cplx> rhs, double tol,
                  std::size_t max_iters);

// Trapezoidal heat step B c^{n+1} = A c^n with
//   B x = x - (k1 dt / 2) D F(Sigma F^{-1}(D x)),  A x = x + (k1 dt / 2) D F(...).
class HeatStep {
 public:
  HeatStep(const Grid& grid, RVec sigma, double k1, double dt, double cg_tol,
           std::size_t cg_max_iters);

  void apply_B(std::span<const cplx> x, std::span<cplx> out) const;
  void apply_A(std::span<const cplx> x, std::span<cplx> out) const;
  // Returns c^{n+1}; identity when k1 == 0.
  CgResult solve(std::span<const cplx> c) const;
  // max |<Bu, v> - <u, Bv>| / (|u| |v|) over random pairs.
  double hermitian_defect(std::size_t pairs, unsigned seed) const;

 private:
  // out = D F(Sigma F^{-1}(D x))
  void diffusion(std::span<const cplx> x, std::span<cplx> out) const;

  Grid grid_;
  RVec sigma_;
  DiagonalSymbol d1_;
  double half_k1dt_;
  double cg_tol_;
  std::size_t cg_max_iters_;
};

SpectralField heat_step(const SpectralField& field, const DampingConfig& cfg, double dt,
                        std::size_t* cg_iterations = nullptr);

// One Strang-split step: half RK4 step, heat solve, half RK4 step.
SpectralField strang_damped_step(const SpectralField& field, const PdeModel& model,
                                 const DampingConfig& cfg, double dt,
                                 std::size_t* cg_iterations = nullptr);

}  // namespace sdamp
