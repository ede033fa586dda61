#pragma once

// The evolution equations, each written as c' + M c = F(c) for the Fourier
// coefficients c, with M diagonal and purely imaginary.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdamp/antiderivative.hpp"
#include "sdamp/spectral.hpp"

namespace sdamp {

enum class FieldKind { Real, Complex };

// Integration constant and dispersion parameter for the derivative-form
// (Riemann-problem) models.
struct RiemannContext {
  double c_minus = 0.0;
  double epsilon = 0.0;
};

// 10^{-1.5}
double default_riemann_epsilon();

struct PdeModel {
  using Nonlinear = std::function<void(std::span<const cplx> c, std::span<cplx> out)>;

  std::string name;
  Grid grid;
  DiagonalSymbol linear;  // M
  Nonlinear nonlinear;    // F; empty means F == 0
  FieldKind field_kind = FieldKind::Real;
  bool uses_antiderivative = false;
  // Zero modes with |j| > m/3 on input and output of F. Off by default.
  bool dealias = false;

  bool is_linear() const { return !nonlinear; }
  void apply_nonlinear(std::span<const cplx> c, std::span<cplx> out) const;
  SpectralField F(const SpectralField& c) const;
};

// q_t + 6 q q_x + q_xxx = 0
PdeModel kdv_model(const Grid& grid);
// i q_t + q_xx + 2|q|^2 q = 0
PdeModel nls_model(const Grid& grid);
// q_t + q_xxx = 0
PdeModel linear_kdv_model(const Grid& grid);
// u_t + (d^{-1}u) u_x + u^2 + eps^2 u_xxx = 0 for u = q_x
PdeModel riemann_kdv_model(const Grid& grid, const RiemannContext& ctx);
// u_t + (d^{-1}u) u_x + u^2 + u_xxx + u_xxxxx = 0 for u = q_x
PdeModel kawahara_model(const Grid& grid, const RiemannContext& ctx);
// i q_t + q_xx + 2 (|q|^2)_x q + |q|^4 q = 0
PdeModel eckhaus_model(const Grid& grid);

const std::vector<std::string>& model_names();
// Builds a model by registry name; throws ConfigError for unknown names.
PdeModel make_model(std::string_view name, const Grid& grid, const RiemannContext& ctx = {});
bool model_uses_antiderivative(std::string_view name);

}  // namespace sdamp
