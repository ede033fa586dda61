#include "sdamp/models.hpp"

#include <cmath>
#include <memory>

#include "sdamp/error.hpp"
#include "sdamp/kernels.hpp"

namespace sdamp {
namespace {

void multiply_by_i(std::span<cplx> v) {
  for (auto& z : v) z = cplx(-z.imag(), z.real());
}

PdeModel checked(PdeModel m) {
  if (m.linear.max_real_part() > 1e-14)
    throw ConfigError("model " + m.name + ": linear symbol is not purely imaginary");
  return m;
}

// -forward(u_x * H(u) + u^2), shared by the derivative-form models.
PdeModel::Nonlinear derivative_form_nonlinear(const Grid& grid, double c_minus) {
  auto d1 = std::make_shared<const DiagonalSymbol>(diff_symbol(grid, 1));
  auto integrate = std::make_shared<const AntiderivativeOperator>(grid, c_minus);
  return [d1, integrate](std::span<const cplx> c, std::span<cplx> out) {
    const std::size_t m = c.size();
    CVec u(c.begin(), c.end());
    CVec ux(m);
    kernels::mul(d1->entries, c, ux);
    fft::inverse_inplace(u);
    fft::inverse_inplace(ux);
    const CVec q = (*integrate)(c);
    kernels::mul(ux, q, out);
    kernels::mul(u, u, ux);
    kernels::axpy(1.0, ux, out, out);
    fft::forward_inplace(out, -1.0);
  };
}

}  // namespace

double default_riemann_epsilon() { return std::pow(10.0, -1.5); }

void PdeModel::apply_nonlinear(std::span<const cplx> c, std::span<cplx> out) const {
  if (c.size() != out.size() || c.size() != grid.size())
    throw ConfigError("nonlinear term: length mismatch");
  if (!nonlinear) {
    std::fill(out.begin(), out.end(), cplx(0.0));
    return;
  }
  if (!dealias) {
    nonlinear(c, out);
    return;
  }
  // 2/3 rule: quadratic products of the retained modes alias only into the
  // discarded band.
  const long keep = static_cast<long>(grid.size()) / 3;
  CVec trimmed(c.begin(), c.end());
  for (std::size_t k = 0; k < trimmed.size(); ++k)
    if (std::abs(grid.wavenumber(k)) > keep) trimmed[k] = 0.0;
  nonlinear(trimmed, out);
  for (std::size_t k = 0; k < out.size(); ++k)
    if (std::abs(grid.wavenumber(k)) > keep) out[k] = 0.0;
}

SpectralField PdeModel::F(const SpectralField& c) const {
  SpectralField out = SpectralField::zeros(grid);
  apply_nonlinear(c.coeffs, out.coeffs);
  return out;
}

PdeModel kdv_model(const Grid& grid) {
  auto d1 = std::make_shared<const DiagonalSymbol>(diff_symbol(grid, 1));
  PdeModel m{.name = "kdv", .grid = grid, .linear = {}, .nonlinear = {}};
  m.linear = diff_symbol(grid, 3);
  m.nonlinear = [d1](std::span<const cplx> c, std::span<cplx> out) {
    CVec q(c.begin(), c.end());
    kernels::mul(d1->entries, c, out);
    fft::inverse_inplace(q);
    fft::inverse_inplace(out);
    kernels::mul(q, out, out);
    fft::forward_inplace(out, -6.0);
  };
  return checked(std::move(m));
}

PdeModel nls_model(const Grid& grid) {
  PdeModel m{.name = "nls", .grid = grid, .linear = {}, .nonlinear = {}};
  const std::pair<int, cplx> terms[] = {{2, cplx(0.0, -1.0)}};
  m.linear = polynomial_symbol(grid, terms);
  m.field_kind = FieldKind::Complex;
  m.nonlinear = [](std::span<const cplx> c, std::span<cplx> out) {
    CVec q(c.begin(), c.end());
    fft::inverse_inplace(q);
    kernels::abs2(q, out);
    kernels::mul(q, out, out);
    fft::forward_inplace(out, 2.0);
    multiply_by_i(out);
  };
  return checked(std::move(m));
}

PdeModel linear_kdv_model(const Grid& grid) {
  PdeModel m{.name = "linkdv", .grid = grid, .linear = {}, .nonlinear = {}};
  m.linear = diff_symbol(grid, 3);
  return checked(std::move(m));
}

PdeModel riemann_kdv_model(const Grid& grid, const RiemannContext& ctx) {
  if (!(ctx.epsilon > 0.0)) throw ConfigError("riemann-kdv: epsilon must be positive");
  PdeModel m{.name = "riemann-kdv", .grid = grid, .linear = {}, .nonlinear = {}};
  const std::pair<int, cplx> terms[] = {{3, cplx(ctx.epsilon * ctx.epsilon, 0.0)}};
  m.linear = polynomial_symbol(grid, terms);
  m.nonlinear = derivative_form_nonlinear(grid, ctx.c_minus);
  m.uses_antiderivative = true;
  return checked(std::move(m));
}

PdeModel kawahara_model(const Grid& grid, const RiemannContext& ctx) {
  PdeModel m{.name = "kawahara", .grid = grid, .linear = {}, .nonlinear = {}};
  const std::pair<int, cplx> terms[] = {{3, cplx(1.0)}, {5, cplx(1.0)}};
  m.linear = polynomial_symbol(grid, terms);
  m.nonlinear = derivative_form_nonlinear(grid, ctx.c_minus);
  m.uses_antiderivative = true;
  return checked(std::move(m));
}

PdeModel eckhaus_model(const Grid& grid) {
  auto d1 = std::make_shared<const DiagonalSymbol>(diff_symbol(grid, 1));
  PdeModel m{.name = "eckhaus", .grid = grid, .linear = {}, .nonlinear = {}};
  const std::pair<int, cplx> terms[] = {{2, cplx(0.0, -1.0)}};
  m.linear = polynomial_symbol(grid, terms);
  m.field_kind = FieldKind::Complex;
  m.nonlinear = [d1](std::span<const cplx> c, std::span<cplx> out) {
    const std::size_t n = c.size();
    CVec q(c.begin(), c.end());
    fft::inverse_inplace(q);
    CVec rho(n);  // |q|^2, then its x-derivative
    kernels::abs2(q, rho);
    CVec rho2(n);  // |q|^4
    kernels::mul(rho, rho, rho2);
    fft::forward_inplace(rho);
    kernels::mul(d1->entries, rho, rho);
    fft::inverse_inplace(rho);
    // 2 (|q|^2)_x q + |q|^4 q = (2 (|q|^2)_x + |q|^4) q
    kernels::axpy(2.0, rho, rho2, rho2);
    kernels::mul(rho2, q, out);
    fft::forward_inplace(out);
    multiply_by_i(out);
  };
  return checked(std::move(m));
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{"kdv",         "nls",      "linkdv",
                                              "riemann-kdv", "kawahara", "eckhaus"};
  return names;
}

bool model_uses_antiderivative(std::string_view name) {
  return name == "riemann-kdv" || name == "kawahara";
}

PdeModel make_model(std::string_view name, const Grid& grid, const RiemannContext& ctx) {
  if (name == "kdv") return kdv_model(grid);
  if (name == "nls") return nls_model(grid);
  if (name == "linkdv") return linear_kdv_model(grid);
  if (name == "riemann-kdv") return riemann_kdv_model(grid, ctx);
  if (name == "kawahara") return kawahara_model(grid, ctx);
  if (name == "eckhaus") return eckhaus_model(grid);
  throw ConfigError("unknown model '" + std::string(name) + "'");
}

}  // namespace sdamp
