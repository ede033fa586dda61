#include "sdamp/kernels.hpp"

#include <cmath>

namespace sdamp::kernels {
namespace {

void mul_scalar(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
  }
}

void mul_real_scalar(std::span<const double> r, std::span<const cplx> x, std::span<cplx> out) {
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = cplx(r[i] * x[i].real(), r[i] * x[i].imag());
}

void alternate_scalar(double s, std::span<const cplx> x, std::span<cplx> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double f = (i & 1) ? -s : s;
    out[i] = cplx(f * x[i].real(), f * x[i].imag());
  }
}

void axpy_scalar(double alpha, std::span<const cplx> x, std::span<const cplx> y,
                 std::span<cplx> out) {
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = cplx(y[i].real() + alpha * x[i].real(), y[i].imag() + alpha * x[i].imag());
}

void rk4_combine_scalar(double h, std::span<const cplx> a, std::span<const cplx> f1,
                        std::span<const cplx> f2, std::span<const cplx> f3,
                        std::span<const cplx> f4, std::span<cplx> out) {
  const double c = h / 6.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    double sr = f1[i].real() + 2.0 * f2[i].real();
    double si = f1[i].imag() + 2.0 * f2[i].imag();
    sr = sr + 2.0 * f3[i].real();
    si = si + 2.0 * f3[i].imag();
    sr = sr + f4[i].real();
    si = si + f4[i].imag();
    out[i] = cplx(a[i].real() + c * sr, a[i].imag() + c * si);
  }
}

void abs2_scalar(std::span<const cplx> x, std::span<cplx> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    out[i] = cplx(xr * xr + xi * xi, 0.0);
  }
}

cplx dot_scalar(std::span<const cplx> x, std::span<const cplx> y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm2sq_scalar(std::span<const cplx> x) {
  double s = 0.0;
  for (const auto& v : x) s += v.real() * v.real() + v.imag() * v.imag();
  return s;
}

double max_abs_scalar(std::span<const cplx> x) {
  double m = 0.0;
  for (const auto& v : x) {
    const double a = std::sqrt(v.real() * v.real() + v.imag() * v.imag());
    if (a > m) m = a;
  }
  return m;
}

bool all_finite_scalar(std::span<const cplx> x) {
  for (const auto& v : x)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace

const Table& scalar_table() {
  static const Table t{mul_scalar,     mul_real_scalar,  alternate_scalar,
                       axpy_scalar,    rk4_combine_scalar, abs2_scalar,
                       dot_scalar,     norm2sq_scalar,   max_abs_scalar,
                       all_finite_scalar};
  return t;
}

}  // namespace sdamp::kernels
