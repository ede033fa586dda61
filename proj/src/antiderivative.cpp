#include "sdamp/antiderivative.hpp"

#include <algorithm>

#include "sdamp/error.hpp"

namespace sdamp {

AntiderivativeOperator::AntiderivativeOperator(Grid grid, double c_minus)
    : grid_(std::move(grid)), c_minus_(c_minus) {
  const auto d = diff_symbol(grid_, 1);
  pinv_.entries.resize(d.size());
  for (std::size_t k = 0; k < d.size(); ++k)
    pinv_.entries[k] = d.entries[k] == cplx(0.0) ? cplx(0.0) : 1.0 / d.entries[k];
}

CVec AntiderivativeOperator::operator()(std::span<const cplx> u_coeffs) const {
  if (u_coeffs.size() != grid_.size()) throw ConfigError("antiderivative: length mismatch");
  CVec q(u_coeffs.begin(), u_coeffs.end());
  const cplx c0 = q[0];
  apply_symbol_inplace(pinv_, q);
  fft::inverse_inplace(q);
  const double L = grid_.half_width();
  const auto x = grid_.points();
  for (std::size_t i = 0; i < q.size(); ++i) q[i] += c0 * (x[i] + L);
  const cplx pin = q[0];
  for (auto& v : q) v = v - pin + c_minus_;
  return q;
}

double derivative_roundtrip_check(const Grid& grid, std::span<const cplx> q_samples) {
  const CVec u = spectral_derivative(grid, q_samples, 1);
  const AntiderivativeOperator op(grid, q_samples[0].real());
  const CVec back = op(forward(grid, std::span<const cplx>(u)));
  double r = 0.0;
  for (std::size_t i = 0; i < back.size(); ++i) r = std::max(r, std::abs(back[i] - q_samples[i]));
  return r;
}

}  // namespace sdamp
