#pragma once

// Recovers q = d^{-1}u on the grid from the Fourier coefficients of u = q_x.
//
// The zero-mean part is integrated mode by mode with the pseudo-inverse of D,
// the mean contributes a linear ramp c_0 (x + L), and the result is shifted so
// that q(-L) equals the integration constant C_-.

#include "sdamp/spectral.hpp"

namespace sdamp {

class AntiderivativeOperator {
 public:
  AntiderivativeOperator(Grid grid, double c_minus);

  const Grid& grid() const { return grid_; }
  double c_minus() const { return c_minus_; }
  // 1/(i pi j / L) where D is nonzero, 0 at j = 0 and at the Nyquist mode.
  const DiagonalSymbol& pseudo_inverse() const { return pinv_; }

  // Physical samples of q; q[0] == C_- exactly.
  CVec operator()(std::span<const cplx> u_coeffs) const;
  CVec operator()(const SpectralField& u) const { return (*this)(std::span<const cplx>(u.coeffs)); }

 private:
  Grid grid_;
  double c_minus_;
  DiagonalSymbol pinv_;
};

inline CVec antiderivative(const SpectralField& u, const AntiderivativeOperator& op) { return op(u); }

// max |H(forward(q')) - q| with C_- = q(-L); q' taken spectrally, so the residual
// is small only for near-periodic q.
double derivative_roundtrip_check(const Grid& grid, std::span<const cplx> q_samples);

}  // namespace sdamp
