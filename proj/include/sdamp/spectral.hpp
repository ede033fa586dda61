#pragma once

// Fourier machinery on the periodic interval [-L, L).
//
// Grid points are x_i = -L + 2L i / m (i = 0..m-1) and modes are stored in FFT
// order: index k holds wavenumber j = k for k < m/2 and j = k - m otherwise.
// The forward transform carries the 1/m factor, so
//
//   c_j = (1/m) sum_i q(x_i) exp(-i pi j x_i / L)  ~  (1/2L) int q exp(-i pi j x / L) dx
//   q(x_i) = sum_j c_j exp(i pi j x_i / L).

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sdamp {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

class Grid {
 public:
  // Throws ConfigError unless L > 0 and m is a power of two >= 8.
  static Grid make(double half_width, std::size_t m);

  double half_width() const { return d_->half_width; }
  std::size_t size() const { return d_->points.size(); }
  double spacing() const { return 2.0 * d_->half_width / static_cast<double>(size()); }
  std::span<const double> points() const { return d_->points; }
  double point(std::size_t i) const { return d_->points[i]; }
  // Signed integer mode j stored at FFT index k.
  std::span<const long> wavenumbers() const { return d_->wavenumbers; }
  long wavenumber(std::size_t k) const { return d_->wavenumbers[k]; }
  // pi j / L for the mode stored at index k.
  double angular(std::size_t k) const;
  // FFT index of mode j, j in [-m/2, m/2).
  std::size_t index_of(long j) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.d_ == b.d_ || (a.half_width() == b.half_width() && a.size() == b.size());
  }

 private:
  struct Data {
    double half_width;
    RVec points;
    std::vector<long> wavenumbers;
  };
  explicit Grid(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

inline Grid make_grid(double half_width, std::size_t m) { return Grid::make(half_width, m); }

struct SpectralField {
  Grid grid;
  CVec coeffs;

  SpectralField(Grid g, CVec c);
  static SpectralField zeros(const Grid& g) { return {g, CVec(g.size())}; }
  std::size_t size() const { return coeffs.size(); }
  // Mean of the physical field (the j = 0 coefficient).
  cplx mean() const { return coeffs[0]; }
};

// Diagonal of an operator in coefficient space, e.g. a polynomial in D.
struct DiagonalSymbol {
  CVec entries;
  std::size_t size() const { return entries.size(); }
  // Largest |Re| over the entries.
  double max_real_part() const;
};

// In-place transforms on raw coefficient/sample buffers of length m.
namespace fft {
// Multiplies the result by `scale` on top of the 1/m normalization.
void forward_inplace(std::span<cplx> data, double scale = 1.0);
void inverse_inplace(std::span<cplx> data);
}  // namespace fft

SpectralField forward(const Grid& grid, std::span<const cplx> samples);
SpectralField forward(const Grid& grid, std::span<const double> samples);
CVec inverse(const SpectralField& field);

// Entry for mode j is (i pi j / L)^order; the unpaired Nyquist mode j = -m/2 is
// zeroed for odd orders so derivatives of real fields stay real.
DiagonalSymbol diff_symbol(const Grid& grid, int order);
SpectralField apply_symbol(const DiagonalSymbol& sym, const SpectralField& field);
void apply_symbol_inplace(const DiagonalSymbol& sym, std::span<cplx> coeffs);
DiagonalSymbol exp_symbol(const DiagonalSymbol& sym, double t);

// Linear combination sum_k alpha_k D^{order_k}.
DiagonalSymbol polynomial_symbol(const Grid& grid, std::span<const std::pair<int, cplx>> terms);

// Physical-space derivative of grid samples of a periodic function.
CVec spectral_derivative(const Grid& grid, std::span<const cplx> samples, int order = 1);

// Trigonometric interpolant of the field evaluated at arbitrary x.
cplx evaluate_at(const SpectralField& field, double x);

}  // namespace sdamp
