#include "sdamp/spectral.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "sdamp/error.hpp"
#include "sdamp/kernels.hpp"

namespace sdamp {

Grid Grid::make(double half_width, std::size_t m) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw ConfigError("grid half-width must be positive, got " + std::to_string(half_width));
  if (m < 8 || !std::has_single_bit(m))
    throw ConfigError("grid size must be a power of two >= 8, got " + std::to_string(m));
  Data d;
  d.half_width = half_width;
  d.points.resize(m);
  d.wavenumbers.resize(m);
  const double md = static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    d.points[i] = -half_width + 2.0 * half_width * (static_cast<double>(i) / md);
    d.wavenumbers[i] = i < m / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(m);
  }
  return Grid(std::make_shared<const Data>(std::move(d)));
}

double Grid::angular(std::size_t k) const {
  return std::numbers::pi * static_cast<double>(wavenumber(k)) / half_width();
}

std::size_t Grid::index_of(long j) const {
  const long m = static_cast<long>(size());
  if (j < -m / 2 || j >= m / 2) throw ConfigError("mode out of range");
  return static_cast<std::size_t>(j >= 0 ? j : j + m);
}

SpectralField::SpectralField(Grid g, CVec c) : grid(std::move(g)), coeffs(std::move(c)) {
  if (coeffs.size() != grid.size())
    throw ConfigError("coefficient count " + std::to_string(coeffs.size()) +
                      " does not match grid size " + std::to_string(grid.size()));
}

double DiagonalSymbol::max_real_part() const {
  double r = 0.0;
  for (const auto& e : entries) r = std::max(r, std::abs(e.real()));
  return r;
}

namespace fft {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are made unaligned and in-place so any buffer of the right length works.
struct PlanPair {
  fftw_plan fwd;
  fftw_plan bwd;
};

const PlanPair& plans_for(std::size_t m) {
  static std::mutex mu;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto* buf = fftw_alloc_complex(m);
  const int n = static_cast<int>(m);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p{fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags),
             fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags)};
  fftw_free(buf);
  return cache.emplace(m, p).first->second;
}

fftw_complex* as_fftw(std::span<cplx> v) { return reinterpret_cast<fftw_complex*>(v.data()); }

}  // namespace

// x_i = -L + 2L i/m gives exp(-i pi j x_i / L) = (-1)^j exp(-2 pi i i j / m), so
// both directions are a plain DFT bracketed by an alternating sign.
void forward_inplace(std::span<cplx> data, double scale) {
  const auto& p = plans_for(data.size());
  fftw_execute_dft(p.fwd, as_fftw(data), as_fftw(data));
  kernels::alternate(scale / static_cast<double>(data.size()), data, data);
}

void inverse_inplace(std::span<cplx> data) {
  const auto& p = plans_for(data.size());
  kernels::alternate(1.0, data, data);
  fftw_execute_dft(p.bwd, as_fftw(data), as_fftw(data));
}

}  // namespace fft

SpectralField forward(const Grid& grid, std::span<const cplx> samples) {
  if (samples.size() != grid.size())
    throw ConfigError("sample count " + std::to_string(samples.size()) +
                      " does not match grid size " + std::to_string(grid.size()));
  CVec c(samples.begin(), samples.end());
  fft::forward_inplace(c);
  return {grid, std::move(c)};
}

SpectralField forward(const Grid& grid, std::span<const double> samples) {
  CVec c(samples.begin(), samples.end());
  return forward(grid, std::span<const cplx>(c));
}

CVec inverse(const SpectralField& field) {
  CVec q = field.coeffs;
  fft::inverse_inplace(q);
  return q;
}

DiagonalSymbol diff_symbol(const Grid& grid, int order) {
  if (order < 1) throw ConfigError("derivative order must be >= 1");
  const std::size_t m = grid.size();
  DiagonalSymbol s{CVec(m)};
  for (std::size_t k = 0; k < m; ++k) {
    const double w = grid.angular(k);
    // (i w)^order computed by cases so even orders are exactly real.
    const double mag = std::pow(w, order);
    switch (order % 4) {
      case 0: s.entries[k] = cplx(mag, 0.0); break;
      case 1: s.entries[k] = cplx(0.0, mag); break;
      case 2: s.entries[k] = cplx(-mag, 0.0); break;
      case 3: s.entries[k] = cplx(0.0, -mag); break;
    }
  }
  if (order % 2 == 1) s.entries[m / 2] = 0.0;
  return s;
}

void apply_symbol_inplace(const DiagonalSymbol& sym, std::span<cplx> coeffs) {
  if (sym.size() != coeffs.size()) throw ConfigError("symbol length does not match field");
  kernels::mul(sym.entries, coeffs, coeffs);
}

SpectralField apply_symbol(const DiagonalSymbol& sym, const SpectralField& field) {
  SpectralField out = field;
  apply_symbol_inplace(sym, out.coeffs);
  return out;
}

DiagonalSymbol exp_symbol(const DiagonalSymbol& sym, double t) {
  DiagonalSymbol out{CVec(sym.size())};
  for (std::size_t k = 0; k < sym.size(); ++k) {
    const cplx z = sym.entries[k] * t;
    // Purely imaginary arguments go through polar() so |e^z| = 1 to rounding.
    out.entries[k] = z.real() == 0.0 ? std::polar(1.0, z.imag()) : std::exp(z);
  }
  return out;
}

DiagonalSymbol polynomial_symbol(const Grid& grid,
                                 std::span<const std::pair<int, cplx>> terms) {
  DiagonalSymbol out{CVec(grid.size())};
  for (const auto& [order, alpha] : terms) {
    const auto d = diff_symbol(grid, order);
    for (std::size_t k = 0; k < out.size(); ++k) out.entries[k] += alpha * d.entries[k];
  }
  return out;
}

CVec spectral_derivative(const Grid& grid, std::span<const cplx> samples, int order) {
  auto f = forward(grid, samples);
  apply_symbol_inplace(diff_symbol(grid, order), f.coeffs);
  return inverse(f);
}

cplx evaluate_at(const SpectralField& field, double x) {
  const auto& g = field.grid;
  const std::size_t m = g.size();
  const double base = std::numbers::pi * x / g.half_width();
  cplx s = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (k == m / 2) {
      // Nyquist mode split evenly between +-m/2; exact at grid points.
      s += field.coeffs[k] * std::cos(base * static_cast<double>(m / 2));
      continue;
    }
    s += field.coeffs[k] * std::polar(1.0, base * static_cast<double>(g.wavenumber(k)));
  }
  return s;
}

}  // namespace sdamp
