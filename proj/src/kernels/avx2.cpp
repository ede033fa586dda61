#include "sdamp/kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>

#define SDAMP_AVX2 __attribute__((target("avx2")))

namespace sdamp::kernels {
namespace {

inline const double* dptr(std::span<const cplx> v) {
  return reinterpret_cast<const double*>(v.data());
}
inline double* dptr(std::span<cplx> v) { return reinterpret_cast<double*>(v.data()); }

// Two complex numbers per register: [re0, im0, re1, im1].
SDAMP_AVX2 inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d br = _mm256_movedup_pd(b);
  const __m256d bi = _mm256_permute_pd(b, 0xF);
  const __m256d as = _mm256_permute_pd(a, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(a, br), _mm256_mul_pd(as, bi));
}

SDAMP_AVX2 void mul_avx2(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  const std::size_t n = out.size();
  const double* pa = dptr(a);
  const double* pb = dptr(b);
  double* po = dptr(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(po + 2 * i, cmul(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = cplx(ar * br - ai * bi, ai * br + ar * bi);
  }
}

SDAMP_AVX2 void mul_real_avx2(std::span<const double> r, std::span<const cplx> x,
                              std::span<cplx> out) {
  const std::size_t n = out.size();
  const double* px = dptr(x);
  double* po = dptr(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d r2 = _mm_loadu_pd(r.data() + i);
    const __m256d rr = _mm256_permute4x64_pd(_mm256_castpd128_pd256(r2), 0x50);
    _mm256_storeu_pd(po + 2 * i, _mm256_mul_pd(rr, _mm256_loadu_pd(px + 2 * i)));
  }
  for (; i < n; ++i) out[i] = cplx(r[i] * x[i].real(), r[i] * x[i].imag());
}

SDAMP_AVX2 void alternate_avx2(double s, std::span<const cplx> x, std::span<cplx> out) {
  const std::size_t n = out.size();
  const double* px = dptr(x);
  double* po = dptr(out);
  const __m256d f = _mm256_setr_pd(s, s, -s, -s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(po + 2 * i, _mm256_mul_pd(f, _mm256_loadu_pd(px + 2 * i)));
  for (; i < n; ++i) {
    const double g = (i & 1) ? -s : s;
    out[i] = cplx(g * x[i].real(), g * x[i].imag());
  }
}

SDAMP_AVX2 void axpy_avx2(double alpha, std::span<const cplx> x, std::span<const cplx> y,
                          std::span<cplx> out) {
  const std::size_t n = out.size();
  const double* px = dptr(x);
  const double* py = dptr(y);
  double* po = dptr(out);
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(px + 2 * i));
    _mm256_storeu_pd(po + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), t));
  }
  for (; i < n; ++i)
    out[i] = cplx(y[i].real() + alpha * x[i].real(), y[i].imag() + alpha * x[i].imag());
}

SDAMP_AVX2 void rk4_combine_avx2(double h, std::span<const cplx> a, std::span<const cplx> f1,
                                 std::span<const cplx> f2, std::span<const cplx> f3,
                                 std::span<const cplx> f4, std::span<cplx> out) {
  const std::size_t n = out.size();
  const double c = h / 6.0;
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d two = _mm256_set1_pd(2.0);
  const double *pa = dptr(a), *p1 = dptr(f1), *p2 = dptr(f2), *p3 = dptr(f3), *p4 = dptr(f4);
  double* po = dptr(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const std::size_t k = 2 * i;
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(p1 + k), _mm256_mul_pd(two, _mm256_loadu_pd(p2 + k)));
    s = _mm256_add_pd(s, _mm256_mul_pd(two, _mm256_loadu_pd(p3 + k)));
    s = _mm256_add_pd(s, _mm256_loadu_pd(p4 + k));
    _mm256_storeu_pd(po + k, _mm256_add_pd(_mm256_loadu_pd(pa + k), _mm256_mul_pd(vc, s)));
  }
  for (; i < n; ++i) {
    double sr = f1[i].real() + 2.0 * f2[i].real();
    double si = f1[i].imag() + 2.0 * f2[i].imag();
    sr = sr + 2.0 * f3[i].real();
    si = si + 2.0 * f3[i].imag();
    sr = sr + f4[i].real();
    si = si + f4[i].imag();
    out[i] = cplx(a[i].real() + c * sr, a[i].imag() + c * si);
  }
}

SDAMP_AVX2 void abs2_avx2(std::span<const cplx> x, std::span<cplx> out) {
  const std::size_t n = out.size();
  const double* px = dptr(x);
  double* po = dptr(out);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(px + 2 * i);
    _mm256_storeu_pd(po + 2 * i, _mm256_hadd_pd(_mm256_mul_pd(v, v), zero));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    out[i] = cplx(xr * xr + xi * xi, 0.0);
  }
}

SDAMP_AVX2 double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

SDAMP_AVX2 cplx dot_avx2(std::span<const cplx> x, std::span<const cplx> y) {
  const std::size_t n = x.size();
  const double* px = dptr(x);
  const double* py = dptr(y);
  __m256d acc_re = _mm256_setzero_pd();  // [xr*yr, xi*yi, ...]
  __m256d acc_im = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(vx, vy));
    acc_im = _mm256_add_pd(acc_im, _mm256_mul_pd(vx, _mm256_permute_pd(vy, 0x5)));
  }
  alignas(32) double im[4];
  _mm256_store_pd(im, acc_im);
  double re = hsum(acc_re);
  double imag = (im[0] - im[1]) + (im[2] - im[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    imag += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, imag};
}

SDAMP_AVX2 double norm2sq_avx2(std::span<const cplx> x) {
  const std::size_t n = x.size();
  const double* px = dptr(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(px + 2 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

SDAMP_AVX2 double max_abs_avx2(std::span<const cplx> x) {
  const std::size_t n = x.size();
  const double* px = dptr(x);
  const __m256d zero = _mm256_setzero_pd();
  __m256d best = zero;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(px + 2 * i);
    const __m256d mag = _mm256_sqrt_pd(_mm256_hadd_pd(_mm256_mul_pd(v, v), zero));
    best = _mm256_max_pd(best, mag);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = std::max(lanes[0], lanes[2]);
  for (; i < n; ++i) {
    const double a = std::sqrt(x[i].real() * x[i].real() + x[i].imag() * x[i].imag());
    if (a > m) m = a;
  }
  return m;
}

SDAMP_AVX2 bool all_finite_avx2(std::span<const cplx> x) {
  const std::size_t n = x.size();
  const double* px = dptr(x);
  // x - x is NaN exactly when x is NaN or infinite.
  __m256d ok = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(px + 2 * i);
    const __m256d d = _mm256_sub_pd(v, v);
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(d, d, _CMP_ORD_Q));
  }
  if (_mm256_movemask_pd(ok) != 0xF) return false;
  for (; i < n; ++i)
    if (!std::isfinite(x[i].real()) || !std::isfinite(x[i].imag())) return false;
  return true;
}

}  // namespace

const Table& avx2_table() {
  static const Table t{mul_avx2,     mul_real_avx2,    alternate_avx2, axpy_avx2,
                       rk4_combine_avx2, abs2_avx2,    dot_avx2,       norm2sq_avx2,
                       max_abs_avx2, all_finite_avx2};
  return t;
}

}  // namespace sdamp::kernels

#endif
