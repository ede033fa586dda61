#pragma once

// Data-parallel inner loops over complex coefficient vectors.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active table is chosen once at startup from the CPU features
// and can be overridden (tests do this to check equivalence). Elementwise
// kernels round identically in both variants; reductions may differ in the
// last bits because lanes are summed in a different order.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace sdamp::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

struct Table {
  // out[i] = a[i] * b[i]
  void (*mul)(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
  // out[i] = r[i] * x[i] with r real
  void (*mul_real)(std::span<const double> r, std::span<const cplx> x, std::span<cplx> out);
  // out[i] = s * (-1)^i * x[i]
  void (*alternate)(double s, std::span<const cplx> x, std::span<cplx> out);
  // out[i] = y[i] + alpha * x[i]
  void (*axpy)(double alpha, std::span<const cplx> x, std::span<const cplx> y, std::span<cplx> out);
  // out[i] = a[i] + h/6 * (f1[i] + 2 f2[i] + 2 f3[i] + f4[i])
  void (*rk4_combine)(double h, std::span<const cplx> a, std::span<const cplx> f1,
                      std::span<const cplx> f2, std::span<const cplx> f3,
                      std::span<const cplx> f4, std::span<cplx> out);
  // out[i] = |x[i]|^2 (stored as a complex with zero imaginary part)
  void (*abs2)(std::span<const cplx> x, std::span<cplx> out);
  // sum conj(x[i]) * y[i]
  cplx (*dot)(std::span<const cplx> x, std::span<const cplx> y);
  // sum |x[i]|^2
  double (*norm2sq)(std::span<const cplx> x);
  // max |x[i]|
  double (*max_abs)(std::span<const cplx> x);
  // true if every component is finite
  bool (*all_finite)(std::span<const cplx> x);
};

const Table& scalar_table();
#if defined(__x86_64__)
const Table& avx2_table();
#endif

bool cpu_has_avx2();

Backend active_backend();
// Throws std::runtime_error when the requested backend is not available.
void set_backend(Backend b);
std::string_view backend_name(Backend b);

const Table& active();

inline void mul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  active().mul(a, b, out);
}
inline void mul_real(std::span<const double> r, std::span<const cplx> x, std::span<cplx> out) {
  active().mul_real(r, x, out);
}
inline void alternate(double s, std::span<const cplx> x, std::span<cplx> out) {
  active().alternate(s, x, out);
}
inline void axpy(double alpha, std::span<const cplx> x, std::span<const cplx> y,
                 std::span<cplx> out) {
  active().axpy(alpha, x, y, out);
}
inline void rk4_combine(double h, std::span<const cplx> a, std::span<const cplx> f1,
                        std::span<const cplx> f2, std::span<const cplx> f3,
                        std::span<const cplx> f4, std::span<cplx> out) {
  active().rk4_combine(h, a, f1, f2, f3, f4, out);
}
inline void abs2(std::span<const cplx> x, std::span<cplx> out) { active().abs2(x, out); }
inline cplx dot(std::span<const cplx> x, std::span<const cplx> y) { return active().dot(x, y); }
inline double norm2sq(std::span<const cplx> x) { return active().norm2sq(x); }
inline double max_abs(std::span<const cplx> x) { return active().max_abs(x); }
inline bool all_finite(std::span<const cplx> x) { return active().all_finite(x); }

}  // namespace sdamp::kernels
