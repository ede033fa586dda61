#include "sdamp/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sdamp::kernels {
namespace {

Backend detect() {
  if (const char* env = std::getenv("SDAMP_KERNELS"); env && std::string(env) == "scalar")
    return Backend::Scalar;
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !cpu_has_avx2())
    throw std::runtime_error("AVX2 kernels requested but the CPU does not support AVX2");
  current().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

const Table& active() {
#if defined(__x86_64__)
  if (active_backend() == Backend::Avx2) return avx2_table();
#endif
  return scalar_table();
}

}  // namespace sdamp::kernels
