#include <atomic>
#include <cstdlib>
#include <string_view>

#include "iso/error.hpp"
#include "iso/simd/kernels.hpp"

namespace iso::simd {

namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("ISO_COMPARE_SIMD")) {
    if (std::string_view(env) == "scalar") return Isa::scalar;
  }
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const char* to_string(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

bool avx2_available() noexcept {
#if defined(ISO_SIMD_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) {
    throw Error(ErrorKind::validation, "AVX2 kernels are not available on this machine");
  }
  current().store(isa, std::memory_order_relaxed);
}

double power_sum(std::span<const double> values, int exponent) {
#if defined(ISO_SIMD_AVX2)
  if (active_isa() == Isa::avx2) return avx2::power_sum(values, exponent);
#endif
  return scalar::power_sum(values, exponent);
}

void centered_difference(std::span<const double> x, std::span<const double> y,
                         std::span<double> out) {
#if defined(ISO_SIMD_AVX2)
  if (active_isa() == Isa::avx2) return avx2::centered_difference(x, y, out);
#endif
  scalar::centered_difference(x, y, out);
}

std::vector<std::size_t> decreasing_steps(std::span<const double> values, double rel_tol) {
#if defined(ISO_SIMD_AVX2)
  if (active_isa() == Isa::avx2) return avx2::decreasing_steps(values, rel_tol);
#endif
  return scalar::decreasing_steps(values, rel_tol);
}

}  // namespace iso::simd
