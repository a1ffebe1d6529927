#pragma once

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2 variant picked at runtime. Element-wise results of the two variants
// are bit-identical; reductions differ only in summation order.

#include <cstddef>
#include <span>
#include <vector>

namespace iso::simd {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa) noexcept;

/// AVX2 variant compiled in and supported by the running CPU.
bool avx2_available() noexcept;

/// Variant used by the dispatching entry points. Defaults to the best
/// available; ISO_COMPARE_SIMD=scalar in the environment forces the reference.
Isa active_isa() noexcept;

/// Override the dispatch target (tests, benchmarks). Throws if unavailable.
void set_isa(Isa isa);

/// Sum of values[i]^exponent for a nonnegative integer exponent.
double power_sum(std::span<const double> values, int exponent);

/// dy/dx on a strictly increasing, possibly non-uniform grid. Three-point
/// second-order weights in the interior and one-sided three-point formulas
/// at both ends. out.size() must equal x.size().
void centered_difference(std::span<const double> x, std::span<const double> y,
                         std::span<double> out);

/// Indices i with values[i] - values[i + 1] > rel_tol * |values[i]|.
std::vector<std::size_t> decreasing_steps(std::span<const double> values, double rel_tol);

namespace scalar {
double power_sum(std::span<const double> values, int exponent);
void centered_difference(std::span<const double> x, std::span<const double> y,
                         std::span<double> out);
std::vector<std::size_t> decreasing_steps(std::span<const double> values, double rel_tol);
}  // namespace scalar

#if defined(ISO_SIMD_AVX2)
namespace avx2 {
double power_sum(std::span<const double> values, int exponent);
void centered_difference(std::span<const double> x, std::span<const double> y,
                         std::span<double> out);
std::vector<std::size_t> decreasing_steps(std::span<const double> values, double rel_tol);
}  // namespace avx2
#endif

}  // namespace iso::simd
