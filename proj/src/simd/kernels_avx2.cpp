// Compiled with -mavx2 only (no FMA) so per-lane arithmetic rounds exactly
// like the scalar reference.

#include <immintrin.h>

#include <cmath>

#include "iso/error.hpp"
#include "iso/simd/kernels.hpp"

namespace iso::simd::avx2 {

namespace {

__m256d ipow4(__m256d base, int exponent) {
  __m256d result = _mm256_set1_pd(1.0);
  while (exponent > 0) {
    if (exponent & 1) result = _mm256_mul_pd(result, base);
    base = _mm256_mul_pd(base, base);
    exponent >>= 1;
  }
  return result;
}

double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

double power_sum(std::span<const double> values, int exponent) {
  if (exponent < 0) throw Error(ErrorKind::domain, "power_sum needs a nonnegative exponent");
  const std::size_t n = values.size();
  const double* p = values.data();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, ipow4(_mm256_loadu_pd(p + i), exponent));
  }
  double sum = hsum(acc);
  if (i < n) sum += scalar::power_sum(values.subspan(i), exponent);
  return sum;
}

void centered_difference(std::span<const double> x, std::span<const double> y,
                         std::span<double> out) {
  const std::size_t n = x.size();
  if (n < 6 || y.size() != n || out.size() != n) {
    scalar::centered_difference(x, y, out);
    return;
  }
  // Ends and the remainder go through the reference path.
  scalar::centered_difference(x.first(3), y.first(3), out.first(3));
  const double first = out[0];
  scalar::centered_difference(x.last(3), y.last(3), out.last(3));
  const double last = out[n - 1];

  const double* px = x.data();
  const double* py = y.data();
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d xm = _mm256_loadu_pd(px + i - 1);
    const __m256d x0 = _mm256_loadu_pd(px + i);
    const __m256d xp = _mm256_loadu_pd(px + i + 1);
    const __m256d ym = _mm256_loadu_pd(py + i - 1);
    const __m256d y0 = _mm256_loadu_pd(py + i);
    const __m256d yp = _mm256_loadu_pd(py + i + 1);
    const __m256d h1 = _mm256_sub_pd(x0, xm);
    const __m256d h2 = _mm256_sub_pd(xp, x0);
    const __m256d hs = _mm256_add_pd(h1, h2);
    const __m256d neg_h2 = _mm256_sub_pd(_mm256_setzero_pd(), h2);
    const __m256d wm = _mm256_div_pd(neg_h2, _mm256_mul_pd(h1, hs));
    const __m256d w0 = _mm256_div_pd(_mm256_sub_pd(h2, h1), _mm256_mul_pd(h1, h2));
    const __m256d wp = _mm256_div_pd(h1, _mm256_mul_pd(h2, hs));
    const __m256d r =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(wm, ym), _mm256_mul_pd(w0, y0)),
                      _mm256_mul_pd(wp, yp));
    _mm256_storeu_pd(out.data() + i, r);
  }
  for (; i + 1 < n; ++i) {
    const double h1 = x[i] - x[i - 1];
    const double h2 = x[i + 1] - x[i];
    const double wm = -h2 / (h1 * (h1 + h2));
    const double w0 = (h2 - h1) / (h1 * h2);
    const double wp = h1 / (h2 * (h1 + h2));
    out[i] = wm * y[i - 1] + w0 * y[i] + wp * y[i + 1];
  }
  out[0] = first;
  out[n - 1] = last;
}

std::vector<std::size_t> decreasing_steps(std::span<const double> values, double rel_tol) {
  std::vector<std::size_t> hits;
  const std::size_t n = values.size();
  if (n < 2) return hits;
  const double* p = values.data();
  const __m256d tol = _mm256_set1_pd(rel_tol);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  std::size_t i = 0;
  for (; i + 4 < n; i += 4) {
    const __m256d cur = _mm256_loadu_pd(p + i);
    const __m256d next = _mm256_loadu_pd(p + i + 1);
    const __m256d drop = _mm256_sub_pd(cur, next);
    const __m256d limit = _mm256_mul_pd(tol, _mm256_and_pd(cur, abs_mask));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(drop, limit, _CMP_GT_OQ));
    if (mask != 0) {
      for (int lane = 0; lane < 4; ++lane) {
        if (mask & (1 << lane)) hits.push_back(i + static_cast<std::size_t>(lane));
      }
    }
  }
  for (; i + 1 < n; ++i) {
    const double drop = values[i] - values[i + 1];
    if (drop > rel_tol * std::fabs(values[i])) hits.push_back(i);
  }
  return hits;
}

}  // namespace iso::simd::avx2
