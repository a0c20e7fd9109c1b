// AVX2 variants of the batch kernels. Per-point arithmetic mirrors the
// scalar backend exactly (coordinate loop outer, mul then add, no FMA), so
// results are bitwise identical; only the point axis is vectorized.

#include <cstring>
#include <limits>

#include "capra/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

namespace capra::kernels {

namespace {

void batch_dot_avx2(const double* xs, std::size_t n, std::size_t d,
                    const double* y, double* out) {
  std::memset(out, 0, n * sizeof(double));
  const std::size_t vn = n & ~std::size_t(3);
  for (std::size_t j = 0; j < d; ++j) {
    const double* col = xs + j * n;
    const double yj = y[j];
    const __m256d vy = _mm256_set1_pd(yj);
    for (std::size_t i = 0; i < vn; i += 4) {
      const __m256d acc = _mm256_loadu_pd(out + i);
      const __m256d c = _mm256_loadu_pd(col + i);
      _mm256_storeu_pd(out + i, _mm256_add_pd(acc, _mm256_mul_pd(c, vy)));
    }
    for (std::size_t i = vn; i < n; ++i) out[i] = out[i] + col[i] * yj;
  }
}

void batch_sumsq_avx2(const double* xs, std::size_t n, std::size_t d,
                      double* out) {
  std::memset(out, 0, n * sizeof(double));
  const std::size_t vn = n & ~std::size_t(3);
  for (std::size_t j = 0; j < d; ++j) {
    const double* col = xs + j * n;
    for (std::size_t i = 0; i < vn; i += 4) {
      const __m256d acc = _mm256_loadu_pd(out + i);
      const __m256d c = _mm256_loadu_pd(col + i);
      _mm256_storeu_pd(out + i, _mm256_add_pd(acc, _mm256_mul_pd(c, c)));
    }
    for (std::size_t i = vn; i < n; ++i) out[i] = out[i] + col[i] * col[i];
  }
}

MaxResult bias_max_avx2(const double* s, const double* bias, std::size_t n) {
  MaxResult r{-std::numeric_limits<double>::infinity(), npos};
  const auto take = [&r](double v, std::size_t i) {
    // -inf never claims an index: the scalar loop only records strict
    // improvements over its -inf start.
    if (v == -std::numeric_limits<double>::infinity()) return;
    if (v > r.value || (v == r.value && i < r.index)) r = {v, i};
  };

  const std::size_t vn = n & ~std::size_t(3);
  if (vn > 0) {
    __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    __m256i bidx = _mm256_set1_epi64x(-1);
    __m256i cur = _mm256_setr_epi64x(0, 1, 2, 3);
    const __m256i step = _mm256_set1_epi64x(4);
    for (std::size_t i = 0; i < vn; i += 4) {
      const __m256d v =
          _mm256_add_pd(_mm256_loadu_pd(s + i), _mm256_loadu_pd(bias + i));
      // Strict > keeps the first index per lane; lanes see increasing indices.
      const __m256d gt = _mm256_cmp_pd(v, best, _CMP_GT_OQ);
      best = _mm256_blendv_pd(best, v, gt);
      bidx = _mm256_blendv_epi8(bidx, cur, _mm256_castpd_si256(gt));
      cur = _mm256_add_epi64(cur, step);
    }
    alignas(32) double vals[4];
    alignas(32) long long idxs[4];
    _mm256_store_pd(vals, best);
    _mm256_store_si256(reinterpret_cast<__m256i*>(idxs), bidx);
    for (int lane = 0; lane < 4; ++lane) {
      const std::size_t idx =
          idxs[lane] < 0 ? npos : static_cast<std::size_t>(idxs[lane]);
      take(vals[lane], idx);
    }
  }
  for (std::size_t i = vn; i < n; ++i) take(s[i] + bias[i], i);
  return r;
}

}  // namespace

const Backend* avx2_backend() {
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  static const Backend b{batch_dot_avx2, batch_sumsq_avx2, bias_max_avx2,
                         "avx2"};
  return &b;
}

}  // namespace capra::kernels

#else

namespace capra::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace capra::kernels

#endif
