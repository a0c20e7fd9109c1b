#pragma once

#include <cstddef>
#include <string>

namespace capra::kernels {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Result of a max reduction: the value and the first index attaining it.
/// For an empty input, value is -inf and index is npos.
struct MaxResult {
  double value;
  std::size_t index;
};

/// Batch kernels over sample sets stored structure-of-arrays: xs[j*n + i]
/// is coordinate j of point i. The parallel axis is the point index i and
/// every backend performs the per-point arithmetic in the same order
/// (coordinate loop outer, multiply then add, no FMA contraction), so
/// scalar and SIMD variants agree bitwise and are tested that way.
struct Backend {
  // out[i] = sum_j xs[j*n + i] * y[j]
  void (*batch_dot)(const double* xs, std::size_t n, std::size_t d,
                    const double* y, double* out);
  // out[i] = sum_j xs[j*n + i]^2
  void (*batch_sumsq)(const double* xs, std::size_t n, std::size_t d,
                      double* out);
  // max_i (s[i] + bias[i]); bias entries may be -inf to exclude a point.
  // Ties resolve to the smallest index. Inputs must not produce NaN
  // (s finite, bias finite or -inf).
  MaxResult (*bias_max)(const double* s, const double* bias, std::size_t n);
  const char* name;
};

/// Scalar reference backend (always available).
const Backend& scalar_backend();

/// AVX2 backend, or nullptr when unsupported by the build or the CPU.
const Backend* avx2_backend();

/// Runtime-selected backend: AVX2 when available unless overridden by the
/// CAPRA_KERNELS environment variable ("scalar" or "avx2") or force_backend.
const Backend& active_backend();

/// Force a backend by name ("scalar", "avx2", "auto"); throws on an
/// unavailable choice. Intended for tests and the CLI.
void force_backend(const std::string& name);

// Convenience wrappers over the active backend.
void batch_dot(const double* xs, std::size_t n, std::size_t d, const double* y,
               double* out);
void batch_sumsq(const double* xs, std::size_t n, std::size_t d, double* out);
MaxResult bias_max(const double* s, const double* bias, std::size_t n);

}  // namespace capra::kernels
