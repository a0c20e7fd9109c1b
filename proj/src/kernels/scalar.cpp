#include <cstring>
#include <limits>

#include "capra/kernels.hpp"

namespace capra::kernels {

namespace {

void batch_dot_scalar(const double* xs, std::size_t n, std::size_t d,
                      const double* y, double* out) {
  std::memset(out, 0, n * sizeof(double));
  for (std::size_t j = 0; j < d; ++j) {
    const double* col = xs + j * n;
    const double yj = y[j];
    for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + col[i] * yj;
  }
}

void batch_sumsq_scalar(const double* xs, std::size_t n, std::size_t d,
                        double* out) {
  std::memset(out, 0, n * sizeof(double));
  for (std::size_t j = 0; j < d; ++j) {
    const double* col = xs + j * n;
    for (std::size_t i = 0; i < n; ++i) out[i] = out[i] + col[i] * col[i];
  }
}

MaxResult bias_max_scalar(const double* s, const double* bias, std::size_t n) {
  MaxResult r{-std::numeric_limits<double>::infinity(), npos};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = s[i] + bias[i];
    if (v > r.value) {
      r.value = v;
      r.index = i;
    }
  }
  return r;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{batch_dot_scalar, batch_sumsq_scalar, bias_max_scalar,
                         "scalar"};
  return b;
}

}  // namespace capra::kernels
