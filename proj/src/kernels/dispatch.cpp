#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "capra/kernels.hpp"

#if defined(CAPRA_NO_AVX2)
namespace capra::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace capra::kernels
#endif

namespace capra::kernels {

namespace {

const Backend* pick_default() {
  if (const char* env = std::getenv("CAPRA_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_backend();
    if (want == "avx2" && avx2_backend()) return avx2_backend();
    // Unknown or unavailable request falls through to auto selection.
  }
  if (const Backend* b = avx2_backend()) return b;
  return &scalar_backend();
}

std::atomic<const Backend*>& slot() {
  static std::atomic<const Backend*> current{pick_default()};
  return current;
}

}  // namespace

const Backend& active_backend() { return *slot().load(std::memory_order_relaxed); }

void force_backend(const std::string& name) {
  if (name == "scalar") {
    slot().store(&scalar_backend());
  } else if (name == "avx2") {
    const Backend* b = avx2_backend();
    if (!b) throw std::runtime_error("avx2 backend unavailable");
    slot().store(b);
  } else if (name == "auto") {
    slot().store(pick_default());
  } else {
    throw std::invalid_argument("unknown kernel backend: " + name);
  }
}

void batch_dot(const double* xs, std::size_t n, std::size_t d, const double* y,
               double* out) {
  active_backend().batch_dot(xs, n, d, y, out);
}

void batch_sumsq(const double* xs, std::size_t n, std::size_t d, double* out) {
  active_backend().batch_sumsq(xs, n, d, out);
}

MaxResult bias_max(const double* s, const double* bias, std::size_t n) {
  return active_backend().bias_max(s, bias, n);
}

}  // namespace capra::kernels
