#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <vector>

#include "capra/kernels.hpp"
#include "capra/rng.hpp"

namespace k = capra::kernels;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> random_doubles(capra::Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (double& x : v) x = scale * rng.normal();
  return v;
}

}  // namespace

TEST_CASE("scalar batch_dot matches a straightforward evaluation") {
  capra::Rng rng(101);
  for (std::size_t n : {1u, 2u, 5u, 16u, 33u}) {
    for (std::size_t d : {1u, 2u, 4u, 7u}) {
      const auto xs = random_doubles(rng, n * d, 2.0);
      const auto y = random_doubles(rng, d, 1.5);
      std::vector<double> out(n);
      k::scalar_backend().batch_dot(xs.data(), n, d, y.data(), out.data());
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc = acc + xs[j * n + i] * y[j];
        CHECK(out[i] == acc);
      }
    }
  }
}

TEST_CASE("scalar bias_max keeps the first index among ties") {
  const std::vector<double> s = {1.0, 3.0, 3.0, 2.0};
  const std::vector<double> b = {0.0, 0.0, 0.0, 1.0};
  const auto r = k::scalar_backend().bias_max(s.data(), b.data(), s.size());
  CHECK(r.value == 3.0);
  CHECK(r.index == 1);  // indices 1, 2, 3 all reach 3.0
}

TEST_CASE("bias_max handles exclusions and the empty case") {
  const std::vector<double> s = {5.0, 7.0};
  const std::vector<double> b = {kNegInf, kNegInf};
  const auto r = k::scalar_backend().bias_max(s.data(), b.data(), 2);
  CHECK(r.value == kNegInf);
  CHECK(r.index == k::npos);
  const auto e = k::scalar_backend().bias_max(nullptr, nullptr, 0);
  CHECK(e.value == kNegInf);
  CHECK(e.index == k::npos);
}

TEST_CASE("AVX2 backend agrees with the scalar reference bitwise") {
  const k::Backend* avx = k::avx2_backend();
  if (!avx) {
    MESSAGE("avx2 unavailable on this machine; dispatch stays scalar");
    CHECK(std::string(k::active_backend().name) == "scalar");
    return;
  }
  capra::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(70);
    const std::size_t d = 1 + rng.below(9);
    const auto xs = random_doubles(rng, n * d, 3.0);
    const auto y = random_doubles(rng, d, 2.0);

    std::vector<double> out_s(n), out_v(n);
    k::scalar_backend().batch_dot(xs.data(), n, d, y.data(), out_s.data());
    avx->batch_dot(xs.data(), n, d, y.data(), out_v.data());
    CHECK(out_s == out_v);

    k::scalar_backend().batch_sumsq(xs.data(), n, d, out_s.data());
    avx->batch_sumsq(xs.data(), n, d, out_v.data());
    CHECK(out_s == out_v);

    auto bias = random_doubles(rng, n, 2.0);
    for (double& bv : bias)
      if (rng.uniform() < 0.2) bv = kNegInf;
    auto scores = random_doubles(rng, n, 1.0);
    // Engineer ties so the index rule is exercised, not just the value.
    if (n >= 4 && rng.uniform() < 0.5) {
      const std::size_t a = rng.below(n), b = rng.below(n);
      scores[a] = scores[b] = 0.25;
      bias[a] = bias[b] = 11.0;
    }
    const auto rs = k::scalar_backend().bias_max(scores.data(), bias.data(), n);
    const auto rv = avx->bias_max(scores.data(), bias.data(), n);
    CHECK(rs.value == rv.value);
    CHECK(rs.index == rv.index);
  }
}

TEST_CASE("forcing backends changes the active dispatch") {
  k::force_backend("scalar");
  CHECK(std::string(k::active_backend().name) == "scalar");
  if (k::avx2_backend()) {
    k::force_backend("avx2");
    CHECK(std::string(k::active_backend().name) == "avx2");
  } else {
    CHECK_THROWS_AS(k::force_backend("avx2"), std::runtime_error);
  }
  k::force_backend("auto");
  CHECK_THROWS_AS(k::force_backend("neon"), std::invalid_argument);
}
