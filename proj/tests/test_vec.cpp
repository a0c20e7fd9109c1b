#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "capra/oracles.hpp"
#include "capra/rng.hpp"
#include "capra/vec.hpp"

using capra::l0;
using capra::SupportSet;
using capra::Vec;

TEST_CASE("projection keeps K and zeroes the complement") {
  const Vec x = {3.0, 0.0, -4.0};
  CHECK(capra::project(x, SupportSet::of(3, {0})) == Vec{3.0, 0.0, 0.0});
  CHECK(capra::project(x, SupportSet::full(3)) == x);
  CHECK(capra::project(x, SupportSet::empty(3)) == Vec{0.0, 0.0, 0.0});
  CHECK_THROWS_AS(capra::project(x, SupportSet::full(2)), std::invalid_argument);
}

TEST_CASE("support sets partition the coordinates") {
  const SupportSet K = SupportSet::of(5, {0, 3});
  const SupportSet C = K.complement();
  CHECK(K.size() + C.size() == 5);
  CHECK((K.bits() & C.bits()) == 0);
  CHECK((K.bits() | C.bits()) == SupportSet::full(5).bits());
  CHECK(K.indices() == std::vector<int>{0, 3});
  CHECK_THROWS_AS(SupportSet::of(3, {3}), std::invalid_argument);
}

TEST_CASE("l0 counts entries above the tolerance") {
  CHECK(l0(Vec{0.0, 0.0, 0.0}, 0.0) == 0);
  CHECK(l0(Vec{3.0, 0.0, -4.0}, 0.0) == 2);
  CHECK(l0(Vec{1e-15, 1.0, 0.0}, 1e-12) == 1);
  CHECK_THROWS_AS(l0(Vec{1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("top-k norm on the worked example") {
  const Vec x = {3.0, 0.0, -4.0};
  CHECK(capra::topk_norm(x, 0) == 0.0);
  CHECK(capra::topk_norm(x, 1) == 4.0);
  CHECK(capra::topk_norm(x, 2) == 5.0);
  CHECK(capra::topk_norm(x, 3) == 5.0);
  CHECK_THROWS_AS(capra::topk_norm(x, 4), std::invalid_argument);
  CHECK_THROWS_AS(capra::topk_norm(x, -1), std::invalid_argument);
}

TEST_CASE("top-k equals the subset-enumeration oracle bitwise") {
  capra::Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(6));
    Vec x(d);
    for (double& v : x) v = 2.0 * rng.normal();
    if (d >= 2 && rng.uniform() < 0.3) x[0] = -x[d - 1];  // force a tie
    if (d >= 3 && rng.uniform() < 0.3) x[1] = x[d - 1];   // and another
    double running = 0.0;  // sup over |K| <= k via the |K| = m slices
    for (int k = 0; k <= d; ++k) {
      const double exact_card = capra::oracles::topk_norm_bruteforce(x, k).value;
      CHECK(capra::topk_norm(x, k) == exact_card);
      running = std::max(running, exact_card);
      // |K| <= k and |K| = k give the same supremum.
      CHECK(running == exact_card);
    }
  }
}

TEST_CASE("the full-order norm agrees with the Euclidean norm") {
  capra::Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(8));
    Vec x(d);
    for (double& v : x) v = 2.0 * rng.normal();
    const double nx = capra::euclidean_norm(x);
    CHECK(capra::topk_norm(x, d) == doctest::Approx(nx).epsilon(1e-15));
  }
}

TEST_CASE("k-support norm on the worked examples, gated by the dual oracle") {
  const Vec x = {3.0, -4.0};
  CHECK(capra::ksupport_norm(x, 1) == doctest::Approx(7.0).epsilon(1e-13));
  CHECK(capra::ksupport_norm(x, 2) == doctest::Approx(5.0).epsilon(1e-13));
  for (int k = 1; k <= 2; ++k) {
    const auto oracle = capra::oracles::dual_norm_bruteforce(x, k);
    CHECK(capra::ksupport_norm(x, k) ==
          doctest::Approx(oracle.value).epsilon(1e-6));
  }
  const Vec e1 = {1.0, 0.0, 0.0};
  for (int k = 1; k <= 3; ++k)
    CHECK(capra::ksupport_norm(e1, k) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(capra::ksupport_norm(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(capra::ksupport_norm(x, 3), std::invalid_argument);
}

TEST_CASE("norm chain recovers l0") {
  CHECK(capra::l0_via_norm_chain(Vec{0.0, 0.0}) == 0);
  CHECK(capra::l0_via_norm_chain(Vec{3.0, 0.0, -4.0}) == 2);
  CHECK(capra::l0_via_norm_chain(Vec{1.0, 1.0, 1.0}) == 3);

  capra::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(8));
    Vec x(d, 0.0);
    const int support = static_cast<int>(rng.below(d + 1));
    for (int j = 0; j < support; ++j) x[j] = rng.uniform(0.1, 3.0);
    CHECK(capra::l0_via_norm_chain(x) == l0(x));
  }
}

TEST_CASE("level sets by the norm-equality test") {
  const Vec x = {3.0, 0.0, -4.0};
  CHECK(capra::level_set_contains(x, 2, 1e-9));
  CHECK_FALSE(capra::level_set_contains(x, 1, 1e-9));
  CHECK(capra::level_set_contains(Vec{0.0, 0.0, 0.0}, 0, 1e-9));
}

TEST_CASE("support function of the sparse ball is the projected norm") {
  const Vec y = {3.0, 0.0, -4.0};
  CHECK(capra::support_fn_ball_K(y, SupportSet::of(3, {0, 1})) == 3.0);
  CHECK(capra::support_fn_ball_K(y, SupportSet::full(3)) ==
        capra::euclidean_norm(y));
  CHECK(capra::support_fn_ball_K(y, SupportSet::empty(3)) == 0.0);
}

TEST_CASE("normalization maps onto the sphere plus the origin") {
  CHECK(capra::normalization(Vec{3.0, 4.0}) == Vec{0.6, 0.8});
  CHECK(capra::normalization(Vec{0.0, 0.0}) == Vec{0.0, 0.0});
  const Vec u = capra::normalization(Vec{0.6, 0.8});
  CHECK(u[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(u[1] == doctest::Approx(0.8).epsilon(1e-15));

  capra::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Vec x(3);
    for (double& v : x) v = rng.normal();
    const Vec n1 = capra::normalization(x);
    CHECK(capra::euclidean_norm(n1) == doctest::Approx(1.0).epsilon(1e-14));
    const Vec n2 = capra::normalization(n1);
    for (int i = 0; i < 3; ++i)
      CHECK(n2[i] == doctest::Approx(n1[i]).epsilon(1e-14));
  }
}

TEST_CASE("degenerate dimensions behave") {
  const Vec x = {-2.0};
  CHECK(capra::topk_norm(x, 1) == 2.0);
  CHECK(capra::ksupport_norm(x, 1) == 2.0);
  CHECK(l0(x) == 1);
  CHECK(capra::l0_via_norm_chain(x) == 1);
  CHECK_THROWS_AS(capra::validate_vector(Vec{}), std::invalid_argument);
  CHECK_THROWS_AS(capra::validate_vector(Vec{std::nan("")}), std::invalid_argument);
}

TEST_CASE("norm_value dispatches on the kind") {
  const Vec x = {3.0, -4.0};
  CHECK(capra::norm_value(x, {capra::NormKind::Euclidean, 0}) == 5.0);
  CHECK(capra::norm_value(x, {capra::NormKind::TopK, 1}) == 4.0);
  CHECK(capra::norm_value(x, {capra::NormKind::KSupport, 1}) ==
        doctest::Approx(7.0));
}
