#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "capra/oracles.hpp"
#include "capra/vec.hpp"

using capra::Vec;
namespace oracles = capra::oracles;

TEST_CASE("the exhaustive law table has zero violations") {
  const auto table = oracles::moreau_law_table();
  CHECK(table.size() >= 20);
  long long total_cases = 0;
  for (const auto& law : table) {
    INFO(law.law, ": ", law.first_violation);
    CHECK(law.violations == 0);
    CHECK(law.cases > 0);
    total_cases += law.cases;
  }
  CHECK(total_cases > 1000);
}

TEST_CASE("subset enumeration finds the top-k witness") {
  const auto r = oracles::topk_norm_bruteforce(Vec{3.0, 0.0, -4.0}, 2);
  CHECK(r.value == 5.0);
  REQUIRE(r.witness_set.has_value());
  CHECK(r.witness_set->indices() == std::vector<int>{0, 2});

  const auto full = oracles::topk_norm_bruteforce(Vec{3.0, 0.0, -4.0}, 3);
  CHECK(full.value == 5.0);
  CHECK(full.witness_set->size() == 3);

  // First-index tie-break.
  const auto tie = oracles::topk_norm_bruteforce(Vec{1.0, 1.0}, 1);
  CHECK(tie.value == 1.0);
  CHECK(tie.witness_set->indices() == std::vector<int>{0});

  // Witnesses attain the reported value when re-evaluated.
  const Vec w = {0.3, -2.2, 1.7, 0.05};
  for (int k = 1; k <= 4; ++k) {
    const auto res = oracles::topk_norm_bruteforce(w, k);
    REQUIRE(res.witness_set.has_value());
    const double attained =
        capra::euclidean_norm(capra::project(w, *res.witness_set));
    CHECK(attained == doctest::Approx(res.value).epsilon(1e-10));
  }

  CHECK_THROWS_AS(oracles::topk_norm_bruteforce(Vec(21, 1.0), 2),
                  std::invalid_argument);
}

TEST_CASE("dual-norm brute force on the l1 / l2 extremes") {
  const Vec x = {3.0, -4.0};
  const auto k1 = oracles::dual_norm_bruteforce(x, 1);
  CHECK(k1.value == doctest::Approx(7.0).epsilon(1e-13));
  CHECK(k1.atom_lower_bound == doctest::Approx(4.0));
  const auto k2 = oracles::dual_norm_bruteforce(x, 2);
  CHECK(k2.value == doctest::Approx(5.0).epsilon(1e-13));

  const Vec e1 = {1.0, 0.0, 0.0};
  for (int k = 1; k <= 3; ++k)
    CHECK(oracles::dual_norm_bruteforce(e1, k).value ==
          doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(oracles::dual_norm_bruteforce(Vec(7, 1.0), 2),
                  std::invalid_argument);
}

TEST_CASE("dual-norm witnesses attain the reported value") {
  const Vec x = {1.5, -0.25, 2.0, 0.5};
  for (int k = 1; k <= 4; ++k) {
    const auto r = oracles::dual_norm_bruteforce(x, k, 8, 99);
    REQUIRE(r.witness_vec.has_value());
    const double attained = capra::dot(x, *r.witness_vec);
    CHECK(attained == doctest::Approx(r.value).epsilon(1e-10));
    CHECK(r.value >= r.atom_lower_bound);
    CHECK(r.evaluations > 0);
  }
}

TEST_CASE("hull membership on the sphere matches sparsity") {
  const Vec in2 = {0.6, 0.8, 0.0};
  auto h = oracles::hull_membership_sampled(in2, 2, 30, 5);
  CHECK(h.in_support_ball);
  CHECK(h.level_set_agrees);
  CHECK(h.sampled_hull_inside);
  CHECK(h.samples_checked == 30);

  const double s3 = 1.0 / std::sqrt(3.0);
  const Vec out2 = {s3, s3, s3};
  h = oracles::hull_membership_sampled(out2, 2, 30, 5);
  CHECK_FALSE(h.in_support_ball);
  CHECK(h.level_set_agrees);
  CHECK(h.ksupport_value > 1.0 + 1e-9);

  const Vec e1 = {1.0, 0.0};
  CHECK(oracles::hull_membership_sampled(e1, 1, 10, 5).in_support_ball);

  CHECK_THROWS_AS(oracles::hull_membership_sampled(Vec{0.5, 0.5}, 1, 10, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracles::hull_membership_sampled(Vec(7, 0.0), 1, 10, 5),
                  std::invalid_argument);
}
