#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <vector>

#include "capra/xreal.hpp"

using capra::XReal;

namespace {
const XReal kTop = XReal::pos_inf();
const XReal kBot = XReal::neg_inf();
const std::vector<XReal> kProbes = {kBot, XReal(-1.0), XReal(0.0), XReal(1.0),
                                    kTop};
}  // namespace

TEST_CASE("lower addition resolves mixed infinities downward") {
  CHECK(low_add(kTop, kBot) == kBot);
  CHECK(low_add(kBot, kTop) == kBot);
  CHECK(low_add(XReal(1.0), XReal(2.0)) == XReal(3.0));
  CHECK(low_add(kBot, kBot) == kBot);
  CHECK(low_add(kTop, kTop) == kTop);
  CHECK(low_add(kTop, XReal(5.0)) == kTop);
}

TEST_CASE("upper addition resolves mixed infinities upward") {
  CHECK(upp_add(kTop, kBot) == kTop);
  CHECK(upp_add(kBot, kTop) == kTop);
  CHECK(upp_add(XReal(-3.0), XReal(3.0)) == XReal(0.0));
  CHECK(upp_add(kTop, XReal(5.0)) == kTop);
  CHECK(upp_add(kBot, kBot) == kBot);
}

TEST_CASE("negation swaps infinities and is involutive") {
  CHECK(neg(kTop) == kBot);
  CHECK(neg(kBot) == kTop);
  CHECK(neg(XReal(0.0)) == XReal(0.0));
  CHECK(neg(XReal(2.5)) == XReal(-2.5));
  for (XReal u : kProbes) CHECK(neg(neg(u)) == u);
}

TEST_CASE("folds use the empty-set conventions") {
  CHECK(capra::sup_fold(std::vector<XReal>{}) == kBot);
  CHECK(capra::inf_fold(std::vector<XReal>{}) == kTop);
  CHECK(capra::sup_fold(std::vector<XReal>{XReal(1.0), kTop, XReal(-2.0)}) == kTop);
  CHECK(capra::inf_fold(std::vector<XReal>{XReal(1.0), kBot}) == kBot);
  CHECK(capra::sup_fold(std::vector<XReal>{XReal(1.0), XReal(-2.0)}) == XReal(1.0));
}

TEST_CASE("NaN payloads are rejected, IEEE infinities normalize") {
  CHECK_THROWS_AS(XReal(std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
  CHECK(XReal(std::numeric_limits<double>::infinity()).is_pos_inf());
  CHECK(XReal(-std::numeric_limits<double>::infinity()).is_neg_inf());
  CHECK(XReal(1.5).is_finite());
}

TEST_CASE("order is total over the probe set") {
  for (std::size_t i = 0; i < kProbes.size(); ++i)
    for (std::size_t j = 0; j < kProbes.size(); ++j) {
      CHECK((kProbes[i] < kProbes[j]) == (i < j));
      CHECK((kProbes[i] == kProbes[j]) == (i == j));
    }
}

TEST_CASE("both additions are commutative, associative and monotone") {
  for (XReal u : kProbes)
    for (XReal v : kProbes) {
      CHECK(low_add(u, v) == low_add(v, u));
      CHECK(upp_add(u, v) == upp_add(v, u));
      CHECK(low_add(u, v) <= upp_add(u, v));
      for (XReal w : kProbes) {
        CHECK(low_add(low_add(u, v), w) == low_add(u, low_add(v, w)));
        CHECK(upp_add(upp_add(u, v), w) == upp_add(u, upp_add(v, w)));
      }
    }
}

TEST_CASE("negation exchanges the two additions") {
  for (XReal u : kProbes)
    for (XReal v : kProbes) {
      CHECK(neg(upp_add(u, v)) == low_add(neg(u), neg(v)));
      CHECK(neg(low_add(u, v)) == upp_add(neg(u), neg(v)));
    }
}

TEST_CASE("mixed associativity is an inequality with known strict cases") {
  for (XReal u : kProbes)
    for (XReal v : kProbes)
      for (XReal w : kProbes) {
        const XReal lhs = low_add(upp_add(u, v), w);
        const XReal rhs = upp_add(u, low_add(v, w));
        CHECK(lhs <= rhs);
        const bool strict_expected =
            (u.is_pos_inf() && w.is_neg_inf()) ||
            (u.is_neg_inf() && w.is_pos_inf() && v.is_finite());
        CHECK((lhs < rhs) == strict_expected);
      }
}
