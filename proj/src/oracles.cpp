#include "capra/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "capra/rng.hpp"

namespace capra::oracles {

namespace {

// Visit all |K| = k index combinations of {0,...,d-1} in lexicographic order.
void for_each_combination(int d, int k,
                          const std::function<void(const std::vector<int>&)>& fn) {
  if (k == 0) {
    fn({});
    return;
  }
  std::vector<int> comb(k);
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    fn(comb);
    int i = k - 1;
    while (i >= 0 && comb[i] == d - k + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
}

// Enumerated top-k norm, independent of the library implementation.
double enum_topk(const Vec& y, int k, long long* evals = nullptr) {
  if (k == 0) return 0.0;
  double best_sq = -1.0;
  for_each_combination(static_cast<int>(y.size()), k,
                       [&](const std::vector<int>& comb) {
                         double s = 0.0;
                         for (int i : comb) s += y[i] * y[i];
                         if (evals) ++*evals;
                         if (s > best_sq) best_sq = s;
                       });
  return std::sqrt(best_sq);
}

}  // namespace

OracleResult topk_norm_bruteforce(const Vec& x, int k) {
  const int d = static_cast<int>(x.size());
  if (d > 20) throw std::invalid_argument("topk_norm_bruteforce: d > 20 guard");
  if (k < 0 || k > d) throw std::invalid_argument("topk_norm_bruteforce: k out of range");
  OracleResult r;
  if (k == 0) {
    r.value = 0.0;
    r.witness_set = SupportSet::empty(d);
    return r;
  }
  double best_sq = -1.0;
  std::vector<int> best_comb;
  for_each_combination(d, k, [&](const std::vector<int>& comb) {
    // Squares summed in (magnitude desc, index asc) order: the canonical
    // order shared with topk_norm, so tied subsets sum bitwise alike.
    std::vector<int> order = comb;
    std::sort(order.begin(), order.end(), [&x](int a, int b) {
      const double ma = std::abs(x[a]), mb = std::abs(x[b]);
      return ma != mb ? ma > mb : a < b;
    });
    double s = 0.0;
    for (int i : order) s += x[i] * x[i];
    ++r.evaluations;
    if (s > best_sq) {
      best_sq = s;
      best_comb = comb;
    }
  });
  r.value = std::sqrt(best_sq);
  r.atom_lower_bound = r.value;
  r.witness_set = SupportSet::of(d, best_comb);
  return r;
}

OracleResult dual_norm_bruteforce(const Vec& x, int k, int budget,
                                  std::uint64_t seed) {
  const int d = static_cast<int>(x.size());
  if (d > 6) throw std::invalid_argument("dual_norm_bruteforce: d > 6 guard");
  if (k < 1 || k > d) throw std::invalid_argument("dual_norm_bruteforce: k out of range");

  OracleResult r;
  if (is_zero(x)) {
    r.value = 0.0;
    r.witness_vec = Vec(d, 0.0);
    return r;
  }

  // Route (a): atoms. On the slice B_K the optimum of <x,.> is ||x_K||,
  // attained at x_K / ||x_K||.
  double best = -1.0;
  Vec best_y;
  for_each_combination(d, k, [&](const std::vector<int>& comb) {
    double s = 0.0;
    for (int i : comb) s += x[i] * x[i];
    ++r.evaluations;
    const double val = std::sqrt(s);
    if (val > best) {
      best = val;
      best_y = Vec(d, 0.0);
      if (val > 0.0)
        for (int i : comb) best_y[i] = x[i] / val;
    }
  });
  const double route_a = best;
  r.atom_lower_bound = route_a;

  // Route (b): ascent on the scale-invariant ratio <x,y> / ||y||_(k),
  // evaluated on the rescaled feasible point.
  const auto consider = [&](const Vec& y) {
    const double n = enum_topk(y, k, &r.evaluations);
    if (!(n > 0.0)) return;
    Vec z(d);
    for (int i = 0; i < d; ++i) z[i] = y[i] / n;
    const double val = dot(x, z);
    ++r.evaluations;
    if (val > best) {
      best = val;
      best_y = z;
    }
  };

  const auto ascend = [&](Vec y) {
    double n = enum_topk(y, k, &r.evaluations);
    if (!(n > 0.0)) return;
    for (int i = 0; i < d; ++i) y[i] /= n;
    consider(y);
    double cur = dot(x, y);
    // Gradient phase: push along x, rescale to the boundary.
    for (double eta = 1.0; eta > 1e-10; eta *= 0.6) {
      Vec z(d);
      for (int i = 0; i < d; ++i) z[i] = y[i] + eta * x[i];
      const double zn = enum_topk(z, k, &r.evaluations);
      if (!(zn > 0.0)) continue;
      for (int i = 0; i < d; ++i) z[i] /= zn;
      const double val = dot(x, z);
      ++r.evaluations;
      if (val > cur) {
        cur = val;
        y = z;
      }
    }
    // Polish with shrinking steps over coordinate and paired directions;
    // the joint moves track the tie kinks of the top-k ball boundary.
    std::vector<Vec> dirs;
    for (int i = 0; i < d; ++i) {
      Vec e(d, 0.0);
      e[i] = 1.0;
      dirs.push_back(e);
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Vec p(d, 0.0);
        p[i] = 1.0;
        p[j] = 1.0;
        dirs.push_back(p);
        p[j] = -1.0;
        dirs.push_back(p);
      }
    for (double delta = 0.25; delta > 1e-11; delta *= 0.5) {
      bool improved = true;
      int sweeps = 0;
      while (improved && sweeps++ < 8) {
        improved = false;
        for (const Vec& dir : dirs) {
          for (double sgn : {1.0, -1.0}) {
            Vec z = y;
            for (int j = 0; j < d; ++j) z[j] += sgn * delta * dir[j];
            const double zn = enum_topk(z, k, &r.evaluations);
            if (!(zn > 0.0)) continue;
            for (int j = 0; j < d; ++j) z[j] /= zn;
            const double val = dot(x, z);
            ++r.evaluations;
            if (val > cur) {
              cur = val;
              y = z;
              improved = true;
            }
          }
        }
      }
    }
    consider(y);
  };

  // Deterministic starts: the sign vector (l1 optimum at k = 1), x itself
  // (l2 optimum at k = d), and sign patterns restricted to top-m supports.
  Vec sign_x(d, 0.0);
  for (int i = 0; i < d; ++i) sign_x[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
  ascend(sign_x);
  ascend(x);
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&x](int a, int b) {
    const double ma = std::abs(x[a]), mb = std::abs(x[b]);
    return ma != mb ? ma > mb : a < b;
  });
  for (int m = 1; m <= d; ++m) {
    Vec y(d, 0.0);
    for (int j = 0; j < m; ++j) y[order[j]] = sign_x[order[j]];
    ascend(y);
  }

  Rng rng(seed);
  for (int t = 0; t < budget; ++t) {
    Vec y(d);
    for (int i = 0; i < d; ++i) y[i] = rng.normal();
    ascend(y);
  }

  if (best < route_a) {  // cannot happen: route (a) candidates are kept
    best = route_a;
  }
  r.value = best;
  r.witness_vec = best_y;
  return r;
}

HullMembership hull_membership_sampled(const Vec& x, int k, int n_samples,
                                       std::uint64_t seed) {
  const int d = static_cast<int>(x.size());
  if (d > 6) throw std::invalid_argument("hull_membership_sampled: d > 6 guard");
  if (k < 1 || k > d) throw std::invalid_argument("hull_membership_sampled: k out of range");
  if (std::abs(euclidean_norm(x) - 1.0) > 1e-9)
    throw std::invalid_argument("hull_membership_sampled: x not on the unit sphere");

  constexpr double tol = 1e-9;
  HullMembership h;
  h.ksupport_value = ksupport_norm(x, k);
  h.in_support_ball = h.ksupport_value <= 1.0 + tol;
  h.level_set_agrees = h.in_support_ball == level_set_contains(x, k, tol);

  // Convex combinations of random k-sparse unit atoms must stay inside the
  // ball (the ball is the closed convex hull of those atoms).
  Rng rng(seed);
  h.sampled_hull_inside = true;
  for (int s = 0; s < n_samples; ++s) {
    const int terms = 1 + static_cast<int>(rng.below(3));
    Vec z(d, 0.0);
    double wsum = 0.0;
    std::vector<double> w(terms);
    for (int t = 0; t < terms; ++t) {
      w[t] = rng.uniform(0.1, 1.0);
      wsum += w[t];
    }
    for (int t = 0; t < terms; ++t) {
      Vec a(d, 0.0);
      std::vector<int> idx(d);
      std::iota(idx.begin(), idx.end(), 0);
      for (int j = 0; j < k; ++j)
        std::swap(idx[j], idx[j + rng.below(d - j)]);
      double nsq = 0.0;
      for (int j = 0; j < k; ++j) {
        a[idx[j]] = rng.normal();
        nsq += a[idx[j]] * a[idx[j]];
      }
      if (nsq == 0.0) continue;
      const double an = std::sqrt(nsq);
      for (int j = 0; j < k; ++j) a[idx[j]] /= an;
      for (int i = 0; i < d; ++i) z[i] += (w[t] / wsum) * a[i];
    }
    ++h.samples_checked;
    if (ksupport_norm(z, k) > 1.0 + 1e-9) h.sampled_hull_inside = false;
  }
  return h;
}

namespace {

using P = XReal;

std::string triple_str(P u, P v, P w) {
  std::ostringstream os;
  os << "(" << u.str() << ", " << v.str() << ", " << w.str() << ")";
  return os.str();
}

struct LawTable {
  std::vector<LawRecord> records;
  LawRecord* current = nullptr;

  void begin(const std::string& name) {
    records.push_back(LawRecord{name, 0, 0, ""});
    current = &records.back();
  }
  void check(bool ok, const std::string& where) {
    ++current->cases;
    if (!ok) {
      ++current->violations;
      if (current->first_violation.empty()) current->first_violation = where;
    }
  }
};

}  // namespace

std::vector<LawRecord> moreau_law_table() {
  const std::vector<P> probes = {P::neg_inf(), P(-1.0), P(0.0), P(1.0),
                                 P::pos_inf()};
  // Nonempty families over the probe set, for the sup/inf distribution laws.
  std::vector<std::vector<P>> families;
  for (unsigned mask = 1; mask < (1u << probes.size()); ++mask) {
    std::vector<P> f;
    for (std::size_t i = 0; i < probes.size(); ++i)
      if (mask & (1u << i)) f.push_back(probes[i]);
    families.push_back(std::move(f));
  }

  LawTable t;

  t.begin("low_add commutative");
  for (P u : probes)
    for (P v : probes)
      t.check(low_add(u, v) == low_add(v, u), triple_str(u, v, P(0.0)));

  t.begin("upp_add commutative");
  for (P u : probes)
    for (P v : probes)
      t.check(upp_add(u, v) == upp_add(v, u), triple_str(u, v, P(0.0)));

  t.begin("low_add associative");
  for (P u : probes)
    for (P v : probes)
      for (P w : probes)
        t.check(low_add(low_add(u, v), w) == low_add(u, low_add(v, w)),
                triple_str(u, v, w));

  t.begin("upp_add associative");
  for (P u : probes)
    for (P v : probes)
      for (P w : probes)
        t.check(upp_add(upp_add(u, v), w) == upp_add(u, upp_add(v, w)),
                triple_str(u, v, w));

  t.begin("low_add monotone");
  for (P u : probes)
    for (P u2 : probes)
      for (P v : probes)
        for (P v2 : probes)
          if (u <= u2 && v <= v2)
            t.check(low_add(u, v) <= low_add(u2, v2), triple_str(u, v, u2));

  t.begin("upp_add monotone");
  for (P u : probes)
    for (P u2 : probes)
      for (P v : probes)
        for (P v2 : probes)
          if (u <= u2 && v <= v2)
            t.check(upp_add(u, v) <= upp_add(u2, v2), triple_str(u, v, u2));

  t.begin("low_add of negations below negated sum");
  for (P u : probes)
    for (P v : probes)
      t.check(low_add(neg(u), neg(v)) <= neg(low_add(u, v)),
              triple_str(u, v, P(0.0)));

  t.begin("upp_add of negations above negated sum");
  for (P u : probes)
    for (P v : probes)
      t.check(upp_add(neg(u), neg(v)) >= neg(upp_add(u, v)),
              triple_str(u, v, P(0.0)));

  t.begin("low self-subtraction nonpositive");
  for (P u : probes) t.check(low_add(neg(u), u) <= P(0.0), u.str());

  t.begin("upp self-subtraction nonnegative");
  for (P u : probes) t.check(upp_add(neg(u), u) >= P(0.0), u.str());

  t.begin("low_add distributes over sup");
  for (const auto& A : families)
    for (const auto& B : families) {
      const P lhs = low_add(sup_fold(A), sup_fold(B));
      P rhs = P::neg_inf();
      for (P a : A)
        for (P b : B)
          if (low_add(a, b) > rhs) rhs = low_add(a, b);
      t.check(lhs == rhs, "family pair");
    }

  t.begin("low_add superadditive over inf");
  for (const auto& A : families)
    for (const auto& B : families) {
      const P lhs = low_add(inf_fold(A), inf_fold(B));
      P rhs = P::pos_inf();
      for (P a : A)
        for (P b : B)
          if (low_add(a, b) < rhs) rhs = low_add(a, b);
      t.check(lhs <= rhs, "family pair");
    }

  t.begin("low_add constant slides through inf");
  for (const auto& A : families)
    for (P tt : probes) {
      if (tt.is_pos_inf()) continue;
      const P lhs = low_add(inf_fold(A), tt);
      std::vector<P> shifted;
      for (P a : A) shifted.push_back(low_add(a, tt));
      t.check(lhs == inf_fold(shifted), "family, t=" + tt.str());
    }

  t.begin("upp_add distributes over inf");
  for (const auto& A : families)
    for (const auto& B : families) {
      const P lhs = upp_add(inf_fold(A), inf_fold(B));
      P rhs = P::pos_inf();
      for (P a : A)
        for (P b : B)
          if (upp_add(a, b) < rhs) rhs = upp_add(a, b);
      t.check(lhs == rhs, "family pair");
    }

  t.begin("upp_add subadditive over sup");
  for (const auto& A : families)
    for (const auto& B : families) {
      const P lhs = upp_add(sup_fold(A), sup_fold(B));
      P rhs = P::neg_inf();
      for (P a : A)
        for (P b : B)
          if (upp_add(a, b) > rhs) rhs = upp_add(a, b);
      t.check(lhs >= rhs, "family pair");
    }

  t.begin("upp_add constant slides through sup");
  for (const auto& A : families)
    for (P tt : probes) {
      if (tt.is_neg_inf()) continue;
      const P lhs = upp_add(sup_fold(A), tt);
      std::vector<P> shifted;
      for (P a : A) shifted.push_back(upp_add(a, tt));
      t.check(lhs == sup_fold(shifted), "family, t=" + tt.str());
    }

  t.begin("low_add below upp_add");
  for (P u : probes)
    for (P v : probes)
      t.check(low_add(u, v) <= upp_add(u, v), triple_str(u, v, P(0.0)));

  t.begin("negation swaps the additions");
  for (P u : probes)
    for (P v : probes) {
      const bool ok1 = neg(upp_add(u, v)) == low_add(neg(u), neg(v));
      const bool ok2 = neg(low_add(u, v)) == upp_add(neg(u), neg(v));
      t.check(ok1 && ok2, triple_str(u, v, P(0.0)));
    }

  t.begin("mixed add associativity inequality");
  for (P u : probes)
    for (P v : probes)
      for (P w : probes)
        t.check(low_add(upp_add(u, v), w) <= upp_add(u, low_add(v, w)),
                triple_str(u, v, w));

  t.begin("mixed add associativity strictness");
  for (P u : probes)
    for (P v : probes)
      for (P w : probes) {
        const bool strict =
            low_add(upp_add(u, v), w) < upp_add(u, low_add(v, w));
        const bool expected = (u.is_pos_inf() && w.is_neg_inf()) ||
                              (u.is_neg_inf() && w.is_pos_inf() && v.is_finite());
        t.check(strict == expected, triple_str(u, v, w));
      }

  t.begin("comparison equivalences, zero form");
  for (P u : probes)
    for (P v : probes) {
      const bool a = low_add(u, neg(v)) <= P(0.0);
      const bool b = u <= v;
      const bool c = P(0.0) <= upp_add(v, neg(u));
      t.check(a == b && b == c, triple_str(u, v, P(0.0)));
    }

  t.begin("comparison equivalences, first chain");
  for (P u : probes)
    for (P v : probes)
      for (P w : probes) {
        const bool a = low_add(u, neg(v)) <= w;
        const bool b = u <= upp_add(v, w);
        const bool c = low_add(u, neg(w)) <= v;
        t.check(a == b && b == c, triple_str(u, v, w));
      }

  t.begin("comparison equivalences, second chain");
  for (P u : probes)
    for (P v : probes)
      for (P w : probes) {
        const bool a = w <= upp_add(v, neg(u));
        const bool b = low_add(u, w) <= v;
        const bool c = u <= upp_add(v, neg(w));
        t.check(a == b && b == c, triple_str(u, v, w));
      }

  return t.records;
}

}  // namespace capra::oracles
