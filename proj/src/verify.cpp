#include "capra/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>

#include "capra/conjugacy.hpp"
#include "capra/oracles.hpp"
#include "capra/rng.hpp"

namespace capra::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> clamp_dims(const std::vector<int>& dims, int lo, int hi) {
  std::vector<int> out;
  for (int d : dims)
    if (d >= lo && d <= hi) out.push_back(d);
  return out;
}

// Timing + error capture around a check body.
CheckRecord run_check(const std::string& id, const std::string& ref,
                      const std::function<void(CheckRecord&)>& body) {
  CheckRecord rec;
  rec.id = id;
  rec.ref = ref;
  rec.status = "pass";
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(rec);
  } catch (const std::exception& e) {
    rec.status = "error";
    rec.detail = e.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rec;
}

void require(CheckRecord& rec, bool ok, double gap, const std::string& detail) {
  ++rec.cases;
  if (gap > rec.worst_gap) rec.worst_gap = gap;
  if (!ok) {
    rec.status = "fail";
    if (rec.detail.empty()) rec.detail = detail;
  }
}

double finite_gap(const XReal& a, const XReal& b) {
  if (a == b) return 0.0;
  if (a.is_finite() && b.is_finite()) return std::abs(a.value() - b.value());
  return kInf;
}

Vec random_dense(Rng& rng, int d, double scale = 1.5) {
  Vec x(d);
  for (int i = 0; i < d; ++i) x[i] = scale * rng.normal();
  return x;
}

// Exact zeros off a random support; nonzero magnitudes in [lo, hi].
Vec random_sparse(Rng& rng, int d, int support, double lo = 0.1, double hi = 3.0) {
  Vec x(d, 0.0);
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  for (int j = 0; j < support; ++j)
    std::swap(idx[j], idx[j + static_cast<int>(rng.below(d - j))]);
  for (int j = 0; j < support; ++j) {
    const double mag = rng.uniform(lo, hi);
    x[idx[j]] = rng.uniform() < 0.5 ? mag : -mag;
  }
  return x;
}

Vec random_unit_sparse(Rng& rng, int d, int support) {
  Vec x = random_sparse(rng, d, support);
  while (is_zero(x)) x = random_sparse(rng, d, support);
  return normalization(x);
}

// Random vector with all nonzero magnitudes pairwise separated.
Vec random_separated(Rng& rng, int d, int support, double rel_gap) {
  for (;;) {
    Vec x = random_sparse(rng, d, support);
    if (support > 0 && is_zero(x)) continue;
    if (!has_magnitude_ties(x, rel_gap)) return x;
  }
}

SampledFunction random_function(Rng& rng, int d, int max_points,
                                bool allow_inf) {
  const int count = 2 + static_cast<int>(rng.below(max_points - 1));
  std::vector<Vec> pts = sample_ball(d, count, rng.next_u64(), 2.0);
  std::vector<XReal> vals;
  vals.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double r = rng.uniform();
    if (allow_inf && r < 0.08)
      vals.push_back(XReal::pos_inf());
    else if (allow_inf && r < 0.10)
      vals.push_back(XReal::neg_inf());
    else
      vals.push_back(XReal(2.0 * rng.normal()));
  }
  return SampledFunction(std::move(pts), std::move(vals));
}

std::string iso_utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::vector<CheckRecord> check_moreau_laws() {
  std::vector<CheckRecord> out;
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = oracles::moreau_law_table();
  const auto t1 = std::chrono::steady_clock::now();
  const double per_law_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count() /
      static_cast<double>(table.size());
  for (const auto& law : table) {
    CheckRecord rec;
    rec.id = "moreau." + law.law;
    std::replace(rec.id.begin(), rec.id.end(), ' ', '_');
    rec.ref = "extended-real addition law: " + law.law;
    rec.cases = law.cases;
    rec.status = law.violations == 0 ? "pass" : "fail";
    rec.worst_gap = static_cast<double>(law.violations);
    rec.runtime_ms = per_law_ms;
    rec.detail = law.violations == 0 ? "" : "first violation at " + law.first_violation;
    out.push_back(std::move(rec));
  }
  return out;
}

CheckRecord check_topk_oracle(const std::vector<int>& dims, int vectors_per_dim,
                              std::uint64_t seed) {
  return run_check(
      "norms.topk_oracle",
      "top-k norm equals the exhaustive max of ||x_K|| over |K| = k subsets",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 10)) {
          for (int t = 0; t < vectors_per_dim; ++t) {
            Vec x;
            const double mode = rng.uniform();
            if (mode < 0.4) {
              x = random_dense(rng, d);
            } else if (mode < 0.8) {
              x = random_sparse(rng, d, static_cast<int>(rng.below(d + 1)));
            } else {
              // Duplicate magnitudes on purpose: tie-breaks must agree too.
              x = random_dense(rng, d);
              if (d >= 2) {
                const int a = static_cast<int>(rng.below(d));
                const int b = static_cast<int>(rng.below(d));
                x[a] = rng.uniform() < 0.5 ? x[b] : -x[b];
              }
            }
            for (int k = 0; k <= d; ++k) {
              const double impl = topk_norm(x, k);
              const auto oracle = oracles::topk_norm_bruteforce(x, k);
              require(rec, impl == oracle.value, std::abs(impl - oracle.value),
                      "topk mismatch at d=" + std::to_string(d) +
                          " k=" + std::to_string(k) + " x=" + vec_str(x));
            }
          }
        }
      });
}

CheckRecord check_norm_chain(const std::vector<int>& dims, int count,
                             std::uint64_t seed) {
  return run_check(
      "norms.topk_chain",
      "top-k norms increase in k from the sup norm to the Euclidean norm",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 64)) {
          for (int t = 0; t < count; ++t) {
            const Vec x = rng.uniform() < 0.5
                              ? random_dense(rng, d)
                              : random_sparse(rng, d, static_cast<int>(rng.below(d + 1)));
            double prev = 0.0;
            for (int k = 1; k <= d; ++k) {
              const double cur = topk_norm(x, k);
              require(rec, cur >= prev, std::max(0.0, prev - cur),
                      "chain not monotone at k=" + std::to_string(k));
              prev = cur;
            }
            const double full = topk_norm(x, d);
            const double nx = euclidean_norm(x);
            require(rec, std::abs(full - nx) <= 1e-15 * (1.0 + nx),
                    std::abs(full - nx), "||x||_(d) != ||x||");
            double sup = 0.0;
            for (double v : x) sup = std::max(sup, std::abs(v));
            const double t1 = topk_norm(x, 1);
            require(rec, std::abs(t1 - sup) <= 1e-15 * (1.0 + sup),
                    std::abs(t1 - sup), "||x||_(1) != sup |x_i|");
          }
        }
      });
}

CheckRecord check_norm_axioms(const std::vector<int>& dims, int count,
                              std::uint64_t seed) {
  return run_check(
      "norms.axioms",
      "absolute homogeneity, triangle inequality and definiteness of the "
      "top-k and k-support norms",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 64)) {
          for (int t = 0; t < count; ++t) {
            const Vec x = random_dense(rng, d);
            const Vec y = random_dense(rng, d);
            const double lam = 4.0 * rng.normal();
            for (int k = 1; k <= d; ++k) {
              for (int which = 0; which < 2; ++which) {
                const auto nrm = [&](const Vec& v) {
                  return which == 0 ? topk_norm(v, k) : ksupport_norm(v, k);
                };
                const double scale = 1.0 + nrm(x) + nrm(y);
                const double hom = std::abs(nrm(scaled(x, lam)) - std::abs(lam) * nrm(x));
                require(rec, hom <= 1e-12 * (1.0 + std::abs(lam)) * scale, hom,
                        "homogeneity failed");
                const double tri = nrm(vec_add(x, y)) - nrm(x) - nrm(y);
                require(rec, tri <= 1e-12 * scale, std::max(0.0, tri),
                        "triangle inequality failed");
                if (!is_zero(x))
                  require(rec, nrm(x) > 0.0, 0.0, "definiteness failed");
              }
            }
          }
        }
      });
}

CheckRecord check_ksupport_oracle(const std::vector<int>& dims,
                                  int vectors_per_pair, std::uint64_t seed) {
  return run_check(
      "norms.ksupport_oracle",
      "k-support norm equals the brute-force maximum of <x,y> over the "
      "top-k unit ball",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 2, 6)) {
          for (int k = 1; k <= d; ++k) {
            for (int t = 0; t < vectors_per_pair; ++t) {
              const Vec x = rng.uniform() < 0.7
                                ? random_dense(rng, d)
                                : random_sparse(rng, d, 1 + static_cast<int>(rng.below(d)));
              const double closed = ksupport_norm(x, k);
              const auto oracle =
                  oracles::dual_norm_bruteforce(x, k, 8, rng.next_u64());
              const double scale = std::max({1e-30, closed, oracle.value});
              const double rel = std::abs(closed - oracle.value) / scale;
              const double tol = (k == 1 || k == d) ? 1e-13 : 1e-6;
              require(rec, rel <= tol, rel,
                      "ksupport vs oracle at d=" + std::to_string(d) +
                          " k=" + std::to_string(k) + " x=" + vec_str(x));
              // Atom route is a certified lower bound for the closed form.
              require(rec, oracle.atom_lower_bound <= closed + 1e-12 * scale,
                      std::max(0.0, oracle.atom_lower_bound - closed),
                      "atom lower bound exceeded the closed form");
            }
          }
        }
      });
}

CheckRecord check_duality_pairing(const std::vector<int>& dims, int count,
                                  std::uint64_t seed) {
  return run_check(
      "norms.duality_pairing",
      "<x,y> <= ||x||^sp_k ||y||_(k), with equality attained by the oracle "
      "witness",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 2, 6)) {
          for (int t = 0; t < count; ++t) {
            const Vec x = random_dense(rng, d);
            const Vec y = random_dense(rng, d);
            for (int k = 1; k <= d; ++k) {
              const double bound = ksupport_norm(x, k) * topk_norm(y, k);
              const double excess = dot(x, y) - bound;
              require(rec, excess <= 1e-12 * (1.0 + bound), std::max(0.0, excess),
                      "pairing bound violated");
            }
            const int k = 1 + static_cast<int>(rng.below(d));
            const auto oracle =
                oracles::dual_norm_bruteforce(x, k, 8, rng.next_u64());
            if (oracle.witness_vec) {
              const Vec& w = *oracle.witness_vec;
              const double lhs = dot(x, w);
              const double rhs = ksupport_norm(x, k) * topk_norm(w, k);
              const double gap = std::abs(lhs - rhs) / std::max(1e-30, rhs);
              require(rec, gap <= 1e-6, gap, "oracle witness not tight");
            }
          }
        }
      });
}

CheckRecord check_l0_chain(const std::vector<int>& dims, int count,
                           std::uint64_t seed) {
  return run_check(
      "norms.l0_norm_chain",
      "l0(x) = min{ j : ||x||_(j) = ||x|| }; l0(x) <= k iff ||x||_(k) = ||x||; "
      "norms increase strictly up to l0(x) and are constant after",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 10)) {
          for (int t = 0; t < count; ++t) {
            const int support = static_cast<int>(rng.below(d + 1));
            const Vec x = random_sparse(rng, d, support);
            const int exact = l0(x, 0.0);
            require(rec, exact == support, std::abs(exact - support),
                    "l0 count mismatch");
            const int via_chain = l0_via_norm_chain(x, 1e-9);
            require(rec, via_chain == exact, std::abs(via_chain - exact),
                    "norm-chain l0 disagrees at x=" + vec_str(x));
            for (int k = 0; k <= d; ++k) {
              const bool lhs = exact <= k;
              const bool rhs = level_set_contains(x, k, 1e-9);
              require(rec, lhs == rhs, lhs == rhs ? 0.0 : 1.0,
                      "level-set equivalence failed at k=" + std::to_string(k));
            }
            double prev = 0.0;
            for (int j = 1; j <= d; ++j) {
              const double cur = topk_norm(x, j);
              if (j <= exact)
                require(rec, cur > prev, std::max(0.0, prev - cur),
                        "chain not strictly increasing below l0");
              else
                require(rec, cur == topk_norm(x, exact),
                        std::abs(cur - topk_norm(x, exact)),
                        "chain not constant above l0");
              prev = cur;
            }
          }
        }
      });
}

CheckRecord check_l0_ray_invariance(const std::vector<int>& dims, int count,
                                    std::uint64_t seed) {
  return run_check(
      "norms.l0_ray_invariance",
      "l0(lambda x) = l0(x) for lambda != 0 and l0(n(x)) = l0(x)",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 64)) {
          for (int t = 0; t < count; ++t) {
            const Vec x = random_sparse(rng, d, static_cast<int>(rng.below(d + 1)));
            const double lam = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 7.0);
            require(rec, l0(scaled(x, lam)) == l0(x), 0.0, "scaling changed l0");
            require(rec, l0(normalization(x)) == l0(x), 0.0,
                    "normalization changed l0");
          }
        }
      });
}

CheckRecord check_orthogonal_decomposition(const std::vector<int>& dims,
                                           int count, std::uint64_t seed) {
  return run_check(
      "norms.orthogonal_decomposition",
      "x = x_K + x_{-K}, <x_K, x_{-K}> = 0 and the Pythagorean identity",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 20)) {
          for (int t = 0; t < count; ++t) {
            const Vec x = random_dense(rng, d);
            const SupportSet K(d, rng.next_u64() &
                                      SupportSet::full(d).bits());
            const Vec xk = project(x, K);
            const Vec xc = project(x, K.complement());
            require(rec, vec_add(xk, xc) == x, 0.0, "x != x_K + x_{-K}");
            require(rec, dot(xk, xc) == 0.0, std::abs(dot(xk, xc)),
                    "projections not orthogonal");
            const double gap =
                std::abs(norm_sq(x) - (norm_sq(xk) + norm_sq(xc)));
            require(rec, gap <= 1e-12 * (1.0 + norm_sq(x)), gap,
                    "Pythagorean identity failed");
          }
        }
      });
}

CheckRecord check_sphere_levelset(const std::vector<int>& dims, int count,
                                  std::uint64_t seed) {
  return run_check(
      "norms.sphere_levelset",
      "a unit vector lies in the k-th level set iff all but at most k "
      "coordinates vanish (sphere = union of sparse subspheres)",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 6)) {
          for (const Vec& v : support_frame(d, d)) {
            const int m = l0(v);
            for (int k = 0; k <= d; ++k)
              require(rec, level_set_contains(v, k, 1e-9) == (m <= k), 0.0,
                      "frame membership mismatch");
          }
          for (int t = 0; t < count; ++t) {
            const int s = 1 + static_cast<int>(rng.below(d));
            const Vec x = random_unit_sparse(rng, d, s);
            for (int k = 0; k <= d; ++k)
              require(rec, level_set_contains(x, k, 1e-9) == (s <= k), 0.0,
                      "unit-vector membership mismatch at k=" + std::to_string(k));
          }
        }
      });
}

CheckRecord check_hull_membership(const std::vector<int>& dims, int count,
                                  std::uint64_t seed) {
  return run_check(
      "norms.hull_membership",
      "on the sphere, membership in the k-support unit ball coincides with "
      "the l0 level set; sampled hull points stay inside the ball",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 2, 6)) {
          for (int t = 0; t < count; ++t) {
            const int s = 1 + static_cast<int>(rng.below(d));
            const Vec x = random_unit_sparse(rng, d, s);
            const int k = 1 + static_cast<int>(rng.below(d));
            const auto h = oracles::hull_membership_sampled(x, k, 40, rng.next_u64());
            require(rec, h.in_support_ball == (s <= k), 0.0,
                    "ball membership mismatch");
            require(rec, h.level_set_agrees, 0.0, "level-set cross-check failed");
            require(rec, h.sampled_hull_inside, 0.0,
                    "sampled hull point left the ball");
          }
        }
      });
}

CheckRecord check_engine_one_sided(const std::vector<int>& dims, int functions,
                                   std::uint64_t seed) {
  return run_check(
      "engine.one_sided_linear_conjugate",
      "conjugate under c_theta equals the Fenchel conjugate of the infimal "
      "postcomposition theta |> f, exactly on samples",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 4)) {
          for (int t = 0; t < functions; ++t) {
            const SampledFunction f = random_function(rng, d, 64, true);
            const std::vector<Vec> duals = sample_ball(d, 24, rng.next_u64(), 2.5);
            std::vector<MappingTheta> thetas = {
                MappingTheta::identity(d), MappingTheta::normalization(d),
                MappingTheta::coordinate_zeroing(
                    SupportSet(d, rng.next_u64() & SupportSet::full(d).bits()))};
            for (const auto& theta : thetas) {
              const Coupling c = make_one_sided_linear(theta, d);
              const SampledFunction lhs = conjugate(f, c, duals);
              const SampledFunction ipc = infimal_postcomposition(f, theta);
              const SampledFunction rhs = conjugate(ipc, fenchel_coupling(d), duals);
              for (std::size_t i = 0; i < lhs.size(); ++i)
                require(rec, lhs.value(i) == rhs.value(i),
                        finite_gap(lhs.value(i), rhs.value(i)),
                        "one-sided identity differs under theta=" + theta.name());
            }
          }
        }
      });
}

CheckRecord check_engine_reverse(const std::vector<int>& dims, int functions,
                                 std::uint64_t seed) {
  return run_check(
      "engine.reverse_conjugate_composition",
      "reverse conjugate under c_theta equals the Fenchel reverse conjugate "
      "composed with theta",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 4)) {
          for (int t = 0; t < functions; ++t) {
            const SampledFunction g = random_function(rng, d, 32, true);
            const std::vector<Vec> wpts = sample_ball(d, 16, rng.next_u64(), 2.0);
            std::vector<MappingTheta> thetas = {
                MappingTheta::identity(d), MappingTheta::normalization(d),
                MappingTheta::zero(d)};
            for (const auto& theta : thetas) {
              const Coupling c = make_one_sided_linear(theta, d);
              const SampledFunction lhs = reverse_conjugate(g, c, wpts);
              std::vector<Vec> mapped;
              for (const Vec& w : wpts) mapped.push_back(theta(w));
              const SampledFunction fen = reverse_conjugate(
                  g, fenchel_coupling(d), dedupe_points(mapped));
              for (std::size_t i = 0; i < wpts.size(); ++i) {
                const auto at = fen.find(theta(wpts[i]));
                require(rec, at.has_value(), at ? 0.0 : kInf,
                        "missing composed point");
                if (!at) continue;
                require(rec, lhs.value(i) == fen.value(*at),
                        finite_gap(lhs.value(i), fen.value(*at)),
                        "reverse identity differs under theta=" + theta.name());
              }
            }
          }
        }
      });
}

CheckRecord check_engine_characteristic(const std::vector<int>& dims,
                                        int functions, std::uint64_t seed) {
  return run_check(
      "engine.characteristic_support_function",
      "conjugate of an indicator under the negated coupling is the sampled "
      "support function of -theta(W)",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 4)) {
          for (int t = 0; t < functions; ++t) {
            const std::vector<Vec> W = sample_ball(d, 20, rng.next_u64(), 2.0);
            const std::vector<Vec> duals = sample_ball(d, 16, rng.next_u64(), 2.0);
            const SampledFunction indicator = SampledFunction::tabulate(
                W, [](const Vec&) { return XReal(0.0); });
            std::vector<MappingTheta> thetas = {MappingTheta::identity(d),
                                                MappingTheta::normalization(d)};
            for (const auto& theta : thetas) {
              const Coupling c = make_one_sided_linear(theta, d);
              const SampledFunction lhs = conjugate(indicator, c.negate(), duals);
              const MappingTheta nt = theta.negated();
              for (std::size_t yi = 0; yi < duals.size(); ++yi) {
                double best = -kInf;
                for (const Vec& w : W) {
                  const Vec im = nt(w);
                  double s = 0.0;
                  for (int j = 0; j < d; ++j) s = s + im[j] * duals[yi][j];
                  if (s > best) best = s;
                }
                require(rec, lhs.value(yi) == XReal(best),
                        finite_gap(lhs.value(yi), XReal(best)),
                        "support-function identity differs");
              }
            }
          }
        }
      });
}

CheckRecord check_engine_ray_constancy(const std::vector<int>& dims, int count,
                                       std::uint64_t seed) {
  return run_check(
      "engine.capra_ray_constancy",
      "biconjugates under the ray-constant coupling take equal values at "
      "positive multiples of a sample point",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 4)) {
          for (int t = 0; t < count; ++t) {
            Vec x = random_sparse(rng, d, 1 + static_cast<int>(rng.below(d)));
            while (is_zero(x)) x = random_sparse(rng, d, 1);
            std::vector<Vec> pts = {Vec(d, 0.0), x, scaled(x, 2.0),
                                    scaled(x, 4.0), scaled(x, 7.3)};
            for (const Vec& p : sample_ball(d, 12, rng.next_u64(), 2.0))
              pts.push_back(p);
            pts = dedupe_points(std::move(pts));
            const SampledFunction f = SampledFunction::tabulate(
                pts, [](const Vec& p) { return XReal(static_cast<double>(l0(p))); });
            std::vector<Vec> duals = support_frame(d, d);
            for (const Vec& p : sample_ball(d, 16, rng.next_u64(), 3.0))
              duals.push_back(p);
            duals = dedupe_points(std::move(duals));
            const std::vector<Vec> primal = {x, scaled(x, 2.0), scaled(x, 4.0),
                                             scaled(x, 7.3)};
            const SampledFunction bc =
                biconjugate(f, capra_coupling(d), duals, primal);
            // Powers of two scale the normalization exactly.
            require(rec, bc.value(1) == bc.value(0),
                    finite_gap(bc.value(1), bc.value(0)),
                    "ray constancy failed at lambda=2");
            require(rec, bc.value(2) == bc.value(0),
                    finite_gap(bc.value(2), bc.value(0)),
                    "ray constancy failed at lambda=4");
            const double gap = finite_gap(bc.value(3), bc.value(0));
            require(rec, gap <= 1e-9, gap, "ray constancy failed at lambda=7.3");
          }
        }
      });
}

CheckRecord check_engine_order_reversal(const std::vector<int>& dims, int count,
                                        std::uint64_t seed) {
  return run_check(
      "engine.order_reversal",
      "f <= g pointwise implies conjugate(f) >= conjugate(g) pointwise",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 4)) {
          for (int t = 0; t < count; ++t) {
            const SampledFunction f = random_function(rng, d, 32, true);
            std::vector<XReal> gvals;
            for (std::size_t i = 0; i < f.size(); ++i)
              gvals.push_back(upp_add(f.value(i), XReal(std::abs(rng.normal()))));
            const SampledFunction g(f.points(), gvals);
            const std::vector<Vec> duals = sample_ball(d, 16, rng.next_u64(), 2.0);
            for (const Coupling& c :
                 {fenchel_coupling(d), capra_coupling(d)}) {
              const SampledFunction fc = conjugate(f, c, duals);
              const SampledFunction gc = conjugate(g, c, duals);
              for (std::size_t i = 0; i < duals.size(); ++i) {
                const bool ok = fc.value(i) >= gc.value(i);
                const double viol =
                    ok ? 0.0 : finite_gap(fc.value(i), gc.value(i));
                require(rec, ok, viol, "order reversal failed");
              }
            }
          }
        }
      });
}

CheckRecord check_engine_dual_bound(const std::vector<int>& dims, int count,
                                    std::uint64_t seed) {
  return run_check(
      "engine.dual_bound",
      "weak duality: the dual value never exceeds the primal value, and an "
      "indicator constraint collapses the primal side to a restricted inf",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 4)) {
          for (int t = 0; t < count; ++t) {
            const SampledFunction f = random_function(rng, d, 24, false);
            std::vector<XReal> gvals;
            std::vector<bool> member(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) {
              member[i] = rng.uniform() < 0.5;
              gvals.push_back(member[i] ? XReal(0.0) : XReal::pos_inf());
            }
            const SampledFunction g(f.points(), gvals);
            const std::vector<Vec> duals = sample_ball(d, 16, rng.next_u64(), 2.0);
            const Coupling c = rng.uniform() < 0.5 ? fenchel_coupling(d)
                                                   : capra_coupling(d);
            const DualBound db = dual_bound(f, g, c, duals);
            XReal restricted = XReal::pos_inf();
            for (std::size_t i = 0; i < f.size(); ++i)
              if (member[i] && f.value(i) < restricted) restricted = f.value(i);
            require(rec, db.upper == restricted,
                    finite_gap(db.upper, restricted),
                    "constrained upper value mismatch");
            const double excess =
                (db.lower.is_finite() && db.upper.is_finite())
                    ? std::max(0.0, db.lower.value() - db.upper.value())
                    : (db.lower <= db.upper ? 0.0 : kInf);
            require(rec, excess <= 1e-12, excess, "weak duality violated");
          }
        }
      });
}

CheckRecord check_biconjugate_ceiling(const std::vector<int>& dims, int count,
                                      std::uint64_t seed) {
  return run_check(
      "engine.biconjugate_ceiling",
      "the biconjugate never exceeds the function (checked on every call; "
      "probed here across couplings including generic ones)",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 4)) {
          for (int t = 0; t < count; ++t) {
            const SampledFunction f = random_function(rng, d, 32, true);
            const std::vector<Vec> duals = sample_ball(d, 20, rng.next_u64(), 2.0);
            const Coupling capped = Coupling::custom(
                d, d,
                [](const Vec& x, const Vec& y) {
                  return XReal(std::min(1.0, dot(x, y)));
                },
                "capped_dot");
            const Coupling halfspace = Coupling::custom(
                d, d,
                [](const Vec& x, const Vec& y) {
                  const double s = dot(x, y);
                  return s >= 0.0 ? XReal(s) : XReal::neg_inf();
                },
                "halfspace_dot");
            for (const Coupling& c : {fenchel_coupling(d), capra_coupling(d),
                                      capped, halfspace}) {
              // biconjugate() itself throws if the ceiling breaks.
              const SampledFunction bc = biconjugate(f, c, duals, f.points());
              for (std::size_t i = 0; i < bc.size(); ++i) {
                const XReal fx = f.value(i);
                const XReal bx = bc.value(i);
                const double gap = (bx.is_finite() && fx.is_finite())
                                       ? std::max(0.0, bx.value() - fx.value())
                                       : 0.0;
                require(rec, bx <= fx || gap <= 1e-12, gap, "ceiling exceeded");
              }
            }
          }
        }
      });
}

CheckRecord check_levelset_conjugate_grid(const std::vector<int>& dims,
                                          std::uint64_t seed) {
  return run_check(
      "theorem.levelset_conjugate",
      "conjugate of the l0 level-set indicator under the ray-constant "
      "coupling (and its negation) equals the top-k norm",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 3)) {
          for (int k = 0; k <= d; ++k) {
            std::vector<Vec> pts = {Vec(d, 0.0)};
            if (k >= 1)
              for (Vec& v : support_frame(d, k)) pts.push_back(std::move(v));
            for (int t = 0; t < 10; ++t) {
              Vec p = random_sparse(rng, d, k == 0 ? 0 : 1 + static_cast<int>(rng.below(k)));
              pts.push_back(scaled(p, -1.0));
              pts.push_back(std::move(p));
            }
            pts = dedupe_points(std::move(pts));
            const SampledFunction indicator = SampledFunction::tabulate(
                pts, [](const Vec&) { return XReal(0.0); });

            std::vector<Vec> probes = support_frame(d, 1);  // +-e_i
            {
              Vec eq(d, 1.5);
              probes.push_back(eq);
              for (int i = 0; i < d; ++i) eq[i] = (i % 2 ? -1.5 : 1.5);
              probes.push_back(eq);
            }
            probes = dedupe_points(std::move(probes));
            std::vector<Vec> duals = probes;
            for (Vec& v : sample_ball(d, 20, rng.next_u64(), 2.0))
              duals.push_back(std::move(v));
            duals = dedupe_points(std::move(duals));

            const Coupling cap = capra_coupling(d);
            const SampledFunction grid = conjugate(indicator, cap, duals);
            const SampledFunction grid_neg =
                conjugate(indicator, cap.negate(), duals);
            for (std::size_t i = 0; i < duals.size(); ++i) {
              const double closed = conj_levelset_indicator(duals[i], k);
              const double g = grid.value(i).value();
              require(rec, g <= closed + 1e-12 * (1.0 + closed),
                      std::max(0.0, g - closed),
                      "grid conjugate exceeded the closed form");
              require(rec, grid_neg.value(i) == grid.value(i),
                      finite_gap(grid_neg.value(i), grid.value(i)),
                      "negated coupling gave a different conjugate");
              const bool probe = i < probes.size();
              if (probe) {
                const double gap = std::abs(closed - g);
                require(rec, gap <= 1e-13 * (1.0 + closed), gap,
                        "probe point gap not at machine precision: k=" +
                            std::to_string(k) + " y=" + vec_str(duals[i]));
              }
            }
          }
        }
      });
}

CheckRecord check_levelset_biconjugate_grid(const std::vector<int>& dims,
                                            std::uint64_t seed) {
  return run_check(
      "theorem.levelset_biconjugate",
      "biconjugate of the l0 level-set indicator is the indicator: zero on "
      "the level set, growing without bound outside",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 2, 4)) {
          for (int k = 1; k < d; ++k) {
            for (int t = 0; t < 6; ++t) {
              const Vec inside = random_sparse(rng, d, 1 + static_cast<int>(rng.below(k)));
              const Vec outside =
                  random_sparse(rng, d, k + 1 + static_cast<int>(rng.below(d - k)));
              if (is_zero(inside) || is_zero(outside)) continue;
              std::vector<Vec> pts = {Vec(d, 0.0), inside, outside};
              for (Vec& v : support_frame(d, k)) pts.push_back(std::move(v));
              pts = dedupe_points(std::move(pts));
              const SampledFunction f = SampledFunction::tabulate(
                  pts, [k](const Vec& p) {
                    return l0(p) <= k ? XReal(0.0) : XReal::pos_inf();
                  });
              std::vector<Vec> duals;
              for (Vec& v : ray_ladder(inside, 1.0, 4.0, 10))
                duals.push_back(std::move(v));
              for (Vec& v : ray_ladder(outside, 1.0, 4.0, 10))
                duals.push_back(std::move(v));
              for (Vec& v : support_frame(d, d)) duals.push_back(std::move(v));
              duals = dedupe_points(std::move(duals));

              const SampledFunction bc = biconjugate(
                  f, capra_coupling(d), duals, {inside, outside});
              const double vin = bc.value(0).value();
              require(rec, std::abs(vin) <= 1e-9, std::abs(vin),
                      "biconjugate not zero inside the level set");
              const double vout = bc.value(1).value();
              require(rec, vout >= 10.0, std::max(0.0, 10.0 - vout),
                      "biconjugate did not grow outside the level set");
            }
          }
        }
      });
}

CheckRecord check_conj_l0_grid(const std::vector<int>& dims, int count,
                               std::uint64_t seed) {
  return run_check(
      "theorem.l0_conjugate_closed_form",
      "closed-form l0 conjugate max_l(||y||_(l) - l) equals the grid "
      "conjugate once the analytic maximizers are sampled",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 2, 4)) {
          for (int t = 0; t < count; ++t) {
            const Vec y = rng.uniform() < 0.7
                              ? random_dense(rng, d, 2.0)
                              : random_sparse(rng, d, static_cast<int>(rng.below(d + 1)));
            std::vector<Vec> pts = l0_conjugate_maximizers(y);
            for (Vec& v : sample_ball(d, 8, rng.next_u64(), 1.0))
              pts.push_back(std::move(v));
            pts = dedupe_points(std::move(pts));
            const SampledFunction f = SampledFunction::tabulate(
                pts, [](const Vec& p) { return XReal(static_cast<double>(l0(p))); });
            const SampledFunction grid = conjugate(f, capra_coupling(d), {y});
            const double closed = conj_l0(y);
            const double gap = std::abs(closed - grid.value(0).value());
            require(rec, gap <= 1e-10, gap,
                    "closed form vs grid at y=" + vec_str(y));
          }
        }
      });
}

CheckRecord check_biconj_l0(const std::vector<int>& dims, int count,
                            std::uint64_t seed, const SolverParams& params) {
  return run_check(
      "theorem.l0_biconjugate",
      "the ray-plus-restart biconjugate of l0 returns l0 itself, squeezed "
      "between every ray probe and the l0 ceiling",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 2, 4)) {
          for (int t = 0; t < count; ++t) {
            const int support = 1 + static_cast<int>(rng.below(d));
            const Vec x = random_separated(rng, d, support, 1e-6);
            SolverParams p = params;
            p.seed = rng.next_u64();
            const ConjugateReport rep = biconj_l0_report(x, p);
            const double target = static_cast<double>(l0(x));
            require(rec, std::abs(rep.search_value - target) <= p.tol, rep.gap,
                    "biconjugate missed l0 at x=" + vec_str(x));
            require(rec, rep.search_value <= target + 1e-9,
                    std::max(0.0, rep.search_value - target),
                    "biconjugate exceeded l0");
            for (double lam = 1.0; lam <= p.lambda_max; lam *= 2.0) {
              const double phi = phi_ray(x, lam);
              require(rec, phi <= rep.search_value + 1e-12,
                      std::max(0.0, phi - rep.search_value),
                      "ray probe exceeded the searched value");
            }
            const double phi_top = phi_ray(x, p.lambda_max);
            require(rec, phi_top <= rep.search_value + 1e-12,
                    std::max(0.0, phi_top - rep.search_value),
                    "top ray probe exceeded the searched value");
          }
        }
      });
}

CheckRecord check_sphere_corollary(const std::vector<int>& dims, int count,
                                   std::uint64_t seed) {
  return run_check(
      "theorem.sphere_corollary",
      "on the unit sphere, l0 equals the Fenchel conjugate of "
      "max_l(||.||_(l) - l)",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 2, 4)) {
          for (int t = 0; t < count; ++t) {
            const int s = 1 + t % d;  // every support cardinality in turn
            Vec x = random_unit_sparse(rng, d, s);
            while (has_magnitude_ties(x, 1e-6))
              x = random_unit_sparse(rng, d, s);
            SolverParams p;
            p.seed = rng.next_u64();
            const double v = l0_on_sphere_via_fenchel(x, p);
            require(rec, std::abs(v - s) <= 1e-4, std::abs(v - s),
                    "sphere corollary missed l0 at x=" + vec_str(x));
          }
        }
      });
}

CheckRecord check_levelset_closure(const std::vector<int>& dims,
                                   std::uint64_t seed) {
  return run_check(
      "theorem.levelset_closure",
      "every unit vector with l0 <= k is the limit of unit vectors with "
      "l0 = k (explicit epsilon ladder)",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 2, 4)) {
          for (int l = 1; l < d; ++l) {
            for (int k = l + 1; k <= d; ++k) {
              const Vec x = random_unit_sparse(rng, d, l);
              std::vector<int> zeros;
              for (int i = 0; i < d; ++i)
                if (x[i] == 0.0) zeros.push_back(i);
              double prev_dist = kInf;
              for (double eps = 1e-1; eps >= 1e-8; eps *= 0.1) {
                Vec z = x;
                for (int j = 0; j < k - l; ++j) z[zeros[j]] = eps;
                z = normalization(z);
                require(rec, l0(z) == k, 0.0, "perturbed vector missed l0 = k");
                require(rec, std::abs(euclidean_norm(z) - 1.0) <= 1e-12, 0.0,
                        "perturbed vector left the sphere");
                require(rec, level_set_contains(z, k, 1e-9), 0.0,
                        "perturbed vector left the level set");
                double dist = 0.0;
                for (int i = 0; i < d; ++i) dist += (z[i] - x[i]) * (z[i] - x[i]);
                dist = std::sqrt(dist);
                require(rec, dist < prev_dist, std::max(0.0, dist - prev_dist),
                        "ladder distances not decreasing");
                prev_dist = dist;
              }
              require(rec, prev_dist <= 1e-6, prev_dist,
                      "ladder did not converge to the limit point");
            }
          }
        }
      });
}

CheckRecord check_phi_rewriting(const std::vector<int>& dims, int count,
                                std::uint64_t seed) {
  return run_check(
      "theorem.phi_ray_rewriting",
      "phi(lambda) equals min{ lambda ||x||_(l), lambda gaps + j, l } and "
      "reaches l0(x) at large lambda",
      [&](CheckRecord& rec) {
        Rng rng(seed);
        for (int d : clamp_dims(dims, 1, 6)) {
          for (int t = 0; t < count; ++t) {
            const int support = 1 + static_cast<int>(rng.below(d));
            const Vec x = random_separated(rng, d, support, 1e-6);
            const int l = l0(x);
            for (double lam : {0.5, 1.0, 5.0, 25.0, 1e3, 1e5}) {
              const double direct = phi_ray(x, lam);
              double rewritten = lam * topk_norm(x, l);
              for (int j = 1; j < l; ++j)
                rewritten = std::min(
                    rewritten, lam * (topk_norm(x, l) - topk_norm(x, j)) + j);
              rewritten = std::min(rewritten, static_cast<double>(l));
              const double gap = std::abs(direct - rewritten);
              require(rec, gap <= 1e-9 * (1.0 + std::abs(direct)), gap,
                      "phi rewriting mismatch");
            }
            require(rec, phi_ray(x, 1e6) == static_cast<double>(l),
                    std::abs(phi_ray(x, 1e6) - l), "phi limit not reached");
          }
        }
      });
}

namespace {

using JobResult = std::vector<CheckRecord>;

std::vector<std::function<JobResult()>> suite_jobs(const std::string& suite,
                                                   const SuiteOptions& opts) {
  const auto& dims = opts.dims;
  const auto seed = [&opts](const char* id) { return derive_seed(opts.seed, id); };

  std::vector<std::function<JobResult()>> jobs;
  const auto single = [&jobs](std::function<CheckRecord()> fn) {
    jobs.push_back([fn = std::move(fn)]() { return JobResult{fn()}; });
  };

  const bool all = suite == "all";
  if (all || suite == "moreau") {
    jobs.push_back([] { return check_moreau_laws(); });
  }
  if (all || suite == "norms") {
    single([=] { return check_topk_oracle(dims, 300, seed("norms.topk_oracle")); });
    single([=] { return check_norm_chain(dims, 200, seed("norms.topk_chain")); });
    single([=] { return check_norm_axioms(dims, 60, seed("norms.axioms")); });
    single([=] { return check_ksupport_oracle(dims, 60, seed("norms.ksupport_oracle")); });
    single([=] { return check_duality_pairing(dims, 100, seed("norms.duality_pairing")); });
    single([=] { return check_l0_chain(dims, 300, seed("norms.l0_norm_chain")); });
    single([=] { return check_l0_ray_invariance(dims, 200, seed("norms.l0_ray_invariance")); });
    single([=] { return check_orthogonal_decomposition(dims, 200, seed("norms.orthogonal_decomposition")); });
    single([=] { return check_sphere_levelset(dims, 60, seed("norms.sphere_levelset")); });
    single([=] { return check_hull_membership(dims, 40, seed("norms.hull_membership")); });
  }
  if (all || suite == "engine") {
    single([=] { return check_engine_one_sided(dims, 30, seed("engine.one_sided")); });
    single([=] { return check_engine_reverse(dims, 20, seed("engine.reverse")); });
    single([=] { return check_engine_characteristic(dims, 20, seed("engine.characteristic")); });
    single([=] { return check_engine_ray_constancy(dims, 15, seed("engine.ray_constancy")); });
    single([=] { return check_engine_order_reversal(dims, 20, seed("engine.order_reversal")); });
    single([=] { return check_engine_dual_bound(dims, 30, seed("engine.dual_bound")); });
    single([=] { return check_biconjugate_ceiling(dims, 20, seed("engine.ceiling")); });
  }
  if (all || suite == "theorem") {
    single([=] { return check_levelset_conjugate_grid(dims, seed("theorem.levelset_conjugate")); });
    single([=] { return check_levelset_biconjugate_grid(dims, seed("theorem.levelset_biconjugate")); });
    single([=] { return check_conj_l0_grid(dims, 40, seed("theorem.conj_l0")); });
    single([=] { return check_biconj_l0(dims, 40, seed("theorem.biconj_l0"), SolverParams{}); });
    single([=] { return check_sphere_corollary(dims, 30, seed("theorem.sphere")); });
    single([=] { return check_levelset_closure(dims, seed("theorem.closure")); });
    single([=] { return check_phi_rewriting(dims, 60, seed("theorem.phi")); });
  }
  return jobs;
}

}  // namespace

bool VerificationReport::all_passed() const {
  for (const auto& c : checks)
    if (c.status != "pass") return false;
  return true;
}

int VerificationReport::passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.status == "pass";
  return n;
}

int VerificationReport::failed() const {
  return static_cast<int>(checks.size()) - passed();
}

VerificationReport run_suite(const std::string& suite, const SuiteOptions& opts) {
  if (suite != "all" && suite != "moreau" && suite != "norms" &&
      suite != "engine" && suite != "theorem")
    throw std::invalid_argument("unknown suite: " + suite);

  VerificationReport report;
  report.suite = suite;
  report.seed = opts.seed;
  report.dims = opts.dims;
  report.generated_at = iso_utc_now();

  auto jobs = suite_jobs(suite, opts);
  std::vector<std::future<JobResult>> futures;
  futures.reserve(jobs.size());
  for (auto& job : jobs)
    futures.push_back(std::async(std::launch::async | std::launch::deferred,
                                 std::move(job)));
  for (auto& fut : futures)
    for (CheckRecord& rec : fut.get()) report.checks.push_back(std::move(rec));
  return report;
}

nlohmann::ordered_json report_to_json(const VerificationReport& report,
                                      bool with_timing) {
  nlohmann::ordered_json j;
  j["schema"] = report.schema;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["dims"] = report.dims;
  j["generated_at"] = with_timing ? report.generated_at : "";
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["id"] = c.id;
    cj["ref"] = c.ref;
    cj["status"] = c.status;
    cj["cases"] = c.cases;
    cj["worst_gap"] = std::isfinite(c.worst_gap)
                          ? nlohmann::ordered_json(c.worst_gap)
                          : nlohmann::ordered_json("+inf");
    cj["runtime_ms"] = with_timing ? c.runtime_ms : 0.0;
    cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["summary"] = {{"total", report.checks.size()},
                  {"passed", report.passed()},
                  {"failed", report.failed()}};
  return j;
}

}  // namespace capra::verify
