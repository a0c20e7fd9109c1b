#include "capra/capra_l0.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "capra/conjugacy.hpp"
#include "capra/rng.hpp"

namespace capra {

double conj_levelset_indicator(const Vec& y, int k) {
  validate_vector(y);
  return topk_norm(y, k);
}

XReal biconj_levelset_indicator(const Vec& x, int k, double rel_tol) {
  validate_vector(x);
  return level_set_contains(x, k, rel_tol) ? XReal(0.0) : XReal::pos_inf();
}

double conj_l0(const Vec& y) {
  validate_vector(y);
  const int d = static_cast<int>(y.size());
  double best = 0.0;  // the l = 0 term
  for (int l = 1; l <= d; ++l) best = std::max(best, topk_norm(y, l) - l);
  return best;
}

double phi_ray(const Vec& x, double lambda) {
  validate_vector(x);
  if (is_zero(x)) throw std::invalid_argument("phi_ray: x must be nonzero");
  if (!(lambda > 0.0)) throw std::invalid_argument("phi_ray: lambda must be positive");
  const int d = static_cast<int>(x.size());
  double inner = 0.0;
  for (int j = 1; j <= d; ++j)
    inner = std::max(inner, lambda * topk_norm(x, j) - j);
  // The norm term goes through the same top-k evaluation, so at large
  // lambda the difference cancels exactly and the limit l0(x) is hit
  // without rounding residue.
  return lambda * topk_norm(x, d) - inner;
}

bool has_magnitude_ties(const Vec& x, double rel_gap) {
  std::vector<double> m;
  for (double v : x)
    if (v != 0.0) m.push_back(std::abs(v));
  std::sort(m.begin(), m.end(), std::greater<>());
  for (std::size_t i = 1; i < m.size(); ++i)
    if ((m[i - 1] - m[i]) < rel_gap * m[i - 1]) return true;
  return false;
}

std::vector<Vec> l0_conjugate_maximizers(const Vec& y) {
  validate_vector(y);
  const int d = static_cast<int>(y.size());
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&y](int a, int b) {
    const double ma = std::abs(y[a]), mb = std::abs(y[b]);
    return ma != mb ? ma > mb : a < b;
  });
  std::vector<Vec> pts = {Vec(d, 0.0)};
  for (int l = 1; l <= d; ++l) {
    Vec v(d, 0.0);
    for (int j = 0; j < l; ++j) v[order[j]] = y[order[j]];
    const double n = euclidean_norm(v);
    if (n > 0.0)
      for (double& e : v) e /= n;
    else
      continue;
    pts.push_back(std::move(v));
  }
  return dedupe_points(std::move(pts));
}

namespace {

// Coordinate ascent with shrinking steps, capped by the evaluation budget.
double coordinate_ascent(const std::function<double(const Vec&)>& g, Vec y,
                         double step0, long long budget, long long& evals) {
  double cur = g(y);
  ++evals;
  long long used = 1;
  const int d = static_cast<int>(y.size());
  for (double step = step0; step > 1e-9 && used < budget; step *= 0.5) {
    bool improved = true;
    int sweeps = 0;
    while (improved && sweeps++ < 6 && used < budget) {
      improved = false;
      for (int i = 0; i < d; ++i) {
        for (double sgn : {1.0, -1.0}) {
          Vec z = y;
          z[i] += sgn * step;
          const double v = g(z);
          ++evals;
          ++used;
          if (v > cur) {
            cur = v;
            y = std::move(z);
            improved = true;
          }
        }
      }
    }
  }
  return cur;
}

ConjugateReport ray_restart_search(const Vec& x, const SolverParams& p,
                                   const std::function<double(const Vec&)>& g,
                                   const Vec& ray_direction,
                                   double closed_form, const char* tag) {
  ConjugateReport rep;
  rep.input = x;
  rep.tag = tag;
  rep.closed_form = closed_form;
  rep.ill_conditioned = has_magnitude_ties(x);

  double best = -std::numeric_limits<double>::infinity();
  // Ray ladder. phi is evaluated through g itself at y = lambda * x except
  // at the top rung, where the cancellation-free phi_ray form is used.
  for (double lam = 1.0; lam < p.lambda_max; lam *= 2.0) {
    best = std::max(best, g(scaled(ray_direction, lam)));
    ++rep.evaluations;
  }
  best = std::max(best, phi_ray(ray_direction, p.lambda_max));
  ++rep.evaluations;

  const int d = static_cast<int>(x.size());
  for (int r = 0; r < p.restarts; ++r) {
    Rng rng(derive_seed(p.seed, tag + std::to_string(r)));
    Vec y(d);
    for (int i = 0; i < d; ++i) y[i] = rng.normal() * 2.0 * d;
    best = std::max(best,
                    coordinate_ascent(g, std::move(y), 4.0 * d, p.eval_budget,
                                      rep.evaluations));
  }

  rep.search_value = best;
  rep.gap = std::abs(rep.closed_form - rep.search_value);
  return rep;
}

}  // namespace

ConjugateReport biconj_l0_report(const Vec& x, const SolverParams& p) {
  validate_vector(x);
  if (!(p.lambda_max > 0.0))
    throw std::invalid_argument("biconj_l0: lambda_max must be positive");

  if (is_zero(x)) {
    ConjugateReport rep;
    rep.input = x;
    rep.tag = "l0_biconjugate";
    rep.closed_form = 0.0;
    rep.search_value = 0.0;  // optimal dual is y = 0, where conj_l0 vanishes
    rep.evaluations = 1;
    return rep;
  }

  const double nx = euclidean_norm(x);
  const auto g = [&x, nx](const Vec& y) { return dot(x, y) / nx - conj_l0(y); };
  return ray_restart_search(x, p, g, x, static_cast<double>(l0(x)),
                            "l0_biconjugate");
}

double biconj_l0(const Vec& x, const SolverParams& p) {
  return biconj_l0_report(x, p).search_value;
}

ConjugateReport l0_on_sphere_report(const Vec& x, const SolverParams& p) {
  validate_vector(x);
  if (std::abs(euclidean_norm(x) - 1.0) > 1e-9)
    throw std::invalid_argument("l0_on_sphere_via_fenchel: input not on the unit sphere");
  const Vec u = normalization(x);
  const auto g = [&u](const Vec& y) { return dot(u, y) - conj_l0(y); };
  return ray_restart_search(x, p, g, u, static_cast<double>(l0(x)),
                            "l0_on_sphere");
}

double l0_on_sphere_via_fenchel(const Vec& x, const SolverParams& p) {
  return l0_on_sphere_report(x, p).search_value;
}

}  // namespace capra
