#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capra/vec.hpp"
#include "capra/xreal.hpp"

namespace capra {

/// Parameters of the ray-plus-restart search behind the biconjugate
/// evaluations. Defaults follow the library's verification setup.
struct SolverParams {
  double lambda_max = 1e6;  // geometric ray ladder 1, 2, 4, ..., lambda_max
  int restarts = 32;        // seeded random restarts of coordinate ascent
  std::uint64_t seed = 0x5bd1e995u;
  long long eval_budget = 20000;  // per-restart objective evaluation cap
  double tol = 1e-4;              // target tolerance on the integer values
};

/// Record of one closed-form-vs-search evaluation; the gap is always kept.
struct ConjugateReport {
  Vec input;
  std::string tag;
  int k = -1;               // level-set order when applicable
  double closed_form = 0.0; // value predicted by the closed form
  double search_value = 0.0;// value the numeric search found
  double gap = 0.0;         // |closed_form - search_value|
  long long evaluations = 0;
  bool ill_conditioned = false;  // near-ties among entry magnitudes
};

/// Conjugate of the indicator of { l0 <= k } under the ray-constant
/// coupling (same for its negation): the top-k norm of y; 0 when k = 0.
double conj_levelset_indicator(const Vec& y, int k);

/// Biconjugate of the same indicator: 0 on the level set, +inf outside.
XReal biconj_levelset_indicator(const Vec& x, int k, double rel_tol = 1e-9);

/// Conjugate of l0 under the ray-constant coupling:
/// max over l in {0..d} of ( ||y||_(l) - l ). Always finite and >= 0.
double conj_l0(const Vec& y);

/// Value of the ray probe at y = lambda * x:
///   phi(lambda) = lambda ||x|| - max{ 0, max_j ( lambda ||x||_(j) - j ) }.
/// Increases to l0(x) as lambda grows. Requires x != 0, lambda > 0.
double phi_ray(const Vec& x, double lambda);

/// Biconjugate of l0 evaluated numerically: sup over duals of
/// <x,y>/||x|| - conj_l0(y), probed along the ray family y = lambda x plus
/// seeded random restarts with coordinate ascent. The result is at least
/// phi(lambda_max) and never exceeds l0(x) beyond rounding.
ConjugateReport biconj_l0_report(const Vec& x, const SolverParams& p = {});
double biconj_l0(const Vec& x, const SolverParams& p = {});

/// Fenchel conjugate of y -> max_l ( ||y||_(l) - l ) evaluated at a unit
/// vector by the same search; equals l0(x) on the sphere. The input must be
/// unit up to 1e-9 and is renormalized exactly before the search.
ConjugateReport l0_on_sphere_report(const Vec& x, const SolverParams& p = {});
double l0_on_sphere_via_fenchel(const Vec& x, const SolverParams& p = {});

/// The origin plus the normalized top-l slices of y for l = 1..d: primal
/// points attaining every term of the l0 conjugate sup at y.
std::vector<Vec> l0_conjugate_maximizers(const Vec& y);

/// True when two nonzero magnitudes of x are within rel_gap of each other;
/// such inputs make the phi limit slow and are flagged, not failed.
bool has_magnitude_ties(const Vec& x, double rel_gap = 1e-9);

}  // namespace capra
