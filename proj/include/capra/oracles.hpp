#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capra/vec.hpp"
#include "capra/xreal.hpp"

namespace capra::oracles {

/// Brute-force reference result: the value, a witness that attains it, and
/// how many candidate evaluations were spent.
struct OracleResult {
  double value = 0.0;
  double atom_lower_bound = 0.0;  // route (a) value where applicable
  std::optional<SupportSet> witness_set;
  std::optional<Vec> witness_vec;
  long long evaluations = 0;
};

/// Exhaustive max of ||x_K|| over all |K| = k subsets, lexicographic order,
/// first winner on ties. Sums squares in index order so the value matches
/// topk_norm bitwise. Guard: d <= 20.
OracleResult topk_norm_bruteforce(const Vec& x, int k);

/// Maximizes <x,y> over { ||y||_(k) <= 1 } without the closed form:
///   (a) atom enumeration: over every |K| = k slice the optimum is ||x_K||,
///       an exact lower bound;
///   (b) feasibility-preserving ascent (rescaling by the enumerated top-k
///       norm) from deterministic sign/support starts plus `budget` seeded
///       random restarts, with a coordinate polish.
/// Returns the max of both; never below route (a). Guard: d <= 6.
OracleResult dual_norm_bruteforce(const Vec& x, int k, int budget = 8,
                                  std::uint64_t seed = 0x853c49e6748fea9bULL);

struct HullMembership {
  bool in_support_ball = false;   // ksupport_norm(x, k) <= 1 + tol
  bool level_set_agrees = false;  // membership matches level_set_contains
  bool sampled_hull_inside = false;  // all sampled atom combos stayed in the ball
  double ksupport_value = 0.0;
  int samples_checked = 0;
};

/// For unit x: membership of x in the k-support unit ball, cross-checked
/// against the sparsity level set; also verifies on random convex
/// combinations of k-sparse unit atoms that the sampled hull stays inside
/// the ball. Guard: d <= 6, ||x|| = 1 within 1e-9.
HullMembership hull_membership_sampled(const Vec& x, int k, int n_samples,
                                       std::uint64_t seed);

struct LawRecord {
  std::string law;
  long long cases = 0;
  long long violations = 0;
  std::string first_violation;
};

/// Evaluates every lower/upper addition identity and inequality over the
/// exhaustive probe set {-inf, -1, 0, 1, +inf} (families drawn from its
/// nonempty subsets). All violation counts must be zero.
std::vector<LawRecord> moreau_law_table();

}  // namespace capra::oracles
