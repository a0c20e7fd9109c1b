#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace capra {

/// Dense real d-vector; the primal/dual point type everywhere.
using Vec = std::vector<double>;

/// Throws unless d >= 1 and no entry is NaN.
void validate_vector(const Vec& x);

bool is_zero(const Vec& x);
double dot(const Vec& a, const Vec& b);
double norm_sq(const Vec& x);
double euclidean_norm(const Vec& x);
Vec scaled(const Vec& x, double t);
Vec vec_add(const Vec& a, const Vec& b);

/// Subset K of coordinates {0,...,d-1} held as a bitmask; carrier of the
/// coordinate projections x_K. The complement -K partitions {0,...,d-1}.
class SupportSet {
 public:
  SupportSet(int dim, std::uint64_t bits);
  static SupportSet empty(int dim) { return SupportSet(dim, 0); }
  static SupportSet full(int dim);
  static SupportSet of(int dim, const std::vector<int>& indices);

  int dim() const { return dim_; }
  int size() const;
  bool contains(int i) const;
  SupportSet complement() const;
  std::vector<int> indices() const;
  std::uint64_t bits() const { return bits_; }

  friend bool operator==(const SupportSet& a, const SupportSet& b) = default;

 private:
  int dim_;
  std::uint64_t bits_;
};

/// x_K: coincides with x on K, zero outside. x = x_K + x_{-K} orthogonally.
Vec project(const Vec& x, const SupportSet& K);

/// Number of entries with |x_i| > zero_tol.
int l0(const Vec& x, double zero_tol = 0.0);

/// Top-k norm (2-k-symmetric gauge / Ky Fan vector norm): Euclidean norm of
/// the k largest-magnitude coordinates. k = 0 gives the constant 0.
/// Selection ties break to the smaller index and the chosen squares are
/// summed in index order, so the value matches the subset-enumeration
/// oracle bitwise.
double topk_norm(const Vec& x, int k);

/// k-support norm: the dual norm of topk_norm(., k), i.e.
/// sup { <x,y> : ||y||_(k) <= 1 }. Evaluated by the sorted-magnitude closed
/// form (squared head above a threshold index, averaged tail below); the
/// brute-force dual oracle gates this closed form in the test suite.
double ksupport_norm(const Vec& x, int k);

/// min { j : ||x||_(j) = ||x|| }, equality at relative tolerance rel_tol.
/// Agrees with l0 whenever zero entries are exact at the tolerance scale.
int l0_via_norm_chain(const Vec& x, double rel_tol = 1e-9);

/// True iff ||x||_(k) >= (1 - rel_tol) * ||x||, i.e. x has at most k
/// nonzero components up to tolerance.
bool level_set_contains(const Vec& x, int k, double rel_tol = 1e-9);

/// Support function of B_K = { x : x_{-K} = 0, ||x_K|| <= 1 }: returns ||y_K||.
double support_fn_ball_K(const Vec& y, const SupportSet& K);

/// x / ||x|| for x != 0, and 0 at 0. Image lies in the unit sphere plus the
/// origin; idempotent.
Vec normalization(const Vec& x);

enum class NormKind { Euclidean, TopK, KSupport };

struct NormSpec {
  NormKind kind = NormKind::Euclidean;
  int k = 0;  // ignored for Euclidean
};

double norm_value(const Vec& x, const NormSpec& spec);

std::string vec_str(const Vec& x);

}  // namespace capra
