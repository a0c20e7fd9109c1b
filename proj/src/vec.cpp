#include "capra/vec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace capra {

void validate_vector(const Vec& x) {
  if (x.empty()) throw std::invalid_argument("vector: dimension must be >= 1");
  for (double v : x)
    if (std::isnan(v)) throw std::invalid_argument("vector: NaN entry");
}

bool is_zero(const Vec& x) {
  for (double v : x)
    if (v != 0.0) return false;
  return true;
}

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const Vec& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double euclidean_norm(const Vec& x) { return std::sqrt(norm_sq(x)); }

Vec scaled(const Vec& x, double t) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = t * x[i];
  return r;
}

Vec vec_add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

SupportSet::SupportSet(int dim, std::uint64_t bits) : dim_(dim), bits_(bits) {
  if (dim < 1 || dim > 64) throw std::invalid_argument("SupportSet: dim out of range");
  if (dim < 64 && (bits >> dim) != 0)
    throw std::invalid_argument("SupportSet: member index out of range");
}

SupportSet SupportSet::full(int dim) {
  SupportSet s(dim, 0);
  s.bits_ = dim == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << dim) - 1);
  return s;
}

SupportSet SupportSet::of(int dim, const std::vector<int>& indices) {
  std::uint64_t bits = 0;
  for (int i : indices) {
    if (i < 0 || i >= dim) throw std::invalid_argument("SupportSet: index out of range");
    bits |= std::uint64_t(1) << i;
  }
  return SupportSet(dim, bits);
}

int SupportSet::size() const { return std::popcount(bits_); }

bool SupportSet::contains(int i) const {
  return i >= 0 && i < dim_ && ((bits_ >> i) & 1u);
}

SupportSet SupportSet::complement() const {
  return SupportSet(dim_, full(dim_).bits_ & ~bits_);
}

std::vector<int> SupportSet::indices() const {
  std::vector<int> out;
  for (int i = 0; i < dim_; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

Vec project(const Vec& x, const SupportSet& K) {
  if (static_cast<int>(x.size()) != K.dim())
    throw std::invalid_argument("project: dimension mismatch");
  Vec r(x.size(), 0.0);
  for (int i = 0; i < K.dim(); ++i)
    if (K.contains(i)) r[i] = x[i];
  return r;
}

int l0(const Vec& x, double zero_tol) {
  if (zero_tol < 0.0) throw std::invalid_argument("l0: zero_tol must be >= 0");
  int count = 0;
  for (double v : x)
    if (std::abs(v) > zero_tol) ++count;
  return count;
}

double topk_norm(const Vec& x, int k) {
  const int d = static_cast<int>(x.size());
  if (k < 0 || k > d) throw std::invalid_argument("topk_norm: k out of range");
  if (k == 0) return 0.0;
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  // Squares are summed in (magnitude desc, index asc) order. This canonical
  // order makes subsets that differ only by swapping equal magnitudes sum
  // bitwise identically, so the subset-enumeration oracle matches exactly
  // even on tied inputs.
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&x](int a, int b) {
    const double ma = std::abs(x[a]), mb = std::abs(x[b]);
    return ma != mb ? ma > mb : a < b;
  });
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += x[idx[i]] * x[idx[i]];
  return std::sqrt(s);
}

double ksupport_norm(const Vec& x, int k) {
  const int d = static_cast<int>(x.size());
  if (k < 1 || k > d) throw std::invalid_argument("ksupport_norm: k out of range");
  std::vector<double> m(d);
  for (int i = 0; i < d; ++i) m[i] = std::abs(x[i]);
  std::sort(m.begin(), m.end(), std::greater<>());
  // Threshold index r in {0,...,k-1}: the k-r-1 largest magnitudes stay
  // squared, the rest are averaged over r+1 slots. r is the unique value
  // with m[k-r-2] > tail/(r+1) >= m[k-r-1]  (m[-1] taken as +inf).
  for (int r = 0; r < k; ++r) {
    double tail = 0.0;
    for (int i = k - r - 1; i < d; ++i) tail += m[i];
    const double avg = tail / (r + 1);
    const bool head_ok = (k - r - 2 < 0) || (m[k - r - 2] > avg);
    const bool tail_ok = avg >= m[k - r - 1];
    if (head_ok && tail_ok) {
      if (k - r - 1 == 0) return tail / std::sqrt(static_cast<double>(r + 1));
      double head_sq = 0.0;
      for (int i = 0; i < k - r - 1; ++i) head_sq += m[i] * m[i];
      return std::sqrt(head_sq + tail * tail / (r + 1));
    }
  }
  // Unreachable in exact arithmetic; full averaging as a floating fallback.
  double tail = 0.0;
  for (int i = 0; i < d; ++i) tail += m[i];
  return tail / std::sqrt(static_cast<double>(k));
}

int l0_via_norm_chain(const Vec& x, double rel_tol) {
  const int d = static_cast<int>(x.size());
  const double nx = topk_norm(x, d);
  for (int j = 0; j <= d; ++j)
    if (topk_norm(x, j) >= (1.0 - rel_tol) * nx) return j;
  return d;  // unreachable: the j = d norm meets its own bound
}

bool level_set_contains(const Vec& x, int k, double rel_tol) {
  const int d = static_cast<int>(x.size());
  if (k < 0 || k > d) throw std::invalid_argument("level_set_contains: k out of range");
  return topk_norm(x, k) >= (1.0 - rel_tol) * topk_norm(x, d);
}

double support_fn_ball_K(const Vec& y, const SupportSet& K) {
  return euclidean_norm(project(y, K));
}

Vec normalization(const Vec& x) {
  if (is_zero(x)) return Vec(x.size(), 0.0);
  const double nx = euclidean_norm(x);
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] / nx;
  return r;
}

double norm_value(const Vec& x, const NormSpec& spec) {
  switch (spec.kind) {
    case NormKind::Euclidean:
      return euclidean_norm(x);
    case NormKind::TopK:
      return topk_norm(x, spec.k);
    case NormKind::KSupport:
      return ksupport_norm(x, spec.k);
  }
  throw std::logic_error("norm_value: bad kind");
}

std::string vec_str(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x[i];
  }
  os << ")";
  return os.str();
}

}  // namespace capra
