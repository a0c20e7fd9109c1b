#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace capra {

/// Extended real number in [-inf, +inf] with Moreau's two addition laws.
///
/// Ordinary addition is ambiguous at (+inf) + (-inf); the lower addition
/// resolves it to -inf (the convention compatible with suprema) and the
/// upper addition to +inf (compatible with infima). Everything else is
/// plain IEEE arithmetic on a double payload. NaN is rejected at
/// construction, so the order is total and comparisons are exact.
class XReal {
 public:
  XReal() : v_(0.0) {}

  // Implicit on purpose: finite literals and IEEE infinities both make
  // sense as extended reals. IEEE +/-inf normalize to the infinity states.
  XReal(double v) : v_(v) {
    if (std::isnan(v)) throw std::invalid_argument("XReal: NaN payload");
  }

  static XReal pos_inf() { return XReal(std::numeric_limits<double>::infinity()); }
  static XReal neg_inf() { return XReal(-std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

  /// Raw payload; +/-inf for the infinite states.
  double value() const { return v_; }

  friend auto operator<=>(XReal a, XReal b) { return a.v_ <=> b.v_; }
  friend bool operator==(XReal a, XReal b) { return a.v_ == b.v_; }

  std::string str() const {
    if (is_pos_inf()) return "+inf";
    if (is_neg_inf()) return "-inf";
    return std::to_string(v_);
  }

 private:
  double v_;
};

/// Lower addition: (+inf) + (-inf) = -inf in either order.
inline XReal low_add(XReal a, XReal b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
    return XReal::neg_inf();
  return XReal(a.value() + b.value());
}

/// Upper addition: (+inf) + (-inf) = +inf in either order.
inline XReal upp_add(XReal a, XReal b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
    return XReal::pos_inf();
  return XReal(a.value() + b.value());
}

/// Sign flip; swaps the infinities, involutive.
inline XReal neg(XReal a) { return XReal(-a.value()); }

/// Supremum of a finite range, sup of the empty range being -inf.
template <typename Range>
XReal sup_fold(const Range& values) {
  XReal best = XReal::neg_inf();
  for (const XReal& v : values)
    if (v > best) best = v;
  return best;
}

/// Infimum of a finite range, inf of the empty range being +inf.
template <typename Range>
XReal inf_fold(const Range& values) {
  XReal best = XReal::pos_inf();
  for (const XReal& v : values)
    if (v < best) best = v;
  return best;
}

}  // namespace capra
