#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "capra/vec.hpp"
#include "capra/xreal.hpp"

namespace capra {

/// Mapping from a source space into the primal space; the theta of a
/// one-sided linear coupling. Deterministic and total on sampled domains.
class MappingTheta {
 public:
  static MappingTheta identity(int dim);
  static MappingTheta normalization(int dim);
  static MappingTheta coordinate_zeroing(const SupportSet& keep);
  static MappingTheta zero(int dim);
  static MappingTheta custom(std::string name, int source_dim, int target_dim,
                             std::function<Vec(const Vec&)> fn);

  /// w -> -theta(w).
  MappingTheta negated() const;

  const std::string& name() const { return name_; }
  int source_dim() const { return source_dim_; }
  int target_dim() const { return target_dim_; }
  Vec operator()(const Vec& w) const;

 private:
  MappingTheta(std::string name, int sd, int td, std::function<Vec(const Vec&)> fn)
      : name_(std::move(name)), source_dim_(sd), target_dim_(td), fn_(std::move(fn)) {}
  std::string name_;
  int source_dim_;
  int target_dim_;
  std::function<Vec(const Vec&)> fn_;
};

/// Evaluatable pairing c(x, y) -> extended real, with reverse and negation.
/// Couplings of the form c(x, y) = <theta(x), y> carry their theta so the
/// engine can lower suprema onto the batch kernels.
class Coupling {
 public:
  static Coupling custom(int primal_dim, int dual_dim,
                         std::function<XReal(const Vec&, const Vec&)> eval,
                         std::string name = "custom");

  XReal eval(const Vec& x, const Vec& y) const;
  Coupling reverse() const;
  Coupling negate() const;

  bool linear_in_first() const { return side_ == LinSide::First; }
  bool linear_in_second() const { return side_ == LinSide::Second; }
  const MappingTheta& theta() const;

  int primal_dim() const { return primal_dim_; }
  int dual_dim() const { return dual_dim_; }
  std::string primal_space() const { return "R^" + std::to_string(primal_dim_); }
  std::string dual_space() const { return "R^" + std::to_string(dual_dim_); }
  const std::string& name() const { return name_; }

  friend Coupling make_one_sided_linear(const MappingTheta& theta, int dual_dim);

 private:
  enum class LinSide { None, First, Second };
  Coupling() = default;
  std::string name_;
  int primal_dim_ = 0;
  int dual_dim_ = 0;
  std::function<XReal(const Vec&, const Vec&)> eval_;
  std::optional<MappingTheta> theta_;
  LinSide side_ = LinSide::None;
};

/// c_theta(w, y) = <theta(w), y>; always finite.
Coupling make_one_sided_linear(const MappingTheta& theta, int dual_dim);

/// The classical pairing <x, y> on R^dim.
Coupling fenchel_coupling(int dim);

/// The coupling <x, y> / ||x|| (0 at x = 0): the Fenchel coupling after
/// primal normalization. Constant along open primal rays.
Coupling capra_coupling(int dim);

/// Finite map from pairwise-distinct sample points to extended reals; the
/// object the grid engine transforms. All suprema and infima below are over
/// these finite sets, where the engine identities are exact.
class SampledFunction {
 public:
  SampledFunction(std::vector<Vec> points, std::vector<XReal> values);
  static SampledFunction tabulate(std::vector<Vec> points,
                                  const std::function<XReal(const Vec&)>& fn);

  std::size_t size() const { return points_.size(); }
  int dim() const { return dim_; }
  const Vec& point(std::size_t i) const { return points_[i]; }
  XReal value(std::size_t i) const { return values_[i]; }
  const std::vector<Vec>& points() const { return points_; }
  const std::vector<XReal>& values() const { return values_; }

  /// Index of a bitwise-equal point (with -0.0 folded onto +0.0).
  std::optional<std::size_t> find(const Vec& p) const;

 private:
  std::vector<Vec> points_;
  std::vector<XReal> values_;
  std::unordered_map<std::string, std::size_t> index_;
  int dim_ = 0;
};

/// For each dual sample y: sup over the points x of f of
/// c(x,y) +. (-f(x)). A lower bound of the continuum conjugate; exact when
/// the effective domain of f is contained in the sample.
SampledFunction conjugate(const SampledFunction& f, const Coupling& c,
                          const std::vector<Vec>& dual_samples);

/// Mirror of conjugate through the reverse coupling.
SampledFunction reverse_conjugate(const SampledFunction& g, const Coupling& c,
                                  const std::vector<Vec>& primal_samples);

/// reverse_conjugate(conjugate(f)). Requires primal_samples to be points of
/// f; enforces result <= f + 1e-12 pointwise and throws on violation.
SampledFunction biconjugate(const SampledFunction& f, const Coupling& c,
                            const std::vector<Vec>& dual_samples,
                            const std::vector<Vec>& primal_samples);

struct DualBound {
  XReal lower;
  XReal upper;
};

/// Weak duality on the shared sample set:
///   sup_y ( -f^c(y) +. -g^{-c}(y) )  <=  inf_x ( f(x) +^ g(x) ).
/// f and g must share their point list; the inequality is enforced.
DualBound dual_bound(const SampledFunction& f, const SampledFunction& g,
                     const Coupling& c, const std::vector<Vec>& dual_samples);

/// (theta |> f)(x) = inf { f(w) : theta(w) = x } on the sampled image, with
/// inf over an empty fiber being +inf. Images are grouped by bit equality
/// after rounding to 12 significant digits so that collinear points collide
/// under normalization despite floating error; the stored support point is
/// the first member's unrounded image.
SampledFunction infimal_postcomposition(const SampledFunction& f,
                                        const MappingTheta& theta);

/// Same, evaluated on caller-chosen target points (+inf off the image).
SampledFunction infimal_postcomposition(const SampledFunction& f,
                                        const MappingTheta& theta,
                                        const std::vector<Vec>& target_points);

// Sample-set constructors. All deterministic for a fixed seed.

/// count points uniform in the radius-ball of R^dim.
std::vector<Vec> sample_ball(int dim, int count, std::uint64_t seed,
                             double radius = 1.0);

/// Signed support-frame vectors: for every K with 1 <= |K| <= max_card and
/// every sign pattern, the unit vector with entries s_i / sqrt(|K|) on K.
std::vector<Vec> support_frame(int dim, int max_card);

/// { lambda0 * factor^i * x : i = 0..count-1 }.
std::vector<Vec> ray_ladder(const Vec& x, double lambda0, double factor,
                            int count);

/// Drops numerically duplicate points, keeping first occurrences.
std::vector<Vec> dedupe_points(std::vector<Vec> pts);

/// Coordinatewise rounding to the given number of significant decimal
/// digits (-0.0 folded onto +0.0); the grouping key of the infimal
/// postcomposition.
Vec round_significant(const Vec& x, int digits);

}  // namespace capra
