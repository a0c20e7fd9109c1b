#include "capra/conjugacy.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "capra/kernels.hpp"
#include "capra/rng.hpp"

namespace capra {

namespace {

// Byte key for bitwise point identity, with -0.0 folded onto +0.0.
std::string point_key(const Vec& p) {
  std::string key(p.size() * sizeof(double), '\0');
  for (std::size_t i = 0; i < p.size(); ++i) {
    double v = p[i] == 0.0 ? 0.0 : p[i];
    std::memcpy(key.data() + i * sizeof(double), &v, sizeof(double));
  }
  return key;
}

}  // namespace

MappingTheta MappingTheta::identity(int dim) {
  return MappingTheta("identity", dim, dim, [](const Vec& w) { return w; });
}

MappingTheta MappingTheta::normalization(int dim) {
  return MappingTheta("normalization", dim, dim,
                      [](const Vec& w) { return capra::normalization(w); });
}

MappingTheta MappingTheta::coordinate_zeroing(const SupportSet& keep) {
  return MappingTheta("zero_outside_K", keep.dim(), keep.dim(),
                      [keep](const Vec& w) { return project(w, keep); });
}

MappingTheta MappingTheta::zero(int dim) {
  return MappingTheta("zero", dim, dim,
                      [dim](const Vec&) { return Vec(dim, 0.0); });
}

MappingTheta MappingTheta::custom(std::string name, int source_dim,
                                  int target_dim,
                                  std::function<Vec(const Vec&)> fn) {
  return MappingTheta(std::move(name), source_dim, target_dim, std::move(fn));
}

MappingTheta MappingTheta::negated() const {
  auto base = fn_;
  return MappingTheta("-" + name_, source_dim_, target_dim_,
                      [base](const Vec& w) {
                        Vec r = base(w);
                        for (double& v : r) v = -v;
                        return r;
                      });
}

Vec MappingTheta::operator()(const Vec& w) const {
  if (static_cast<int>(w.size()) != source_dim_)
    throw std::invalid_argument("MappingTheta: dimension mismatch");
  Vec r = fn_(w);
  if (static_cast<int>(r.size()) != target_dim_)
    throw std::logic_error("MappingTheta: image dimension mismatch");
  return r;
}

Coupling Coupling::custom(int primal_dim, int dual_dim,
                          std::function<XReal(const Vec&, const Vec&)> eval,
                          std::string name) {
  Coupling c;
  c.name_ = std::move(name);
  c.primal_dim_ = primal_dim;
  c.dual_dim_ = dual_dim;
  c.eval_ = std::move(eval);
  return c;
}

XReal Coupling::eval(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != primal_dim_ ||
      static_cast<int>(y.size()) != dual_dim_)
    throw std::invalid_argument("Coupling: dimension mismatch");
  return eval_(x, y);
}

Coupling Coupling::reverse() const {
  Coupling r;
  r.name_ = name_ + "'";
  r.primal_dim_ = dual_dim_;
  r.dual_dim_ = primal_dim_;
  auto base = eval_;
  r.eval_ = [base](const Vec& y, const Vec& x) { return base(x, y); };
  r.theta_ = theta_;
  switch (side_) {
    case LinSide::None:
      r.side_ = LinSide::None;
      break;
    case LinSide::First:
      r.side_ = LinSide::Second;
      break;
    case LinSide::Second:
      r.side_ = LinSide::First;
      break;
  }
  return r;
}

Coupling Coupling::negate() const {
  if (theta_) {
    // -c_theta = c_(-theta): stays one-sided linear.
    MappingTheta nt = theta_->negated();
    if (side_ == LinSide::First) return make_one_sided_linear(nt, dual_dim_);
    Coupling c = make_one_sided_linear(nt, primal_dim_).reverse();
    return c;
  }
  Coupling c;
  c.name_ = "-" + name_;
  c.primal_dim_ = primal_dim_;
  c.dual_dim_ = dual_dim_;
  auto base = eval_;
  c.eval_ = [base](const Vec& x, const Vec& y) { return neg(base(x, y)); };
  return c;
}

const MappingTheta& Coupling::theta() const {
  if (!theta_) throw std::logic_error("Coupling: no linear structure");
  return *theta_;
}

Coupling make_one_sided_linear(const MappingTheta& theta, int dual_dim) {
  if (theta.target_dim() != dual_dim)
    throw std::invalid_argument("one-sided linear coupling: pairing dimension mismatch");
  Coupling c;
  c.name_ = "c_" + theta.name();
  c.primal_dim_ = theta.source_dim();
  c.dual_dim_ = dual_dim;
  MappingTheta th = theta;
  c.eval_ = [th](const Vec& x, const Vec& y) { return XReal(dot(th(x), y)); };
  c.theta_ = th;
  c.side_ = Coupling::LinSide::First;
  return c;
}

Coupling fenchel_coupling(int dim) {
  return make_one_sided_linear(MappingTheta::identity(dim), dim);
}

Coupling capra_coupling(int dim) {
  return make_one_sided_linear(MappingTheta::normalization(dim), dim);
}

SampledFunction::SampledFunction(std::vector<Vec> points,
                                 std::vector<XReal> values)
    : points_(std::move(points)), values_(std::move(values)) {
  if (points_.empty()) throw std::invalid_argument("SampledFunction: empty sample");
  if (points_.size() != values_.size())
    throw std::invalid_argument("SampledFunction: points/values size mismatch");
  dim_ = static_cast<int>(points_[0].size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    validate_vector(points_[i]);
    if (static_cast<int>(points_[i].size()) != dim_)
      throw std::invalid_argument("SampledFunction: mixed dimensions");
    if (!index_.emplace(point_key(points_[i]), i).second)
      throw std::invalid_argument("SampledFunction: duplicate point " +
                                  vec_str(points_[i]));
  }
}

SampledFunction SampledFunction::tabulate(
    std::vector<Vec> points, const std::function<XReal(const Vec&)>& fn) {
  std::vector<XReal> values;
  values.reserve(points.size());
  for (const Vec& p : points) values.push_back(fn(p));
  return SampledFunction(std::move(points), std::move(values));
}

std::optional<std::size_t> SampledFunction::find(const Vec& p) const {
  auto it = index_.find(point_key(p));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

// Kernel-backed sup of <theta(x_i), y> + bias_i over the points of f, for
// many y. Used for both conjugate directions of one-sided linear couplings.
std::vector<XReal> linear_sup(const std::vector<Vec>& points,
                              const std::vector<XReal>& values,
                              const MappingTheta& theta,
                              const std::vector<Vec>& duals) {
  const std::size_t n = points.size();
  const std::size_t td = static_cast<std::size_t>(theta.target_dim());

  bool any_bottom = false;
  for (const XReal& v : values) any_bottom |= v.is_neg_inf();
  if (any_bottom)
    return std::vector<XReal>(duals.size(), XReal::pos_inf());

  std::vector<double> soa(td * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec im = theta(points[i]);
    for (std::size_t j = 0; j < td; ++j) soa[j * n + i] = im[j];
  }
  std::vector<double> bias(n);
  for (std::size_t i = 0; i < n; ++i)
    bias[i] = values[i].is_pos_inf() ? -std::numeric_limits<double>::infinity()
                                     : -values[i].value();

  std::vector<double> scores(n);
  std::vector<XReal> out;
  out.reserve(duals.size());
  for (const Vec& y : duals) {
    if (y.size() != td)
      throw std::invalid_argument("conjugate: sample dimension mismatch");
    kernels::batch_dot(soa.data(), n, td, y.data(), scores.data());
    const kernels::MaxResult m = kernels::bias_max(scores.data(), bias.data(), n);
    out.push_back(XReal(m.value));
  }
  return out;
}

}  // namespace

SampledFunction conjugate(const SampledFunction& f, const Coupling& c,
                          const std::vector<Vec>& dual_samples) {
  if (dual_samples.empty())
    throw std::invalid_argument("conjugate: dual sample set is empty");
  if (f.dim() != c.primal_dim())
    throw std::invalid_argument("conjugate: coupling/sample dimension mismatch");

  if (c.linear_in_first())
    return SampledFunction(dual_samples,
                           linear_sup(f.points(), f.values(), c.theta(), dual_samples));
  if (c.linear_in_second()) {
    // c(x, y) = <theta(y), x>: swap the roles; theta applies to the duals.
    // sup_x ( <x, theta(y)> + (-f(x)) ) with x running over f's points.
    MappingTheta ident = MappingTheta::identity(f.dim());
    std::vector<Vec> mapped;
    mapped.reserve(dual_samples.size());
    for (const Vec& y : dual_samples) mapped.push_back(c.theta()(y));
    std::vector<XReal> vals =
        linear_sup(f.points(), f.values(), ident, mapped);
    return SampledFunction(dual_samples, std::move(vals));
  }

  std::vector<XReal> vals;
  vals.reserve(dual_samples.size());
  for (const Vec& y : dual_samples) {
    XReal best = XReal::neg_inf();
    for (std::size_t i = 0; i < f.size(); ++i) {
      const XReal cand = low_add(c.eval(f.point(i), y), neg(f.value(i)));
      if (cand > best) best = cand;
    }
    vals.push_back(best);
  }
  return SampledFunction(dual_samples, std::move(vals));
}

SampledFunction reverse_conjugate(const SampledFunction& g, const Coupling& c,
                                  const std::vector<Vec>& primal_samples) {
  return conjugate(g, c.reverse(), primal_samples);
}

SampledFunction biconjugate(const SampledFunction& f, const Coupling& c,
                            const std::vector<Vec>& dual_samples,
                            const std::vector<Vec>& primal_samples) {
  for (const Vec& x : primal_samples)
    if (!f.find(x))
      throw std::invalid_argument(
          "biconjugate: primal sample " + vec_str(x) + " is not a point of f");

  const SampledFunction fc = conjugate(f, c, dual_samples);
  SampledFunction res = reverse_conjugate(fc, c, primal_samples);

  for (std::size_t i = 0; i < res.size(); ++i) {
    const XReal fx = f.value(*f.find(res.point(i)));
    const XReal bx = res.value(i);
    const bool ok = fx.is_pos_inf() || (bx <= fx) ||
                    (bx.is_finite() && fx.is_finite() &&
                     bx.value() <= fx.value() + 1e-12);
    if (!ok)
      throw std::logic_error("biconjugate exceeded the original function at " +
                             vec_str(res.point(i)) + ": " + bx.str() + " > " +
                             fx.str());
  }
  return res;
}

DualBound dual_bound(const SampledFunction& f, const SampledFunction& g,
                     const Coupling& c, const std::vector<Vec>& dual_samples) {
  if (f.points() != g.points())
    throw std::invalid_argument("dual_bound: f and g must share their sample set");

  const SampledFunction fc = conjugate(f, c, dual_samples);
  const SampledFunction gm = conjugate(g, c.negate(), dual_samples);

  XReal lower = XReal::neg_inf();
  for (std::size_t i = 0; i < fc.size(); ++i) {
    const XReal cand = low_add(neg(fc.value(i)), neg(gm.value(i)));
    if (cand > lower) lower = cand;
  }
  XReal upper = XReal::pos_inf();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const XReal cand = upp_add(f.value(i), g.value(i));
    if (cand < upper) upper = cand;
  }

  const bool ok = (lower <= upper) ||
                  (lower.is_finite() && upper.is_finite() &&
                   lower.value() <= upper.value() + 1e-12);
  if (!ok)
    throw std::logic_error("dual_bound: weak duality violated: " + lower.str() +
                           " > " + upper.str());
  return DualBound{lower, upper};
}

Vec round_significant(const Vec& x, int digits) {
  Vec r(x.size());
  char buf[64];
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r[i] = 0.0;
      continue;
    }
    std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, x[i]);
    r[i] = std::strtod(buf, nullptr);
  }
  return r;
}

namespace {

SampledFunction ipc_impl(const SampledFunction& f, const MappingTheta& theta,
                         const std::vector<Vec>* targets) {
  struct Group {
    Vec rep;
    XReal value;
  };
  std::vector<Group> groups;
  std::unordered_map<std::string, std::size_t> by_key;

  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec im = theta(f.point(i));
    const std::string key = point_key(round_significant(im, 12));
    auto [it, inserted] = by_key.emplace(key, groups.size());
    if (inserted) {
      groups.push_back(Group{im, f.value(i)});
    } else if (f.value(i) < groups[it->second].value) {
      groups[it->second].value = f.value(i);
    }
  }

  if (!targets) {
    std::vector<Vec> pts;
    std::vector<XReal> vals;
    pts.reserve(groups.size());
    for (const Group& g : groups) {
      pts.push_back(g.rep);
      vals.push_back(g.value);
    }
    return SampledFunction(std::move(pts), std::move(vals));
  }

  std::vector<XReal> vals;
  vals.reserve(targets->size());
  for (const Vec& t : *targets) {
    const std::string key = point_key(round_significant(t, 12));
    auto it = by_key.find(key);
    vals.push_back(it == by_key.end() ? XReal::pos_inf()
                                      : groups[it->second].value);
  }
  return SampledFunction(*targets, std::move(vals));
}

}  // namespace

SampledFunction infimal_postcomposition(const SampledFunction& f,
                                        const MappingTheta& theta) {
  return ipc_impl(f, theta, nullptr);
}

SampledFunction infimal_postcomposition(const SampledFunction& f,
                                        const MappingTheta& theta,
                                        const std::vector<Vec>& target_points) {
  return ipc_impl(f, theta, &target_points);
}

std::vector<Vec> sample_ball(int dim, int count, std::uint64_t seed,
                             double radius) {
  if (dim < 1) throw std::invalid_argument("sample_ball: dim must be >= 1");
  Rng rng(seed);
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int t = 0; t < count; ++t) {
    Vec x(dim);
    double nsq = 0.0;
    for (int i = 0; i < dim; ++i) {
      x[i] = rng.normal();
      nsq += x[i] * x[i];
    }
    if (nsq == 0.0) {
      pts.push_back(Vec(dim, 0.0));
      continue;
    }
    const double r =
        radius * std::pow(rng.uniform(), 1.0 / dim) / std::sqrt(nsq);
    for (int i = 0; i < dim; ++i) x[i] *= r;
    pts.push_back(std::move(x));
  }
  return dedupe_points(std::move(pts));
}

std::vector<Vec> support_frame(int dim, int max_card) {
  if (dim < 1 || dim > 20)
    throw std::invalid_argument("support_frame: dimension guard (d <= 20)");
  if (max_card < 0 || max_card > dim)
    throw std::invalid_argument("support_frame: cardinality out of range");
  std::vector<Vec> pts;
  for (int m = 1; m <= max_card; ++m) {
    const double w = 1.0 / std::sqrt(static_cast<double>(m));
    // Combinations via bitmasks of popcount m, ascending (lexicographic-ish).
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << dim); ++mask) {
      if (std::popcount(mask) != m) continue;
      std::vector<int> idx;
      for (int i = 0; i < dim; ++i)
        if (mask & (std::uint64_t(1) << i)) idx.push_back(i);
      for (std::uint64_t signs = 0; signs < (std::uint64_t(1) << m); ++signs) {
        Vec v(dim, 0.0);
        for (int j = 0; j < m; ++j)
          v[idx[j]] = (signs & (std::uint64_t(1) << j)) ? -w : w;
        pts.push_back(std::move(v));
      }
    }
  }
  return pts;
}

std::vector<Vec> ray_ladder(const Vec& x, double lambda0, double factor,
                            int count) {
  if (is_zero(x)) throw std::invalid_argument("ray_ladder: x must be nonzero");
  if (lambda0 <= 0.0 || factor <= 0.0)
    throw std::invalid_argument("ray_ladder: positive lambda0 and factor required");
  std::vector<Vec> pts;
  double lam = lambda0;
  for (int i = 0; i < count; ++i, lam *= factor) pts.push_back(scaled(x, lam));
  return dedupe_points(std::move(pts));
}

std::vector<Vec> dedupe_points(std::vector<Vec> pts) {
  std::unordered_map<std::string, bool> seen;
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (Vec& p : pts) {
    if (seen.emplace(point_key(p), true).second) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace capra
