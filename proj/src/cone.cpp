#include "conecalc/cone.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "conecalc/errors.hpp"
#include "conecalc/linalg.hpp"

namespace conecalc {

ConeTerm cone(const RationalPoint& apex, std::vector<WeightVector> rays, const Rational& coefficient) {
  ConeTerm t;
  t.coefficient = coefficient;
  t.apex = apex;
  t.rays = std::move(rays);
  return t;
}

void validate(const ConeTerm& term) {
  const std::size_t n = term.rank();
  auto check = [&](const std::vector<WeightVector>& gens, const char* what) {
    for (const auto& g : gens) {
      if (g.size() != n)
        throw MathError(ErrorKind::kDimensionMismatch, std::string(what) + " length differs from apex");
      if (is_zero(g)) throw MathError(ErrorKind::kZeroVector, std::string("zero ") + what + " generator");
    }
  };
  check(term.rays, "ray");
  check(term.boxes, "box");
  check(term.lineality, "lineality");
  if (rank(term.lineality) != term.lineality.size())
    throw MathError(ErrorKind::kInvalidInput, "lineality vectors are dependent");
}

std::string to_string(const ConeTerm& term) {
  std::ostringstream os;
  auto list = [&](const std::vector<WeightVector>& gens) {
    os << '{';
    for (std::size_t i = 0; i < gens.size(); ++i) os << (i ? "," : "") << to_string(gens[i]);
    os << '}';
  };
  os << term.coefficient.get_str() << "*cone(" << to_string(term.apex) << "; rays ";
  list(term.rays);
  if (!term.boxes.empty()) {
    os << "; boxes ";
    list(term.boxes);
  }
  if (!term.lineality.empty()) {
    os << "; lineality ";
    list(term.lineality);
  }
  os << ')';
  return os.str();
}

SignedConeSum::SignedConeSum(std::size_t rank, std::vector<ConeTerm> terms) : rank_(rank) {
  for (auto& t : terms) add(std::move(t));
}

void SignedConeSum::add(ConeTerm term) {
  if (term.rank() != rank_)
    throw MathError(ErrorKind::kDimensionMismatch,
                    "term rank " + std::to_string(term.rank()) + " in sum of rank " + std::to_string(rank_));
  validate(term);
  terms_.push_back(std::move(term));
}

void SignedConeSum::append(const SignedConeSum& other) {
  for (const auto& t : other.terms()) add(t);
}

SignedConeSum SignedConeSum::operator+(const SignedConeSum& o) const {
  SignedConeSum r(*this);
  r.append(o);
  return r;
}

SignedConeSum SignedConeSum::operator*(const Rational& s) const {
  SignedConeSum r(*this);
  for (auto& t : r.terms_) t.coefficient *= s;
  return r;
}

SignedConeSum SignedConeSum::simplified() const {
  using Key = std::tuple<RationalPoint, std::vector<WeightVector>, std::vector<WeightVector>,
                         std::vector<WeightVector>>;
  std::map<Key, Rational> merged;
  std::vector<Key> order;
  for (const auto& t : terms_) {
    auto lin = t.lineality, rays = t.rays, boxes = t.boxes;
    std::sort(lin.begin(), lin.end());
    std::sort(rays.begin(), rays.end());
    std::sort(boxes.begin(), boxes.end());
    Key k{t.apex, lin, rays, boxes};
    auto [it, inserted] = merged.emplace(k, t.coefficient);
    if (inserted)
      order.push_back(k);
    else
      it->second += t.coefficient;
  }
  SignedConeSum r(rank_);
  for (const auto& k : order) {
    const Rational& c = merged[k];
    if (c == 0) continue;
    ConeTerm t;
    t.coefficient = c;
    std::tie(t.apex, t.lineality, t.rays, t.boxes) = k;
    r.terms_.push_back(std::move(t));
  }
  return r;
}

SignedConeSum flip_to_direction(const SignedConeSum& sum, const WeightVector& v) {
  if (v.size() != sum.rank()) throw MathError(ErrorKind::kDimensionMismatch, "direction length");
  SignedConeSum out(sum.rank());
  for (auto t : sum.terms()) {
    for (auto& r : t.rays) {
      auto p = dot(r, v);
      if (p == 0)
        throw MathError(ErrorKind::kNonGenericDirection,
                        "weight " + to_string(r) + " is perpendicular to v=" + to_string(v));
      if (p < 0) {
        r = negate(r);
        t.coefficient = -t.coefficient;
      }
    }
    out.add(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density evaluation.

namespace {

struct Generator {
  WeightVector v;
  bool box = false;
};

// Hyperplanes {y : <normal, y> = offset} in relative (apex at 0) quotient
// coordinates, one normal with all its translates by box-subset sums.
struct WallFamily {
  WeightVector normal;
  std::vector<Rational> offsets;
};

Rational pair(const WeightVector& a, const RationalPoint& b) { return dot(a, b); }

std::vector<WeightVector> box_subset_sums(const std::vector<Generator>& gens, std::size_t d) {
  std::vector<WeightVector> sums{WeightVector(d, 0)};
  for (const auto& g : gens) {
    if (!g.box) continue;
    const std::size_t m = sums.size();
    for (std::size_t i = 0; i < m; ++i) {
      WeightVector s = sums[i];
      for (std::size_t j = 0; j < d; ++j) s[j] += g.v[j];
      sums.push_back(std::move(s));
    }
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

// Every hyperplane spanned by d-1 independent generators, translated by every
// sum of a subset of the box generators.
std::vector<WallFamily> walls_of(const std::vector<Generator>& gens, std::size_t d) {
  std::vector<WallFamily> out;
  if (d == 0) return out;
  std::vector<WeightVector> normals;
  const std::size_t m = gens.size();
  const std::size_t k = d - 1;
  if (m < k) return out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<WeightVector> subset;
    for (auto i : idx) subset.push_back(gens[i].v);
    if (rank(subset) == k) {
      auto ann = integer_annihilator_basis(subset, d);
      WeightVector nu = primitive(ann.at(0));
      for (auto c : nu)
        if (c != 0) {
          if (c < 0) nu = negate(nu);
          break;
        }
      normals.push_back(nu);
    }
    // next combination
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(normals.begin(), normals.end());
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
  auto sums = box_subset_sums(gens, d);
  for (auto& nu : normals) {
    WallFamily w;
    w.normal = nu;
    for (const auto& s : sums) w.offsets.emplace_back(static_cast<long>(dot(nu, s)));
    std::sort(w.offsets.begin(), w.offsets.end());
    w.offsets.erase(std::unique(w.offsets.begin(), w.offsets.end()), w.offsets.end());
    out.push_back(std::move(w));
  }
  return out;
}

// Weights of the rule integrating the degree-D interpolant through the nodes
// u_j = (j+1)/(D+2) over [0,1].
const std::vector<Rational>& interpolation_weights(std::size_t degree) {
  static const std::vector<std::vector<Rational>> table = [] {
    std::vector<std::vector<Rational>> t;
    for (std::size_t deg = 0; deg <= 24; ++deg) {
      const std::size_t m = deg + 1;
      Matrix a(m, RationalPoint(m));
      RationalPoint rhs(m);
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j < m; ++j) {
          Rational u(static_cast<long>(j + 1), static_cast<long>(deg + 2));
          Rational p = 1;
          for (std::size_t e = 0; e < k; ++e) p *= u;
          a[k][j] = p;
        }
        rhs[k] = ratio(1, static_cast<long>(k + 1));
      }
      t.push_back(solve_linear(a, rhs).particular);
    }
    return t;
  }();
  if (degree >= table.size())
    throw MathError(ErrorKind::kInvalidInput, "too many generators for exact fiber integration");
  return table[degree];
}

// One step of the fiber recursion: integrate over the parameter of `removed`
// the density of the remaining generators (the next level).
struct Level {
  std::vector<Generator> gens;
  std::size_t d = 0;
  bool base = false;
  // base case
  Matrix inverse;
  Rational inv_abs_det;
  // recursive case
  Generator removed;
  std::vector<WallFamily> rest_walls;
  std::vector<Rational> normal_dot_removed;
  std::size_t degree = 0;
};

std::vector<Level> build_levels(std::vector<Generator> gens, std::size_t d) {
  std::vector<Level> levels;
  while (true) {
    Level lv;
    lv.gens = gens;
    lv.d = d;
    if (gens.size() == d) {
      lv.base = true;
      std::vector<WeightVector> cols;
      for (const auto& g : gens) cols.push_back(g.v);
      Matrix b = columns_matrix(cols);
      Rational dt = det(b);
      lv.inv_abs_det = 1 / abs(dt);
      // inverse via solving against unit vectors
      lv.inverse.assign(d, RationalPoint(d));
      for (std::size_t j = 0; j < d; ++j) {
        RationalPoint e = zero_point(d);
        e[j] = 1;
        auto sol = solve_linear(b, e);
        for (std::size_t i = 0; i < d; ++i) lv.inverse[i][j] = sol.particular[i];
      }
      levels.push_back(std::move(lv));
      return levels;
    }
    // Remove a generator whose absence keeps full rank; boxes first (bounded
    // parameter range).
    std::size_t pick = gens.size();
    for (int pass = 0; pass < 2 && pick == gens.size(); ++pass) {
      for (std::size_t i = gens.size(); i-- > 0;) {
        if (gens[i].box != (pass == 0)) continue;
        std::vector<WeightVector> rest;
        for (std::size_t j = 0; j < gens.size(); ++j)
          if (j != i) rest.push_back(gens[j].v);
        if (rank(rest) == d) {
          pick = i;
          break;
        }
      }
    }
    lv.removed = gens[pick];
    std::vector<Generator> rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != pick) rest.push_back(gens[j]);
    lv.rest_walls = walls_of(rest, d);
    for (const auto& w : lv.rest_walls) lv.normal_dot_removed.emplace_back(static_cast<long>(dot(w.normal, lv.removed.v)));
    lv.degree = rest.size() - d;
    levels.push_back(std::move(lv));
    gens = std::move(rest);
  }
}

Rational fiber_density(const std::vector<Level>& levels, std::size_t at, const RationalPoint& y) {
  const Level& lv = levels[at];
  if (lv.base) {
    for (std::size_t i = 0; i < lv.d; ++i) {
      Rational t = 0;
      for (std::size_t j = 0; j < lv.d; ++j) t += lv.inverse[i][j] * y[j];
      if (t == 0 || (lv.gens[i].box && t == 1))
        throw MathError(ErrorKind::kNonGenericPoint, "point on the boundary of a simplicial piece");
      if (t < 0 || (lv.gens[i].box && t > 1)) return 0;
    }
    return lv.inv_abs_det;
  }
  const bool bounded = lv.removed.box;
  std::vector<Rational> cuts{Rational(0)};
  for (std::size_t w = 0; w < lv.rest_walls.size(); ++w) {
    const Rational& ng = lv.normal_dot_removed[w];
    if (ng == 0) continue;
    Rational ny = pair(lv.rest_walls[w].normal, y);
    for (const auto& off : lv.rest_walls[w].offsets) {
      Rational t = (ny - off) / ng;
      if (t > 0 && (!bounded || t < 1)) cuts.push_back(t);
    }
  }
  if (bounded) cuts.push_back(1);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto& weights = interpolation_weights(lv.degree);
  const std::size_t nodes = lv.degree + 1;
  auto sample = [&](const Rational& t) {
    RationalPoint z(y);
    for (std::size_t j = 0; j < lv.d; ++j) z[j] -= t * Rational(static_cast<long>(lv.removed.v[j]));
    return fiber_density(levels, at + 1, z);
  };
  Rational total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational a = cuts[i], h = cuts[i + 1] - cuts[i];
    Rational piece = 0;
    for (std::size_t j = 0; j < nodes; ++j) {
      Rational t = a + h * ratio(static_cast<long>(j + 1), static_cast<long>(lv.degree + 2));
      Rational f = sample(t);
      if (f != 0) piece += weights[j] * f;
    }
    total += h * piece;
  }
  if (!bounded) {
    // The tail beyond the last breakpoint is one polynomial piece; it must
    // vanish identically for the integral to converge.
    const Rational a = cuts.back();
    for (std::size_t j = 0; j < nodes; ++j)
      if (sample(a + Rational(static_cast<long>(j + 1))) != 0)
        throw MathError(ErrorKind::kImproperTerm, "density integral diverges along a ray");
  }
  return total;
}

struct PreparedTerm {
  Rational coefficient;
  std::size_t d = 0;
  std::vector<WeightVector> quotient;   // rows; identity when no lineality
  RationalPoint apex_q;
  bool singular = false;
  std::vector<WeightVector> hull_normals;
  bool improper = false;
  std::string improper_reason;
  std::vector<WallFamily> walls;        // relative coordinates
  std::vector<Level> levels;

  RationalPoint to_quotient(const RationalPoint& x) const {
    RationalPoint y;
    y.reserve(quotient.size());
    for (const auto& row : quotient) y.push_back(dot(row, x));
    return y;
  }
};

PreparedTerm prepare(const ConeTerm& term) {
  validate(term);
  PreparedTerm p;
  p.coefficient = term.coefficient;
  const std::size_t n = term.rank();
  if (term.lineality.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      WeightVector e(n, 0);
      e[i] = 1;
      p.quotient.push_back(e);
    }
  } else {
    p.quotient = integer_annihilator_basis(term.lineality, n);
  }
  p.d = p.quotient.size();
  auto project = [&](const WeightVector& g) {
    WeightVector q;
    for (const auto& row : p.quotient) q.push_back(dot(row, g));
    return q;
  };
  p.apex_q = p.to_quotient(term.apex);
  std::vector<Generator> gens;
  std::vector<WeightVector> ray_images;
  for (const auto& r : term.rays) {
    auto q = project(r);
    if (is_zero(q)) {
      p.improper = true;
      p.improper_reason = "ray " + to_string(r) + " lies in the lineality space";
    }
    gens.push_back({q, false});
    ray_images.push_back(q);
  }
  for (const auto& b : term.boxes) {
    auto q = project(b);
    if (!is_zero(q)) gens.push_back({q, true});
  }
  if (p.improper) return p;
  std::vector<WeightVector> vecs;
  for (const auto& g : gens) vecs.push_back(g.v);
  if (rank(vecs) < p.d) {
    p.singular = true;
    p.hull_normals = integer_annihilator_basis(vecs, p.d);
    return p;
  }
  if (!strict_halfspace(ray_images, p.d).feasible) {
    p.improper = true;
    p.improper_reason = "rays do not lie in an open half-space";
    return p;
  }
  p.walls = walls_of(gens, p.d);
  if (p.d > 0) p.levels = build_levels(gens, p.d);
  return p;
}

bool on_wall(const PreparedTerm& p, const RationalPoint& rel) {
  for (const auto& w : p.walls) {
    Rational v = pair(w.normal, rel);
    if (std::binary_search(w.offsets.begin(), w.offsets.end(), v)) return true;
  }
  return false;
}

Rational evaluate(const PreparedTerm& p, const RationalPoint& x) {
  if (p.coefficient == 0) return 0;
  if (p.improper) throw MathError(ErrorKind::kImproperTerm, p.improper_reason);
  RationalPoint rel = sub(p.to_quotient(x), p.apex_q);
  if (p.singular) {
    for (const auto& nu : p.hull_normals)
      if (pair(nu, rel) != 0) return 0;
    throw MathError(ErrorKind::kSingularTerm, "point lies on the support of a lower-dimensional term");
  }
  if (on_wall(p, rel)) throw MathError(ErrorKind::kNonGenericPoint, "point lies on a wall");
  if (p.d == 0) return p.coefficient;
  return p.coefficient * fiber_density(p.levels, 0, rel);
}

}  // namespace

struct DensityEvaluator::Impl {
  std::size_t rank = 0;
  std::vector<PreparedTerm> terms;
};

DensityEvaluator::DensityEvaluator(const SignedConeSum& sum) : impl_(new Impl) {
  impl_->rank = sum.rank();
  for (const auto& t : sum.terms()) impl_->terms.push_back(prepare(t));
}

DensityEvaluator::~DensityEvaluator() { delete impl_; }
DensityEvaluator::DensityEvaluator(DensityEvaluator&& o) noexcept : impl_(o.impl_) { o.impl_ = nullptr; }
DensityEvaluator& DensityEvaluator::operator=(DensityEvaluator&& o) noexcept {
  std::swap(impl_, o.impl_);
  return *this;
}

Rational DensityEvaluator::operator()(const RationalPoint& x) const {
  if (x.size() != impl_->rank) throw MathError(ErrorKind::kDimensionMismatch, "point length");
  Rational total = 0;
  for (const auto& p : impl_->terms) total += evaluate(p, x);
  return total;
}

bool DensityEvaluator::is_generic(const RationalPoint& x) const {
  try {
    (void)(*this)(x);
    return true;
  } catch (const MathError& e) {
    if (e.kind() == ErrorKind::kNonGenericPoint || e.kind() == ErrorKind::kSingularTerm) return false;
    throw;
  }
}

Rational density_at(const ConeTerm& term, const RationalPoint& x) {
  if (x.size() != term.rank()) throw MathError(ErrorKind::kDimensionMismatch, "point length");
  return evaluate(prepare(term), x);
}

Rational density_at(const SignedConeSum& sum, const RationalPoint& x) {
  return DensityEvaluator(sum)(x);
}

// ---------------------------------------------------------------------------

SignedConeSum difference(const SignedConeSum& sum, const WeightVector& lambda) {
  if (lambda.size() != sum.rank()) throw MathError(ErrorKind::kDimensionMismatch, "difference vector length");
  if (is_zero(lambda)) throw MathError(ErrorKind::kZeroVector, "differencing by the zero vector");
  SignedConeSum out(sum.rank());
  for (const auto& t : sum.terms()) {
    auto it = std::find(t.rays.begin(), t.rays.end(), lambda);
    if (it != t.rays.end()) {
      // cone(μ; R ∪ {λ}) - cone(μ - λ; R ∪ {λ}) = -box term starting at μ - λ.
      ConeTerm b = t;
      b.rays.erase(b.rays.begin() + (it - t.rays.begin()));
      b.boxes.push_back(lambda);
      b.apex = sub(t.apex, lambda);
      b.coefficient = -t.coefficient;
      out.add(std::move(b));
    } else {
      out.add(t);
      ConeTerm shifted = t;
      shifted.apex = sub(t.apex, lambda);
      shifted.coefficient = -t.coefficient;
      out.add(std::move(shifted));
    }
  }
  return out;
}

ProperVerdict is_proper(const SignedConeSum& sum, const std::vector<std::size_t>& kept_in,
                        const std::optional<WeightVector>& hint) {
  std::vector<std::size_t> kept = kept_in;
  if (kept.empty()) {
    kept.resize(sum.rank());
    std::iota(kept.begin(), kept.end(), 0);
  }
  for (auto k : kept)
    if (k >= sum.rank()) throw MathError(ErrorKind::kDimensionMismatch, "projection coordinate out of range");
  auto project = [&](const WeightVector& g) {
    WeightVector q;
    for (auto k : kept) q.push_back(g[k]);
    return q;
  };
  ProperVerdict v;
  for (const auto& t : sum.terms()) {
    if (t.coefficient == 0) continue;
    std::vector<WeightVector> lin;
    for (const auto& l : t.lineality) lin.push_back(project(l));
    if (rank(lin) != lin.size()) {
      v.proper = false;
      v.reason = "lineality collapses under the projection";
      return v;
    }
    for (const auto& r : t.rays) {
      auto q = project(r);
      if (std::find(v.generators.begin(), v.generators.end(), q) == v.generators.end())
        v.generators.push_back(q);
    }
  }
  auto res = strict_halfspace(v.generators, kept.size(), hint);
  v.proper = res.feasible;
  if (res.feasible) {
    v.witness = res.witness;
  } else {
    v.certificate = res.certificate;
    v.reason = "projected rays admit a nonnegative combination summing to zero";
  }
  return v;
}

SignedConeSum project_drop_last(const SignedConeSum& sum) {
  if (sum.rank() == 0) throw MathError(ErrorKind::kDimensionMismatch, "cannot project rank 0");
  const std::size_t m = sum.rank() - 1;
  auto drop = [&](const WeightVector& g) { return WeightVector(g.begin(), g.begin() + m); };
  if (m > 0) {
    std::vector<std::size_t> kept(m);
    std::iota(kept.begin(), kept.end(), 0);
    auto pv = is_proper(sum, kept);
    if (!pv.proper) throw MathError(ErrorKind::kImproperProjection, pv.reason);
  }
  SignedConeSum out(m);
  for (const auto& t : sum.terms()) {
    ConeTerm p;
    p.coefficient = t.coefficient;
    p.apex.assign(t.apex.begin(), t.apex.begin() + m);
    for (const auto& r : t.rays) {
      auto q = drop(r);
      if (is_zero(q))
        throw MathError(ErrorKind::kImproperProjection, "ray " + to_string(r) + " projects to zero");
      p.rays.push_back(q);
    }
    for (const auto& b : t.boxes) {
      auto q = drop(b);
      if (!is_zero(q)) p.boxes.push_back(q);
    }
    if (!t.lineality.empty()) {
      const std::size_t n = sum.rank();
      auto saturated = integer_annihilator_basis(integer_annihilator_basis(t.lineality, n), n);
      std::vector<WeightVector> image;
      for (const auto& l : saturated) image.push_back(drop(l));
      if (rank(image) != image.size())
        throw MathError(ErrorKind::kImproperProjection, "lineality collapses under the projection");
      p.coefficient /= Rational(lattice_index(image));
      p.lineality = image;
    }
    out.add(std::move(p));
  }
  return out;
}

FourierValue fourier_term(const ConeTerm& term, const RationalPoint& xi) {
  if (!term.lineality.empty())
    throw MathError(ErrorKind::kDistributionalTransform, "term has a lineality space");
  if (!term.boxes.empty())
    throw MathError(ErrorKind::kDistributionalTransform, "box factors are not a single exponential");
  FourierValue v;
  v.exponent = -dot(term.apex, xi);
  v.factor = term.coefficient;
  for (const auto& r : term.rays) {
    Rational p = dot(r, xi);
    if (p == 0)
      throw MathError(ErrorKind::kNonGenericDirection, "ray " + to_string(r) + " vanishes on xi");
    v.factor /= p;
  }
  return v;
}

void accumulate(ExpSum& into, const Rational& exponent, const Rational& factor) {
  if (factor == 0) return;
  auto [it, inserted] = into.emplace(exponent, factor);
  if (!inserted) {
    it->second += factor;
    if (it->second == 0) into.erase(it);
  }
}

ExpSum fourier_sum(const SignedConeSum& sum, const RationalPoint& xi) {
  ExpSum out;
  for (const auto& t : sum.terms()) {
    if (!t.lineality.empty())
      throw MathError(ErrorKind::kDistributionalTransform, "term has a lineality space");
    // [0,1]β = cone(β) - cone(β) shifted by β.
    const std::size_t nb = t.boxes.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << nb); ++mask) {
      ConeTerm r;
      r.coefficient = t.coefficient;
      r.apex = t.apex;
      r.rays = t.rays;
      for (std::size_t j = 0; j < nb; ++j) {
        r.rays.push_back(t.boxes[j]);
        if (mask & (std::size_t{1} << j)) {
          r.apex = add(r.apex, t.boxes[j]);
          r.coefficient = -r.coefficient;
        }
      }
      auto v = fourier_term(r, xi);
      accumulate(out, v.exponent, v.factor);
    }
  }
  return out;
}

bool is_pointed(const SignedConeSum& sum) {
  std::vector<WeightVector> rays;
  for (const auto& t : sum.terms()) {
    if (!t.lineality.empty()) return false;
    for (const auto& r : t.rays) rays.push_back(r);
  }
  return strict_halfspace(rays, sum.rank()).feasible;
}

void bounding_box(const std::vector<const SignedConeSum*>& sums, RationalPoint& lo, RationalPoint& hi) {
  std::size_t n = 0;
  for (auto* s : sums) n = std::max(n, s->rank());
  lo.assign(n, Rational(0));
  hi.assign(n, Rational(0));
  bool any = false;
  std::int64_t reach = 1;
  for (auto* s : sums)
    for (const auto& t : s->terms()) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!any || t.apex[i] < lo[i]) lo[i] = t.apex[i];
        if (!any || t.apex[i] > hi[i]) hi[i] = t.apex[i];
      }
      any = true;
      for (const auto* gens : {&t.rays, &t.boxes})
        for (const auto& g : *gens)
          for (auto c : g) reach = std::max<std::int64_t>(reach, std::abs(c));
    }
  Rational margin(2 * reach);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] -= margin;
    hi[i] += margin;
  }
}

RationalPoint draw_generic_point(GenericSampler& sampler,
                                 const std::vector<const DensityEvaluator*>& evaluators,
                                 const RationalPoint& lo, const RationalPoint& hi, int max_attempts) {
  for (int i = 0; i < max_attempts; ++i) {
    RationalPoint x = sampler.point_in_box(lo, hi);
    bool ok = true;
    for (auto* e : evaluators)
      if (!e->is_generic(x)) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  throw MathError(ErrorKind::kNonGenericPoint, "could not draw a generic sample point");
}

MeasureComparison measures_equal(const SignedConeSum& a, const SignedConeSum& b,
                                 const SampleOptions& options) {
  if (a.rank() != b.rank()) throw MathError(ErrorKind::kDimensionMismatch, "comparing sums of different rank");
  MeasureComparison cmp;
  DensityEvaluator ea(a), eb(b);
  RationalPoint lo, hi;
  bounding_box({&a, &b}, lo, hi);
  GenericSampler sampler(options.seed);
  // Half the samples near apexes, where the pieces are small.
  std::vector<RationalPoint> apexes;
  for (const auto* s : {&a, &b})
    for (const auto& t : s->terms()) apexes.push_back(t.apex);
  for (std::size_t i = 0; i < options.samples; ++i) {
    RationalPoint l = lo, h = hi;
    if (i % 2 == 1 && !apexes.empty()) {
      const auto& c = apexes[(i / 2) % apexes.size()];
      l = c;
      h = c;
      for (std::size_t j = 0; j < c.size(); ++j) {
        l[j] -= 1;
        h[j] += 1;
      }
    }
    RationalPoint x = draw_generic_point(sampler, {&ea, &eb}, l, h);
    Rational da = ea(x), db = eb(x);
    cmp.samples.push_back(x);
    if (da != db) {
      cmp.equal = false;
      cmp.counterexample = x;
      cmp.density_a = da;
      cmp.density_b = db;
      return cmp;
    }
  }
  if (is_pointed(a) && is_pointed(b)) {
    cmp.fourier_compared = true;
    std::vector<WeightVector> gens;
    for (const auto* s : {&a, &b})
      for (const auto& t : s->terms()) {
        gens.insert(gens.end(), t.rays.begin(), t.rays.end());
        gens.insert(gens.end(), t.boxes.begin(), t.boxes.end());
      }
    RationalPoint xlo(a.rank(), Rational(-3)), xhi(a.rank(), Rational(3));
    for (std::size_t k = 0; k < options.fourier_directions; ++k) {
      RationalPoint xi;
      for (int attempt = 0;; ++attempt) {
        xi = sampler.point_in_box(xlo, xhi);
        bool ok = true;
        for (const auto& g : gens)
          if (dot(g, xi) == 0) ok = false;
        if (ok) break;
        if (attempt > 1000) throw MathError(ErrorKind::kNonGenericDirection, "no generic xi found");
      }
      if (fourier_sum(a, xi) != fourier_sum(b, xi)) {
        cmp.equal = false;
        cmp.fourier_counterexample = xi;
        return cmp;
      }
    }
  }
  return cmp;
}

}  // namespace conecalc
