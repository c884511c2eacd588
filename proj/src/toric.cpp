#include "conecalc/toric.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "conecalc/errors.hpp"
#include "conecalc/linalg.hpp"

namespace conecalc {

namespace {

std::vector<std::size_t> tight_facets(const std::vector<Facet>& facets, const RationalPoint& x) {
  std::vector<std::size_t> t;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    Rational v = dot(facets[i].a, x);
    if (v < facets[i].b)
      throw MathError(ErrorKind::kInvalidPolytope, "vertex " + to_string(x) + " violates facet " + std::to_string(i));
    if (v == facets[i].b) t.push_back(i);
  }
  return t;
}

bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void for_each_subset(std::size_t m, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<RationalPoint> enumerate_vertices(const std::vector<Facet>& facets, std::size_t n) {
  std::set<RationalPoint> found;
  for_each_subset(facets.size(), n, [&](const std::vector<std::size_t>& s) {
    std::vector<WeightVector> rows;
    RationalPoint rhs;
    for (auto i : s) {
      rows.push_back(facets[i].a);
      rhs.push_back(facets[i].b);
    }
    auto sol = solve_linear(to_matrix(rows), rhs);
    if (sol.kind != LinearSolution::Kind::kUnique) return;
    for (const auto& f : facets)
      if (dot(f.a, sol.particular) < f.b) return;
    found.insert(sol.particular);
  });
  return {found.begin(), found.end()};
}

}  // namespace

DelzantPolytope::DelzantPolytope(std::vector<RationalPoint> vertices, std::vector<Facet> facets)
    : vertices_(std::move(vertices)), facets_(std::move(facets)) {
  if (vertices_.empty() || facets_.empty())
    throw MathError(ErrorKind::kInvalidPolytope, "polytope needs vertices and facets");
  rank_ = vertices_[0].size();
  if (rank_ == 0) throw MathError(ErrorKind::kInvalidPolytope, "rank 0 polytope");
  for (const auto& f : facets_) {
    if (f.a.size() != rank_) throw MathError(ErrorKind::kDimensionMismatch, "facet normal length");
    if (is_zero(f.a) || primitive(f.a) != f.a)
      throw MathError(ErrorKind::kInvalidPolytope, "facet normal " + to_string(f.a) + " is not primitive");
  }
  for (const auto& v : vertices_) {
    if (v.size() != rank_) throw MathError(ErrorKind::kDimensionMismatch, "vertex length");
    for (const auto& c : v)
      if (!is_integer(c)) throw MathError(ErrorKind::kInvalidPolytope, "vertex " + to_string(v) + " is not a lattice point");
  }
  {
    std::set<RationalPoint> given(vertices_.begin(), vertices_.end());
    if (given.size() != vertices_.size()) throw MathError(ErrorKind::kInvalidPolytope, "repeated vertex");
    auto computed = enumerate_vertices(facets_, rank_);
    if (std::set<RationalPoint>(computed.begin(), computed.end()) != given)
      throw MathError(ErrorKind::kInvalidPolytope, "vertices and facet inequalities describe different polytopes");
  }
  for (const auto& v : vertices_) {
    auto t = tight_facets(facets_, v);
    if (t.size() != rank_)
      throw MathError(ErrorKind::kInvalidPolytope, "vertex " + to_string(v) + " is not simple");
    tight_.push_back(t);
  }
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    bool used = false;
    for (const auto& t : tight_) used = used || std::binary_search(t.begin(), t.end(), i);
    if (!used) throw MathError(ErrorKind::kInvalidPolytope, "facet " + std::to_string(i) + " is redundant");
  }

  for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
    std::vector<Edge> es;
    const auto& t = tight_[vi];
    for (std::size_t k = 0; k < t.size(); ++k) {
      std::vector<std::size_t> keep;
      std::vector<WeightVector> rows;
      for (std::size_t j = 0; j < t.size(); ++j)
        if (j != k) {
          keep.push_back(t[j]);
          rows.push_back(facets_[t[j]].a);
        }
      auto ann = integer_annihilator_basis(rows, rank_);
      if (ann.size() != 1) throw MathError(ErrorKind::kInvalidPolytope, "degenerate vertex cone");
      WeightVector dir = primitive(ann[0]);
      if (dot(facets_[t[k]].a, dir) < 0) dir = negate(dir);
      Edge e;
      e.direction = dir;
      bool found = false;
      for (std::size_t wi = 0; wi < vertices_.size() && !found; ++wi) {
        if (wi == vi || !subset_of(keep, tight_[wi])) continue;
        e.neighbor = wi;
        found = true;
      }
      if (!found) throw MathError(ErrorKind::kInvalidPolytope, "unbounded edge at " + to_string(vertices_[vi]));
      es.push_back(e);
    }
    std::vector<WeightVector> dirs;
    for (const auto& e : es) dirs.push_back(e.direction);
    if (abs(det(columns_matrix(dirs))) != 1)
      throw MathError(ErrorKind::kInvalidPolytope,
                      "vertex " + to_string(vertices_[vi]) + " is not smooth (edge determinant != ±1)");
    edges_.push_back(std::move(es));
  }

  std::set<std::vector<std::size_t>> seen;
  for (std::size_t vi = 0; vi < vertices_.size(); ++vi) {
    const auto& t = tight_[vi];
    for (std::size_t mask = 0; mask < (std::size_t{1} << t.size()); ++mask) {
      std::vector<std::size_t> sel;
      for (std::size_t j = 0; j < t.size(); ++j)
        if (mask & (std::size_t{1} << j)) sel.push_back(t[j]);
      Face f;
      for (std::size_t wi = 0; wi < vertices_.size(); ++wi)
        if (subset_of(sel, tight_[wi])) f.vertices.push_back(wi);
      if (!seen.insert(f.vertices).second) continue;
      f.dim = rank_ - sel.size();
      f.facets = sel;
      faces_.push_back(std::move(f));
    }
  }
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.vertices < b.vertices;
  });
}

DelzantPolytope DelzantPolytope::from_facets(std::vector<Facet> facets, std::size_t rank) {
  auto v = enumerate_vertices(facets, rank);
  return DelzantPolytope(std::move(v), std::move(facets));
}

std::optional<std::size_t> DelzantPolytope::find_face(const std::vector<std::size_t>& vertices) const {
  auto key = vertices;
  std::sort(key.begin(), key.end());
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].vertices == key) return i;
  return std::nullopt;
}

std::size_t DelzantPolytope::vertex_face(std::size_t vertex) const { return *find_face({vertex}); }

bool DelzantPolytope::contains(const Face& f, std::size_t vertex) const {
  return std::binary_search(f.vertices.begin(), f.vertices.end(), vertex);
}

bool DelzantPolytope::edge_along(const Face& f, std::size_t vertex, const Edge& e) const {
  return contains(f, vertex) && contains(f, e.neighbor);
}

std::vector<std::size_t> DelzantPolytope::subfaces(std::size_t face) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (subset_of(faces_[i].vertices, faces_[face].vertices)) out.push_back(i);
  return out;
}

const std::vector<Face>& face_lattice(const DelzantPolytope& p) { return p.faces(); }

FaceDatum face_datum(const DelzantPolytope& p, std::size_t face, std::optional<std::size_t> vertex) {
  const Face& f = p.faces().at(face);
  FaceDatum d;
  d.face = face;
  d.vertex = vertex.value_or(f.vertices.front());
  if (!p.contains(f, d.vertex)) throw MathError(ErrorKind::kInvalidInput, "chosen vertex is not on the face");
  d.apex = zero_point(p.rank());
  for (auto v : f.vertices) d.apex = add(d.apex, p.vertices()[v]);
  d.apex = scale(d.apex, ratio(1, static_cast<long>(f.vertices.size())));
  for (const auto& e : p.edges(d.vertex)) {
    if (p.edge_along(f, d.vertex, e))
      d.tangent.push_back(e.direction);
    else
      d.outward.push_back(e.direction);
  }
  return d;
}

std::string vertex_label(const DelzantPolytope& p, std::size_t vertex) {
  return to_string(p.vertices().at(vertex));
}

std::vector<FixedPointDatum> toric_fixed_data(const DelzantPolytope& p) {
  std::vector<FixedPointDatum> out;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    std::vector<WeightVector> w;
    for (const auto& e : p.edges(v)) w.push_back(e.direction);
    out.push_back(full_datum(vertex_label(p, v), p.vertices()[v], w));
  }
  return out;
}

namespace {

SignedConeSum bg_sum(const DelzantPolytope& p, const std::map<std::size_t, std::size_t>& choice, bool inward) {
  SignedConeSum out(p.rank());
  for (std::size_t fi = 0; fi < p.faces().size(); ++fi) {
    std::optional<std::size_t> v;
    if (auto it = choice.find(fi); it != choice.end()) v = it->second;
    FaceDatum d = face_datum(p, fi, v);
    ConeTerm t;
    t.coefficient = ((p.rank() - p.faces()[fi].dim) % 2 == 0) ? 1 : -1;
    t.apex = inward ? scale(d.apex, Rational(-1)) : d.apex;
    t.lineality = d.tangent;
    for (const auto& w : d.outward) t.rays.push_back(negate(w));
    out.add(std::move(t));
  }
  return out;
}

}  // namespace

SignedConeSum brianchon_gram_sum(const DelzantPolytope& p, const std::map<std::size_t, std::size_t>& vertex_choice) {
  return bg_sum(p, vertex_choice, false);
}

SignedConeSum brianchon_gram_inward(const DelzantPolytope& p) { return bg_sum(p, {}, true); }

Polynomial orbit_conormal_class(const DelzantPolytope& p, std::size_t face, std::size_t vertex) {
  const std::size_t nvars = p.rank() + 1;
  const Face& f = p.faces().at(face);
  if (!p.contains(f, vertex)) return Polynomial(nvars);
  Polynomial out = Polynomial::constant(nvars, 1);
  const Polynomial h = Polynomial::hbar(nvars);
  for (const auto& e : p.edges(vertex)) {
    Polynomial l = Polynomial::linear_form(e.direction, nvars);
    out *= p.edge_along(f, vertex, e) ? h - l : l;
  }
  return out;
}

ClosureCombination open_orbit_indicator(const DelzantPolytope& p, std::size_t face) {
  ClosureCombination out;
  const std::size_t de = p.faces().at(face).dim;
  for (auto g : p.subfaces(face)) {
    const std::size_t dg = p.faces()[g].dim;
    out.emplace_back(g, Integer(((de - dg) % 2 == 0) ? 1 : -1));
  }
  return out;
}

std::vector<Polynomial> csm_of_constructible(const DelzantPolytope& p, const ClosureCombination& coeffs) {
  std::vector<Polynomial> out(p.vertices().size(), Polynomial(p.rank() + 1));
  for (const auto& [face, c] : coeffs) {
    if (face >= p.faces().size()) throw MathError(ErrorKind::kInvalidInput, "face index out of range");
    const std::size_t codim = p.rank() - p.faces()[face].dim;
    Rational sc(codim % 2 == 0 ? c : Integer(-c));
    for (std::size_t v = 0; v < out.size(); ++v) out[v] += orbit_conormal_class(p, face, v) * sc;
  }
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> triangulate(const DelzantPolytope& p, std::size_t face) {
  const Face& f = p.faces()[face];
  if (f.dim == 0) return {{f.vertices[0]}};
  const std::size_t apex = f.vertices.front();
  std::vector<std::vector<std::size_t>> out;
  for (auto g : p.subfaces(face)) {
    const Face& gf = p.faces()[g];
    if (gf.dim + 1 != f.dim || p.contains(gf, apex)) continue;
    for (auto s : triangulate(p, g)) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

std::vector<Rational> polytope_moments(const DelzantPolytope& p, const RationalPoint& xi, int k) {
  if (xi.size() != p.rank()) throw MathError(ErrorKind::kDimensionMismatch, "xi length");
  const std::size_t n = p.rank();
  std::vector<Rational> out(k + 1, Rational(0));
  for (const auto& simplex : triangulate(p, 0)) {
    Matrix m;
    for (std::size_t i = 1; i < simplex.size(); ++i)
      m.push_back(sub(p.vertices()[simplex[i]], p.vertices()[simplex[0]]));
    Rational vol = abs(det(m)) / Rational(factorial(n));
    // complete homogeneous symmetric polynomials of the vertex values
    std::vector<Rational> h(k + 1, Rational(0));
    h[0] = 1;
    for (auto vi : simplex) {
      Rational x = dot(p.vertices()[vi], xi);
      for (int j = 1; j <= k; ++j) h[j] += x * h[j - 1];
    }
    for (int j = 0; j <= k; ++j)
      out[j] += vol * Rational(factorial(j) * factorial(n)) / Rational(factorial(j + n)) * h[j];
  }
  return out;
}

Rational polytope_volume(const DelzantPolytope& p) {
  return polytope_moments(p, zero_point(p.rank()), 0)[0];
}

LatticeCount lattice_count(const DelzantPolytope& p, unsigned d) {
  if (d == 0) throw MathError(ErrorKind::kInvalidInput, "dilation must be at least 1");
  const std::size_t n = p.rank();
  std::vector<Integer> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
      Integer c = p.vertices()[v][i].get_num() * d;   // lattice vertices
      if (v == 0 || c < lo[i]) lo[i] = c;
      if (v == 0 || c > hi[i]) hi[i] = c;
    }
  }
  LatticeCount r;
  r.d = d;
  r.count = 0;
  std::vector<Integer> x = lo;
  while (true) {
    bool inside = true;
    for (const auto& f : p.facets()) {
      Integer s = 0;
      for (std::size_t i = 0; i < n; ++i) s += Integer(static_cast<long>(f.a[i])) * x[i];
      if (Rational(s) < f.b * d) {
        inside = false;
        break;
      }
    }
    if (inside) ++r.count;
    std::size_t i = 0;
    while (i < n && x[i] == hi[i]) {
      x[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++x[i];
  }
  Integer dn = 1;
  for (std::size_t i = 0; i < n; ++i) dn *= d;
  r.scaled = Rational(r.count) / Rational(dn);
  r.scaled.canonicalize();
  r.volume = polytope_volume(p);
  r.error = abs(r.scaled - r.volume);
  return r;
}

}  // namespace conecalc

namespace conecalc {

bool strictly_inside(const DelzantPolytope& p, const RationalPoint& x) {
  for (const auto& f : p.facets())
    if (!(dot(f.a, x) > f.b)) return false;
  return true;
}

bool strictly_outside(const DelzantPolytope& p, const RationalPoint& x) {
  for (const auto& f : p.facets())
    if (dot(f.a, x) < f.b) return true;
  return false;
}

IndicatorCheck matches_indicator(const SignedConeSum& sum, const DelzantPolytope& p, const Rational& value,
                                 std::uint64_t seed, std::size_t count, bool reflected) {
  IndicatorCheck r;
  DensityEvaluator eval(sum);
  GenericSampler sampler(seed);
  const std::size_t n = p.rank();
  RationalPoint lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
      Rational c = p.vertices()[v][i];
      if (reflected) c = -c;
      if (v == 0 || c < lo[i]) lo[i] = c;
      if (v == 0 || c > hi[i]) hi[i] = c;
    }
  RationalPoint olo = lo, ohi = hi;
  for (std::size_t i = 0; i < n; ++i) {
    olo[i] -= 1;
    ohi[i] += 1;
  }
  auto check = [&](const RationalPoint& x, const Rational& expected) {
    Rational got = eval(x);
    if (got != expected && r.passed) {
      r.passed = false;
      r.counterexample = x;
      r.expected = expected;
      r.actual = got;
    }
  };
  for (int attempt = 0; attempt < 200000 && r.interior.size() < count; ++attempt) {
    RationalPoint x = sampler.point_in_box(lo, hi);
    RationalPoint y = reflected ? scale(x, Rational(-1)) : x;
    if (!strictly_inside(p, y) || !eval.is_generic(x)) continue;
    r.interior.push_back(x);
    check(x, value);
  }
  for (int attempt = 0; attempt < 200000 && r.exterior.size() < count; ++attempt) {
    RationalPoint x = sampler.point_in_box(olo, ohi);
    RationalPoint y = reflected ? scale(x, Rational(-1)) : x;
    if (!strictly_outside(p, y) || !eval.is_generic(x)) continue;
    r.exterior.push_back(x);
    check(x, Rational(0));
  }
  if (r.interior.size() < count || r.exterior.size() < count) r.passed = false;
  return r;
}

}  // namespace conecalc
