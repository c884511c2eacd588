#pragma once

#include <map>
#include <optional>
#include <vector>

#include "conecalc/cone.hpp"
#include "conecalc/localization.hpp"
#include "conecalc/polynomial.hpp"

namespace conecalc {

// <a, x> >= b with primitive integer a.
struct Facet {
  WeightVector a;
  Rational b;
};

struct Edge {
  WeightVector direction;     // primitive, pointing out of the vertex
  std::size_t neighbor = 0;   // vertex at the other end
};

struct Face {
  std::size_t dim = 0;
  std::vector<std::size_t> vertices;   // sorted vertex indices
  std::vector<std::size_t> facets;     // facets containing the face
};

// Full-dimensional simple lattice polytope with unimodular vertex cones.
class DelzantPolytope {
 public:
  // Validates that both descriptions agree, and simplicity and smoothness.
  DelzantPolytope(std::vector<RationalPoint> vertices, std::vector<Facet> facets);
  // Vertices enumerated from the inequalities.
  static DelzantPolytope from_facets(std::vector<Facet> facets, std::size_t rank);

  std::size_t rank() const { return rank_; }
  const std::vector<RationalPoint>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Edge>& edges(std::size_t vertex) const { return edges_.at(vertex); }
  // Faces sorted by decreasing dimension; faces()[0] is P.
  const std::vector<Face>& faces() const { return faces_; }

  std::optional<std::size_t> find_face(const std::vector<std::size_t>& vertices) const;
  std::size_t vertex_face(std::size_t vertex) const;
  bool contains(const Face& f, std::size_t vertex) const;
  // Is the edge from `vertex` along `e` inside face f?
  bool edge_along(const Face& f, std::size_t vertex, const Edge& e) const;
  // Faces G ⊆ F.
  std::vector<std::size_t> subfaces(std::size_t face) const;

 private:
  std::size_t rank_ = 0;
  std::vector<RationalPoint> vertices_;
  std::vector<Facet> facets_;
  std::vector<std::vector<std::size_t>> tight_;   // per vertex, sorted facet indices
  std::vector<std::vector<Edge>> edges_;
  std::vector<Face> faces_;
};

const std::vector<Face>& face_lattice(const DelzantPolytope& p);

// Data attached to a face for a chosen vertex.
struct FaceDatum {
  std::size_t face = 0;
  std::size_t vertex = 0;
  RationalPoint apex;                  // barycenter of the face's vertices
  std::vector<WeightVector> tangent;   // edges at the vertex along the face
  std::vector<WeightVector> outward;   // W: edges at the vertex leaving the face
};
FaceDatum face_datum(const DelzantPolytope& p, std::size_t face, std::optional<std::size_t> vertex = std::nullopt);

std::vector<FixedPointDatum> toric_fixed_data(const DelzantPolytope& p);
std::string vertex_label(const DelzantPolytope& p, std::size_t vertex);

// Σ_F (-1)^{codim F} Lebesgue(T_μF) × cone(μ_F; -W). `vertex_choice` maps face
// index to the vertex used for it; default is the smallest index.
SignedConeSum brianchon_gram_sum(const DelzantPolytope& p,
                                 const std::map<std::size_t, std::size_t>& vertex_choice = {});
// The same construction for the reversed symplectic form: apexes -μ_F, rays -W.
SignedConeSum brianchon_gram_inward(const DelzantPolytope& p);

// Restriction of the conormal class of the orbit closure of F at vertex f,
// in n + 1 variables.
Polynomial orbit_conormal_class(const DelzantPolytope& p, std::size_t face, std::size_t vertex);

// Closure indicators 1_{F̄} as (face, coefficient) pairs.
using ClosureCombination = std::vector<std::pair<std::size_t, Integer>>;

// 1_{O_E°} = Σ_{F⊆E} (-1)^{dim E - dim F} 1_{F̄}.
ClosureCombination open_orbit_indicator(const DelzantPolytope& p, std::size_t face);

// csm(Σ c_F 1_{F̄}) restricted to every vertex.
std::vector<Polynomial> csm_of_constructible(const DelzantPolytope& p, const ClosureCombination& coeffs);

struct LatticeCount {
  unsigned d = 1;
  Integer count;
  Rational scaled;   // count / d^n
  Rational volume;
  Rational error;    // |scaled - volume|
};
LatticeCount lattice_count(const DelzantPolytope& p, unsigned d);

// ∫_P <x, ξ>^j dx for j = 0..k.
std::vector<Rational> polytope_moments(const DelzantPolytope& p, const RationalPoint& xi, int k);
Rational polytope_volume(const DelzantPolytope& p);

// Strict membership: every inequality holds strictly / some fails strictly.
bool strictly_inside(const DelzantPolytope& p, const RationalPoint& x);
bool strictly_outside(const DelzantPolytope& p, const RationalPoint& x);

struct IndicatorCheck {
  bool passed = true;
  std::vector<RationalPoint> interior, exterior;
  std::optional<RationalPoint> counterexample;
  Rational expected, actual;
};
// Density of `sum` is `value` at `count` generic interior points of P (of -P
// when `reflected`) and 0 at `count` generic exterior points near it.
IndicatorCheck matches_indicator(const SignedConeSum& sum, const DelzantPolytope& p, const Rational& value,
                                 std::uint64_t seed, std::size_t count = 10, bool reflected = false);

}  // namespace conecalc
