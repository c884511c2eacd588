#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conecalc/halfspace.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/sampler.hpp"

namespace conecalc {

// coefficient · π_*(Lebesgue on span(L) × R≥0^rays × [0,1]^boxes) with
// π(l, x, y) = apex + l + Σ x_i rays_i + Σ y_j boxes_j. The measure on span(L)
// is normalized so that span(L) ∩ Z^n has covolume 1.
struct ConeTerm {
  Rational coefficient = 1;
  RationalPoint apex;
  std::vector<WeightVector> lineality;
  std::vector<WeightVector> rays;
  std::vector<WeightVector> boxes;

  std::size_t rank() const { return apex.size(); }
  bool pointed_shape() const { return lineality.empty() && boxes.empty(); }
};

ConeTerm cone(const RationalPoint& apex, std::vector<WeightVector> rays,
              const Rational& coefficient = 1);

// Throws on zero generators, dependent lineality, or ragged lengths.
void validate(const ConeTerm& term);
std::string to_string(const ConeTerm& term);

// Signed sum of cone terms in a common ambient rank. Empty = zero measure.
class SignedConeSum {
 public:
  explicit SignedConeSum(std::size_t rank = 0) : rank_(rank) {}
  SignedConeSum(std::size_t rank, std::vector<ConeTerm> terms);

  std::size_t rank() const { return rank_; }
  const std::vector<ConeTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(ConeTerm term);
  void append(const SignedConeSum& other);

  SignedConeSum operator+(const SignedConeSum& o) const;
  SignedConeSum operator*(const Rational& s) const;

  // Sorts generators inside each term, merges terms of identical shape and
  // drops zero coefficients. Measures are unchanged.
  SignedConeSum simplified() const;

 private:
  std::size_t rank_;
  std::vector<ConeTerm> terms_;
};

// λ ↦ λ₊ = sign(<v,λ>) λ on every ray, with one factor -1 per flip.
SignedConeSum flip_to_direction(const SignedConeSum& sum, const WeightVector& v);

// Pointwise density w.r.t. Lebesgue measure on R^n, exact. Throws
// kNonGenericPoint on walls, kSingularTerm when x lies on the affine hull of a
// lower-dimensional term, kImproperTerm when a term has infinite density.
Rational density_at(const ConeTerm& term, const RationalPoint& x);
Rational density_at(const SignedConeSum& sum, const RationalPoint& x);

// Prepares every term once; use for many evaluations of the same sum.
class DensityEvaluator {
 public:
  explicit DensityEvaluator(const SignedConeSum& sum);
  ~DensityEvaluator();
  DensityEvaluator(DensityEvaluator&&) noexcept;
  DensityEvaluator& operator=(DensityEvaluator&&) noexcept;

  Rational operator()(const RationalPoint& x) const;
  // True when operator() would succeed at x.
  bool is_generic(const RationalPoint& x) const;

 private:
  struct Impl;
  Impl* impl_;
};

// Measure-level ∂_λ: (∂_λ f)(x) = f(x) - f(x + λ).
SignedConeSum difference(const SignedConeSum& sum, const WeightVector& lambda);

struct ProperVerdict {
  bool proper = true;
  WeightVector witness;                    // when proper
  std::vector<WeightVector> generators;    // distinct projected rays examined
  std::vector<Rational> certificate;       // when improper: y >= 0, Σ y_i g_i = 0
  std::string reason;
};

// Locally-finite test for the image of the sum under the coordinate
// projection keeping `kept` (all coordinates when empty).
ProperVerdict is_proper(const SignedConeSum& sum, const std::vector<std::size_t>& kept = {},
                        const std::optional<WeightVector>& hint = std::nullopt);

// Pushes forward along R^n -> R^(n-1) dropping the last coordinate.
SignedConeSum project_drop_last(const SignedConeSum& sum);

// exp(exponent) * factor.
struct FourierValue {
  Rational exponent;
  Rational factor;
};
// Exponential polynomial Σ factor · exp(exponent), keyed by exponent.
using ExpSum = std::map<Rational, Rational>;

// coefficient · exp(-<apex, xi>) / Π <ray, xi>. Pointed terms only.
FourierValue fourier_term(const ConeTerm& term, const RationalPoint& xi);
// Sum over terms; boxes are expanded as differences of rays.
ExpSum fourier_sum(const SignedConeSum& sum, const RationalPoint& xi);
void accumulate(ExpSum& into, const Rational& exponent, const Rational& factor);

// No lineality and all rays in a common open half-space.
bool is_pointed(const SignedConeSum& sum);

struct SampleOptions {
  std::size_t samples = 24;
  std::size_t fourier_directions = 3;
  std::uint64_t seed = kDefaultSeed;
};

struct MeasureComparison {
  bool equal = true;
  std::vector<RationalPoint> samples;
  std::optional<RationalPoint> counterexample;
  Rational density_a, density_b;           // at the counterexample
  bool fourier_compared = false;
  std::optional<RationalPoint> fourier_counterexample;
};

// Sound refutation, sampled confirmation: exact densities at generic sample
// points, plus exact Fourier comparisons when both sides are pointed.
MeasureComparison measures_equal(const SignedConeSum& a, const SignedConeSum& b,
                                 const SampleOptions& options = {});

// Box covering every apex plus a margin proportional to the generators.
void bounding_box(const std::vector<const SignedConeSum*>& sums, RationalPoint& lo,
                  RationalPoint& hi);

// Draws a point in [lo, hi] at which every evaluator is generic.
RationalPoint draw_generic_point(GenericSampler& sampler,
                                 const std::vector<const DensityEvaluator*>& evaluators,
                                 const RationalPoint& lo, const RationalPoint& hi,
                                 int max_attempts = 1000);

}  // namespace conecalc
