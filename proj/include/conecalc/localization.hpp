#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conecalc/cone.hpp"
#include "conecalc/laurent.hpp"
#include "conecalc/polynomial.hpp"
#include "conecalc/rational.hpp"

namespace conecalc {

// One torus-fixed point: moment value, isotropy weights and the restriction
// [C]|_f as a polynomial in n weight variables plus ħ.
struct FixedPointDatum {
  std::string label;
  RationalPoint moment;
  std::vector<WeightVector> weights;
  Polynomial numerator;

  std::size_t rank() const { return moment.size(); }
};

// Π λ over the weights, in `nvars` variables.
Polynomial euler_product(const std::vector<WeightVector>& weights, std::size_t nvars);

// Datum for C = M: [M]|_f = 1.
FixedPointDatum full_datum(std::string label, RationalPoint moment, std::vector<WeightVector> weights);

void validate(const FixedPointDatum& datum);

struct DecompositionEntry {
  std::vector<std::size_t> subset;   // indices into the form list
  int sigma = 1;                     // Π_{λ∈S} sign<v, λ>
  Integer n;                         // n_S
};

// numerator = Σ n_S · σ_S · Π_{λ∉S} λ over the listed forms; zero entries
// omitted.
struct MultiplicityDecomposition {
  std::vector<WeightVector> forms;
  std::vector<DecompositionEntry> entries;
};

// Sub-multisets are tried in a deterministic order; when `pair_ids` is given,
// subsets containing two forms with the same id are placed last.
MultiplicityDecomposition decompose_over_forms(const Polynomial& numerator,
                                               const std::vector<WeightVector>& forms,
                                               std::size_t d, const WeightVector& v,
                                               const std::vector<int>* pair_ids = nullptr);

// The ħ-free case over the isotropy weights of a single fixed point.
MultiplicityDecomposition decompose_multiplicity(const FixedPointDatum& datum, std::size_t d,
                                                 const WeightVector& v);

// Recombines a decomposition; equals the numerator by construction.
Polynomial recombine(const MultiplicityDecomposition& dec, std::size_t nvars);

// Σ_f Σ_S n_{f,S} cone(Φ(f), S₊).
SignedConeSum cone_terms(const RationalPoint& apex, const MultiplicityDecomposition& dec,
                         const WeightVector& v);
SignedConeSum heckman_cone_sum(const std::vector<FixedPointDatum>& data, std::size_t d,
                               const WeightVector& v);

// Σ_f exp(-<Φ(f),ξ0> t) [C]|_f(ξ0 t) / Π <λ,ξ0> t, ħ set to 0.
LaurentSeries localization_series(const std::vector<FixedPointDatum>& data, const RationalPoint& xi0,
                                  int max_exponent = kDefaultTruncation);

// Same expansion of the Fourier transform of a cone sum (no lineality).
LaurentSeries cone_sum_series(const SignedConeSum& sum, const RationalPoint& xi0,
                              int max_exponent = kDefaultTruncation);

struct HolomorphyVerdict {
  bool passed = true;
  RationalPoint direction;   // first offending direction
  int exponent = 0;
  Rational value;
};
HolomorphyVerdict holomorphy_check(const std::vector<FixedPointDatum>& data,
                                   const std::vector<RationalPoint>& directions,
                                   int max_exponent = kDefaultTruncation);

struct MomentsVerdict {
  bool passed = true;
  LaurentSeries localization;
  LaurentSeries cones;
  int exponent = 0;          // first mismatch
};
MomentsVerdict moments_match(const std::vector<FixedPointDatum>& data, const SignedConeSum& sum,
                             const RationalPoint& xi0, int max_exponent = kDefaultTruncation);

// Coefficient of t^j in a series of a measure is (-1)^j M_j / j!, where
// M_j = ∫ <x, ξ0>^j. Returns M_j.
Rational moment_from_series(const LaurentSeries& series, int j);

}  // namespace conecalc
