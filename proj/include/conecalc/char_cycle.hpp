#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conecalc/cone.hpp"
#include "conecalc/localization.hpp"
#include "conecalc/polynomial.hpp"
#include "conecalc/toric.hpp"

namespace conecalc {

// Face index -> vertex of the face minimizing <s, ·>.
std::vector<std::size_t> bb_cells(const DelzantPolytope& p, const WeightVector& s);

// Number of weights with <s, λ> < 0: the complex codimension of the cell.
std::size_t cell_codim(const std::vector<WeightVector>& weights, const WeightVector& s);

enum class DiagonalConvention {
  kEulerClass,          // λ for <s,λ> < 0, ħ - λ for <s,λ> > 0
  kCaseStatement,  // the opposite assignment
};

Polynomial diagonal_restriction(const std::vector<WeightVector>& weights, const WeightVector& s,
                                DiagonalConvention convention = DiagonalConvention::kEulerClass);

// cc-class restrictions of one stratum, indexed like the table's points.
struct StratumClasses {
  std::string label;
  int codim = 0;
  std::vector<std::size_t> contains;       // fixed points lying in the stratum
  std::optional<std::size_t> bb_vertex;    // set for attracting cells
  std::vector<Polynomial> restrictions;
};

struct CellClassTable {
  std::vector<FixedPointDatum> points;     // numerators unused
  std::vector<StratumClasses> strata;
  std::optional<WeightVector> circle;

  std::size_t rank() const { return points.empty() ? 0 : points[0].rank(); }
  std::size_t dimension() const { return points.empty() ? 0 : points[0].weights.size(); }
};

// Stratum given by a combination of orbit-closure indicators.
StratumClasses constructible_stratum(const DelzantPolytope& p, std::string label,
                                     const ClosureCombination& closures);

// Attracting cells of every vertex; audited on construction (throws with the
// audit report).
CellClassTable cell_cc_table(const DelzantPolytope& p, const WeightVector& s);

// Homogeneity in degree dim M, Weber divisibility off the stratum, and the
// diagonal closed form on attracting cells. Empty when all hold.
std::vector<std::string> audit_table(const CellClassTable& table);

struct WeberOffender {
  std::string stratum;
  std::string point;
  Polynomial restriction;
};
struct WeberVerdict {
  bool passed = true;
  std::vector<WeberOffender> offenders;
};
WeberVerdict weber_check(const CellClassTable& table);

// (s, k) in rank n + 1.
WeightVector extended_direction(const WeightVector& s, std::int64_t k = 0);
// (s, K) with K > max |<s, λ>|, so every fibre form ħ - λ points to ħ > 0.
WeightVector upward_direction(const std::vector<FixedPointDatum>& points, const WeightVector& s);

// Cone sum in rank n + 1 whose transform is Σ_f exp(-Φ(f)) N_f / Π λ(ħ - λ),
// with λ ↦ (λ, 0) and ħ - λ ↦ (-λ, 1), flipped to `flip`.
SignedConeSum cotangent_cone_sum(const std::vector<FixedPointDatum>& points,
                                 const std::vector<Polynomial>& numerators, const WeightVector& flip);
SignedConeSum stratum_cone_sum(const CellClassTable& table, std::size_t stratum, const WeightVector& flip);

// (-1)^codim · project_drop_last(stratum_cone_sum(..., (s, 0))).
SignedConeSum projected_stratum(const CellClassTable& table, std::size_t stratum, const WeightVector& s);
// Σ over strata of projected_stratum.
SignedConeSum pipeline_sum(const CellClassTable& table, const WeightVector& s);

// (-1)^codim Σ_f exp(-<Φ(f),ξ>) N_f(ξ, 0) / Π <λ,ξ>(-<λ,ξ>).
ExpSum reduced_transform(const CellClassTable& table, std::size_t stratum, const RationalPoint& xi);
ExpSum reduced_transform(const std::vector<FixedPointDatum>& points, const std::vector<Polynomial>& numerators,
                         int codim, const RationalPoint& xi);
// exp(-<Φ(p),ξ>) / Π <λ,ξ>.
ExpSum heckman_transform(const FixedPointDatum& point, const RationalPoint& xi);
SignedConeSum heckman_term(const FixedPointDatum& point, const WeightVector& s);

struct MainTheoremOptions {
  std::size_t directions = 5;
  SampleOptions sampling;
};

struct MainTheoremVerdict {
  bool passed = false;
  bool identity = false;
  std::vector<RationalPoint> directions;
  std::optional<RationalPoint> counterexample;
  bool proper = false;
  ProperVerdict properness;
  bool projection_equal = false;
  MeasureComparison comparison;
  std::string detail;
};
MainTheoremVerdict main_theorem_check(const CellClassTable& table, std::size_t stratum,
                                      const MainTheoremOptions& options = {});

}  // namespace conecalc
