#pragma once

#include <optional>
#include <vector>

#include "conecalc/rational.hpp"

namespace conecalc {

// Outcome of asking for v with <v, g> > 0 for every generator g.
// Exactly one of witness / certificate is meaningful:
//  - feasible: witness is a primitive integer v;
//  - infeasible: certificate y >= 0, y != 0, with Σ y_i g_i = 0 (Gordan).
struct HalfSpaceResult {
  bool feasible = true;
  WeightVector witness;
  std::vector<Rational> certificate;  // indexed like the input generators
};

HalfSpaceResult strict_halfspace(const std::vector<WeightVector>& generators, std::size_t dim,
                                 const std::optional<WeightVector>& hint = std::nullopt);

// Independent checks used by callers and tests.
bool verify_witness(const std::vector<WeightVector>& generators, const WeightVector& v);
bool verify_certificate(const std::vector<WeightVector>& generators,
                        const std::vector<Rational>& y);

}  // namespace conecalc
