#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "conecalc/char_cycle.hpp"
#include "conecalc/cone.hpp"
#include "conecalc/localization.hpp"
#include "conecalc/toric.hpp"

namespace conecalc {

using Json = nlohmann::ordered_json;

struct ConstructibleInput {
  std::string label;
  std::vector<std::pair<std::vector<std::size_t>, Integer>> closures;   // face by vertex indices
};

struct TableInput {
  std::string stratum;
  int codim = 0;
  std::vector<std::string> contains;
  std::map<std::string, Polynomial> restrictions;   // by fixed-point label
};

struct Scenario {
  std::string name;
  std::string description;
  std::size_t rank = 0;
  std::optional<DelzantPolytope> polytope;
  std::vector<FixedPointDatum> fixed_points;
  std::optional<std::size_t> cycle_dimension;
  std::optional<WeightVector> direction_v;
  std::vector<WeightVector> alt_directions_v;
  std::vector<RationalPoint> directions_xi;
  std::optional<WeightVector> circle_s;
  std::vector<ConstructibleInput> constructible;
  std::vector<TableInput> cc_tables;
  Json params = Json::object();

  // Explicit fixed points, or the toric ones when only a polytope is given.
  std::vector<FixedPointDatum> data() const;
  // Number of rays per Heckman term: cycle_dimension, else inferred from the
  // first fixed point as #weights - deg(numerator).
  std::size_t heckman_dimension() const;
  bool has_param(const std::string& key) const { return params.contains(key); }
};

Scenario parse_scenario(const Json& j);
Scenario load_scenario(const std::string& path);
Json to_json(const Scenario& s);

Json to_json(const Rational& q);
Json to_json(const RationalPoint& p);
Json to_json(const Polynomial& p);
Json to_json(const ConeTerm& t);
Json to_json(const SignedConeSum& s);
Json to_json(const LaurentSeries& s);

Rational rational_from_json(const Json& j);
RationalPoint point_from_json(const Json& j);
WeightVector weight_from_json(const Json& j);
Polynomial polynomial_from_json(const Json& j, std::size_t nvars);
ConeTerm cone_from_json(const Json& j);

// Table built from the scenario's cc_tables, indexed by data().
CellClassTable table_from_scenario(const Scenario& s);
// Strata of the scenario's constructible list over its polytope.
std::vector<StratumClasses> constructible_strata(const Scenario& s);

// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string digest(const Json& j);

// name -> JSON text of the shipped scenarios.
const std::map<std::string, std::string>& builtin_scenarios();

}  // namespace conecalc
