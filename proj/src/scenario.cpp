#include "conecalc/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "conecalc/errors.hpp"

namespace conecalc {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::vector<WeightVector> weights_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a list of integer vectors");
  std::vector<WeightVector> out;
  for (const auto& w : j) out.push_back(weight_from_json(w));
  return out;
}

Json weights_to_json(const std::vector<WeightVector>& ws) {
  Json a = Json::array();
  for (const auto& w : ws) a.push_back(w);
  return a;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

RationalPoint point_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a point, got " + j.dump());
  RationalPoint p;
  for (const auto& c : j) p.push_back(rational_from_json(c));
  return p;
}

WeightVector weight_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an integer vector, got " + j.dump());
  WeightVector w;
  for (const auto& c : j) {
    if (!c.is_number_integer()) throw InputError("expected an integer vector, got " + j.dump());
    w.push_back(c.get<std::int64_t>());
  }
  return w;
}

Polynomial polynomial_from_json(const Json& j, std::size_t nvars) {
  if (!j.is_array()) throw InputError("polynomial must be a list of {coeff, exponents}");
  Polynomial p(nvars);
  for (const auto& t : j) {
    Rational c = rational_from_json(require(t, "coeff", "polynomial term"));
    const auto& e = require(t, "exponents", "polynomial term");
    if (!e.is_array() || e.size() != nvars)
      throw InputError("polynomial exponents must have " + std::to_string(nvars) + " entries (weights, then h)");
    Polynomial::Exponents ex;
    for (const auto& x : e) {
      if (!x.is_number_integer() || x.get<int>() < 0) throw InputError("exponents must be non-negative integers");
      ex.push_back(x.get<int>());
    }
    p.add_term(ex, c);
  }
  return p;
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RationalPoint& p) {
  Json a = Json::array();
  for (const auto& c : p) a.push_back(to_string(c));
  return a;
}

Json to_json(const Polynomial& p) {
  Json a = Json::array();
  for (const auto& [e, c] : p.terms()) a.push_back(Json{{"coeff", to_string(c)}, {"exponents", e}});
  return a;
}

Json to_json(const ConeTerm& t) {
  return Json{{"coeff", to_string(t.coefficient)},
              {"apex", to_json(t.apex)},
              {"lineality", weights_to_json(t.lineality)},
              {"rays", weights_to_json(t.rays)},
              {"boxes", weights_to_json(t.boxes)}};
}

Json to_json(const SignedConeSum& s) {
  Json a = Json::array();
  for (const auto& t : s.terms()) a.push_back(to_json(t));
  return a;
}

Json to_json(const LaurentSeries& s) {
  Json o = Json::object();
  for (int e = s.order(); e <= s.max_exponent(); ++e) {
    Rational c = s.coefficient(e);
    if (c != 0) o["t^" + std::to_string(e)] = to_string(c);
  }
  return o;
}

ConeTerm cone_from_json(const Json& j) {
  ConeTerm t;
  t.coefficient = j.contains("coeff") ? rational_from_json(j.at("coeff")) : Rational(1);
  t.apex = point_from_json(require(j, "apex", "cone term"));
  if (j.contains("lineality")) t.lineality = weights_from_json(j.at("lineality"));
  if (j.contains("rays")) t.rays = weights_from_json(j.at("rays"));
  if (j.contains("boxes")) t.boxes = weights_from_json(j.at("boxes"));
  return t;
}

Scenario parse_scenario(const Json& j) {
  if (!j.is_object()) throw InputError("scenario must be a JSON object");
  Scenario s;
  s.name = require(j, "name", "scenario").get<std::string>();
  const std::string where = "scenario " + s.name;
  static const std::set<std::string> known{"name",           "description", "rank",          "polytope",
                                           "fixed_points",   "cycle_dimension", "direction_v", "alt_directions_v",
                                           "directions_xi",  "circle_s",    "constructible", "cc_tables",
                                           "params"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw InputError(where + ": unknown field '" + key + "'");
  if (j.contains("description")) s.description = j.at("description").get<std::string>();
  const auto& rank = require(j, "rank", where);
  if (!rank.is_number_unsigned() || rank.get<std::size_t>() == 0) throw InputError(where + ": rank must be positive");
  s.rank = rank.get<std::size_t>();
  const std::size_t n = s.rank;
  auto check_len = [&](std::size_t len, const std::string& what) {
    if (len != n) throw InputError(where + ": " + what + " has length " + std::to_string(len) + ", rank is " + std::to_string(n));
  };

  if (j.contains("polytope")) {
    const auto& pj = j.at("polytope");
    std::vector<RationalPoint> verts;
    for (const auto& v : require(pj, "vertices", where + " polytope")) {
      verts.push_back(point_from_json(v));
      check_len(verts.back().size(), "polytope vertex");
    }
    std::vector<Facet> facets;
    for (const auto& f : require(pj, "facets", where + " polytope")) {
      Facet fc{weight_from_json(require(f, "a", "facet")), rational_from_json(require(f, "b", "facet"))};
      check_len(fc.a.size(), "facet normal");
      facets.push_back(fc);
    }
    try {
      s.polytope.emplace(std::move(verts), std::move(facets));
    } catch (const MathError& e) {
      throw InputError(where + ": invalid polytope: " + e.what());
    }
  }
  if (j.contains("fixed_points")) {
    std::set<std::string> labels;
    for (const auto& f : j.at("fixed_points")) {
      FixedPointDatum d;
      d.label = require(f, "label", "fixed point").get<std::string>();
      if (!labels.insert(d.label).second) throw InputError(where + ": duplicate fixed point " + d.label);
      d.moment = point_from_json(require(f, "moment", "fixed point " + d.label));
      check_len(d.moment.size(), "moment of " + d.label);
      d.weights = weights_from_json(require(f, "weights", "fixed point " + d.label));
      for (const auto& w : d.weights) {
        check_len(w.size(), "weight at " + d.label);
        if (is_zero(w)) throw InputError(where + ": zero weight at " + d.label);
      }
      d.numerator = f.contains("numerator") ? polynomial_from_json(f.at("numerator"), n + 1)
                                            : Polynomial::constant(n + 1, 1);
      s.fixed_points.push_back(std::move(d));
    }
  }
  if (j.contains("cycle_dimension")) s.cycle_dimension = j.at("cycle_dimension").get<std::size_t>();
  if (j.contains("direction_v")) {
    s.direction_v = weight_from_json(j.at("direction_v"));
    check_len(s.direction_v->size(), "direction_v");
  }
  if (j.contains("alt_directions_v"))
    for (const auto& v : j.at("alt_directions_v")) {
      s.alt_directions_v.push_back(weight_from_json(v));
      check_len(s.alt_directions_v.back().size(), "alt_directions_v entry");
    }
  if (j.contains("directions_xi"))
    for (const auto& x : j.at("directions_xi")) {
      s.directions_xi.push_back(point_from_json(x));
      check_len(s.directions_xi.back().size(), "directions_xi entry");
    }
  if (j.contains("circle_s")) {
    s.circle_s = weight_from_json(j.at("circle_s"));
    check_len(s.circle_s->size(), "circle_s");
  }
  if (j.contains("constructible")) {
    if (!s.polytope) throw InputError(where + ": constructible strata need a polytope");
    for (const auto& c : j.at("constructible")) {
      ConstructibleInput ci;
      ci.label = require(c, "label", "constructible stratum").get<std::string>();
      for (const auto& cl : require(c, "closures", "stratum " + ci.label)) {
        std::vector<std::size_t> face;
        for (const auto& v : require(cl, "face", "closure")) face.push_back(v.get<std::size_t>());
        if (!s.polytope->find_face(face))
          throw InputError(where + ": stratum " + ci.label + " names a vertex set that is not a face");
        ci.closures.emplace_back(face, Integer(require(cl, "coeff", "closure").get<long>()));
      }
      s.constructible.push_back(std::move(ci));
    }
  }
  if (j.contains("cc_tables")) {
    std::set<std::string> labels;
    for (const auto& f : s.data()) labels.insert(f.label);
    for (const auto& t : j.at("cc_tables")) {
      TableInput ti;
      ti.stratum = require(t, "stratum", "cc table").get<std::string>();
      ti.codim = require(t, "codim", "cc table " + ti.stratum).get<int>();
      for (const auto& c : require(t, "contains", "cc table " + ti.stratum)) {
        ti.contains.push_back(c.get<std::string>());
        if (!labels.count(ti.contains.back()))
          throw InputError(where + ": cc table " + ti.stratum + " contains unknown point " + ti.contains.back());
      }
      for (const auto& [label, poly] : require(t, "restrictions", "cc table " + ti.stratum).items()) {
        if (!labels.count(label))
          throw InputError(where + ": cc table " + ti.stratum + " restricts to unknown point " + label);
        ti.restrictions.emplace(label, polynomial_from_json(poly, n + 1));
      }
      s.cc_tables.push_back(std::move(ti));
    }
  }
  if (j.contains("params")) s.params = j.at("params");
  if (s.fixed_points.empty() && !s.polytope) throw InputError(where + ": needs fixed_points or a polytope");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    return parse_scenario(j);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json to_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  j["rank"] = s.rank;
  const std::size_t n = s.rank;
  if (s.polytope) {
    Json verts = Json::array();
    for (const auto& v : s.polytope->vertices()) verts.push_back(to_json(v));
    Json facets = Json::array();
    for (const auto& f : s.polytope->facets()) facets.push_back(Json{{"a", f.a}, {"b", to_string(f.b)}});
    j["polytope"] = Json{{"vertices", verts}, {"facets", facets}};
  }
  if (!s.fixed_points.empty()) {
    Json fps = Json::array();
    for (const auto& f : s.fixed_points)
      fps.push_back(Json{{"label", f.label},
                         {"moment", to_json(f.moment)},
                         {"weights", weights_to_json(f.weights)},
                         {"numerator", to_json(f.numerator)}});
    j["fixed_points"] = fps;
  }
  if (s.cycle_dimension) j["cycle_dimension"] = *s.cycle_dimension;
  if (s.direction_v) j["direction_v"] = *s.direction_v;
  if (!s.alt_directions_v.empty()) j["alt_directions_v"] = weights_to_json(s.alt_directions_v);
  if (!s.directions_xi.empty()) {
    Json a = Json::array();
    for (const auto& x : s.directions_xi) a.push_back(to_json(x));
    j["directions_xi"] = a;
  }
  if (s.circle_s) j["circle_s"] = *s.circle_s;
  if (!s.constructible.empty()) {
    Json a = Json::array();
    for (const auto& c : s.constructible) {
      Json cl = Json::array();
      for (const auto& [face, coeff] : c.closures) cl.push_back(Json{{"face", face}, {"coeff", coeff.get_si()}});
      a.push_back(Json{{"label", c.label}, {"closures", cl}});
    }
    j["constructible"] = a;
  }
  if (!s.cc_tables.empty()) {
    Json a = Json::array();
    for (const auto& t : s.cc_tables) {
      Json r = Json::object();
      for (const auto& f : s.data()) {
        auto it = t.restrictions.find(f.label);
        if (it != t.restrictions.end()) r[f.label] = to_json(it->second);
      }
      a.push_back(Json{{"stratum", t.stratum}, {"codim", t.codim}, {"contains", t.contains}, {"restrictions", r}});
    }
    j["cc_tables"] = a;
  }
  (void)n;
  if (!s.params.empty()) j["params"] = s.params;
  return j;
}

std::vector<FixedPointDatum> Scenario::data() const {
  if (!fixed_points.empty()) return fixed_points;
  if (polytope) return toric_fixed_data(*polytope);
  return {};
}

std::size_t Scenario::heckman_dimension() const {
  if (cycle_dimension) return *cycle_dimension;
  auto d = data();
  if (d.empty()) return rank;
  const auto& f = d.front();
  const int deg = f.numerator.is_zero() ? 0 : f.numerator.total_degree();
  if (deg > static_cast<int>(f.weights.size()))
    throw InputError("numerator at " + f.label + " has degree above the number of weights");
  return f.weights.size() - static_cast<std::size_t>(deg);
}

CellClassTable table_from_scenario(const Scenario& s) {
  CellClassTable table;
  table.points = s.data();
  table.circle = s.circle_s;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < table.points.size(); ++i) index[table.points[i].label] = i;
  for (const auto& t : s.cc_tables) {
    StratumClasses st;
    st.label = t.stratum;
    st.codim = t.codim;
    for (const auto& c : t.contains) st.contains.push_back(index.at(c));
    std::sort(st.contains.begin(), st.contains.end());
    for (const auto& f : table.points) {
      auto it = t.restrictions.find(f.label);
      st.restrictions.push_back(it == t.restrictions.end() ? Polynomial(s.rank + 1) : it->second);
    }
    table.strata.push_back(std::move(st));
  }
  return table;
}

std::vector<StratumClasses> constructible_strata(const Scenario& s) {
  std::vector<StratumClasses> out;
  for (const auto& c : s.constructible) {
    ClosureCombination combo;
    for (const auto& [face, coeff] : c.closures) combo.emplace_back(*s.polytope->find_face(face), coeff);
    out.push_back(constructible_stratum(*s.polytope, c.label, combo));
  }
  return out;
}

std::string digest(const Json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace conecalc
