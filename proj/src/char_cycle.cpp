#include "conecalc/char_cycle.hpp"

#include <algorithm>
#include <map>

#include "conecalc/errors.hpp"
#include "conecalc/sampler.hpp"

namespace conecalc {

std::vector<std::size_t> bb_cells(const DelzantPolytope& p, const WeightVector& s) {
  if (s.size() != p.rank()) throw MathError(ErrorKind::kDimensionMismatch, "circle length");
  std::vector<Rational> height;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    height.push_back(dot(s, p.vertices()[v]));
    for (const auto& e : p.edges(v))
      if (dot(s, e.direction) == 0)
        throw MathError(ErrorKind::kNonGenericCircle, "circle " + to_string(s) + " is perpendicular to edge " +
                                                          to_string(e.direction));
  }
  for (std::size_t a = 0; a < height.size(); ++a)
    for (std::size_t b = a + 1; b < height.size(); ++b)
      if (height[a] == height[b])
        throw MathError(ErrorKind::kNonGenericCircle, "vertices " + vertex_label(p, a) + " and " +
                                                          vertex_label(p, b) + " tie under " + to_string(s));
  std::vector<std::size_t> out;
  for (const auto& f : p.faces()) {
    std::size_t best = f.vertices.front();
    for (auto v : f.vertices)
      if (height[v] < height[best]) best = v;
    out.push_back(best);
  }
  return out;
}

std::size_t cell_codim(const std::vector<WeightVector>& weights, const WeightVector& s) {
  std::size_t c = 0;
  for (const auto& w : weights) {
    auto x = dot(s, w);
    if (x == 0) throw MathError(ErrorKind::kNonGenericCircle, "weight " + to_string(w) + " is fixed by the circle");
    if (x < 0) ++c;
  }
  return c;
}

Polynomial diagonal_restriction(const std::vector<WeightVector>& weights, const WeightVector& s,
                                DiagonalConvention convention) {
  const std::size_t nvars = s.size() + 1;
  Polynomial out = Polynomial::constant(nvars, 1);
  const Polynomial h = Polynomial::hbar(nvars);
  for (const auto& w : weights) {
    auto x = dot(s, w);
    if (x == 0) throw MathError(ErrorKind::kNonGenericCircle, "weight " + to_string(w) + " is fixed by the circle");
    bool negative = x < 0;
    if (convention == DiagonalConvention::kCaseStatement) negative = !negative;
    Polynomial l = Polynomial::linear_form(w, nvars);
    out *= negative ? l : h - l;
  }
  return out;
}

StratumClasses constructible_stratum(const DelzantPolytope& p, std::string label,
                                     const ClosureCombination& closures) {
  std::map<std::size_t, Integer> merged;
  for (const auto& [f, c] : closures) merged[f] += c;
  ClosureCombination combo;
  std::size_t top = 0;
  bool any = false;
  for (const auto& [f, c] : merged) {
    if (c == 0) continue;
    combo.emplace_back(f, c);
    top = std::max(top, p.faces().at(f).dim);
    any = true;
  }
  if (!any) throw MathError(ErrorKind::kInvalidInput, "stratum " + label + " is empty");
  StratumClasses st;
  st.label = std::move(label);
  st.codim = static_cast<int>(p.rank() - top);
  auto csm = csm_of_constructible(p, combo);
  const Rational sign = (st.codim % 2 == 0) ? 1 : -1;
  for (auto& c : csm) st.restrictions.push_back(c * sign);
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    Integer value = 0;
    for (const auto& [f, c] : combo)
      if (p.contains(p.faces()[f], v)) value += c;
    if (value != 0) st.contains.push_back(v);
  }
  return st;
}

CellClassTable cell_cc_table(const DelzantPolytope& p, const WeightVector& s) {
  auto assignment = bb_cells(p, s);
  CellClassTable table;
  table.points = toric_fixed_data(p);
  table.circle = s;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) {
    ClosureCombination combo;
    for (std::size_t f = 0; f < assignment.size(); ++f)
      if (assignment[f] == v)
        for (const auto& term : open_orbit_indicator(p, f)) combo.push_back(term);
    auto st = constructible_stratum(p, "cell " + vertex_label(p, v), combo);
    st.bb_vertex = v;
    table.strata.push_back(std::move(st));
  }
  auto problems = audit_table(table);
  if (!problems.empty()) {
    std::string msg = "cell class table fails its audit:";
    for (const auto& pr : problems) msg += "\n  " + pr;
    throw MathError(ErrorKind::kInvalidInput, msg);
  }
  return table;
}

std::vector<std::string> audit_table(const CellClassTable& table) {
  std::vector<std::string> problems;
  const int dim = static_cast<int>(table.dimension());
  for (const auto& st : table.strata) {
    if (st.restrictions.size() != table.points.size()) {
      problems.push_back(st.label + ": expected one restriction per fixed point");
      continue;
    }
    for (std::size_t f = 0; f < table.points.size(); ++f) {
      const auto& r = st.restrictions[f];
      const auto& pt = table.points[f].label;
      if (!r.is_zero() && !r.is_homogeneous(dim))
        problems.push_back(st.label + " at " + pt + ": " + r.to_string() + " is not homogeneous of degree " +
                           std::to_string(dim));
      bool inside = std::find(st.contains.begin(), st.contains.end(), f) != st.contains.end();
      if (!inside && !r.divisible_by_hbar())
        problems.push_back(st.label + " at " + pt + ": " + r.to_string() + " is not divisible by h");
    }
    if (st.bb_vertex && table.circle) {
      const auto p = *st.bb_vertex;
      auto expect = diagonal_restriction(table.points[p].weights, *table.circle);
      if (st.restrictions[p] != expect)
        problems.push_back(st.label + " at " + table.points[p].label + ": " + st.restrictions[p].to_string() +
                           " differs from the diagonal formula " + expect.to_string());
      if (static_cast<std::size_t>(st.codim) != cell_codim(table.points[p].weights, *table.circle))
        problems.push_back(st.label + ": codimension disagrees with the count of negative weights");
    }
  }
  return problems;
}

WeberVerdict weber_check(const CellClassTable& table) {
  WeberVerdict v;
  for (const auto& st : table.strata)
    for (std::size_t f = 0; f < table.points.size() && f < st.restrictions.size(); ++f) {
      if (std::find(st.contains.begin(), st.contains.end(), f) != st.contains.end()) continue;
      if (!st.restrictions[f].divisible_by_hbar()) {
        v.passed = false;
        v.offenders.push_back({st.label, table.points[f].label, st.restrictions[f]});
      }
    }
  return v;
}

WeightVector extended_direction(const WeightVector& s, std::int64_t k) {
  WeightVector v = s;
  v.push_back(k);
  return v;
}

WeightVector upward_direction(const std::vector<FixedPointDatum>& points, const WeightVector& s) {
  std::int64_t m = 0;
  for (const auto& p : points)
    for (const auto& w : p.weights) m = std::max<std::int64_t>(m, std::abs(dot(s, w)));
  return extended_direction(s, m + 1);
}

SignedConeSum cotangent_cone_sum(const std::vector<FixedPointDatum>& points,
                                 const std::vector<Polynomial>& numerators, const WeightVector& flip) {
  if (numerators.size() != points.size())
    throw MathError(ErrorKind::kDimensionMismatch, "one numerator per fixed point expected");
  const std::size_t n = points.empty() ? flip.size() - 1 : points[0].rank();
  if (flip.size() != n + 1) throw MathError(ErrorKind::kDimensionMismatch, "flip direction must have rank n+1");
  SignedConeSum out(n + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& f = points[i];
    if (numerators[i].is_zero()) continue;
    if (numerators[i].nvars() != n + 1)
      throw MathError(ErrorKind::kDimensionMismatch, "restriction at " + f.label + " must have n+1 variables");
    std::vector<WeightVector> forms;
    std::vector<int> pairs;
    for (std::size_t j = 0; j < f.weights.size(); ++j) {
      forms.push_back(extended_direction(f.weights[j], 0));
      WeightVector fibre = negate(f.weights[j]);
      fibre.push_back(1);
      forms.push_back(fibre);
      pairs.push_back(static_cast<int>(j));
      pairs.push_back(static_cast<int>(j));
    }
    auto dec = decompose_over_forms(numerators[i], forms, f.weights.size(), flip, &pairs);
    RationalPoint apex = f.moment;
    apex.emplace_back(0);
    out.append(cone_terms(apex, dec, flip));
  }
  return out;
}

SignedConeSum stratum_cone_sum(const CellClassTable& table, std::size_t stratum, const WeightVector& flip) {
  return cotangent_cone_sum(table.points, table.strata.at(stratum).restrictions, flip);
}

SignedConeSum projected_stratum(const CellClassTable& table, std::size_t stratum, const WeightVector& s) {
  auto ext = stratum_cone_sum(table, stratum, extended_direction(s));
  const Rational sign = (table.strata[stratum].codim % 2 == 0) ? 1 : -1;
  return project_drop_last(ext) * sign;
}

SignedConeSum pipeline_sum(const CellClassTable& table, const WeightVector& s) {
  SignedConeSum out(table.rank());
  for (std::size_t i = 0; i < table.strata.size(); ++i) out.append(projected_stratum(table, i, s));
  return out;
}

ExpSum reduced_transform(const std::vector<FixedPointDatum>& points, const std::vector<Polynomial>& numerators,
                         int codim, const RationalPoint& xi) {
  ExpSum out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& f = points[i];
    RationalPoint at = xi;
    at.emplace_back(0);
    Rational num = numerators[i].evaluate(at);
    if (num == 0) continue;
    Rational den = 1;
    for (const auto& w : f.weights) {
      Rational x = dot(w, xi);
      if (x == 0) throw MathError(ErrorKind::kNonGenericDirection, "weight " + to_string(w) + " vanishes on xi");
      den *= -x * x;
    }
    Rational value = num / den;
    if (codim % 2 != 0) value = -value;
    accumulate(out, -dot(f.moment, xi), value);
  }
  return out;
}

ExpSum reduced_transform(const CellClassTable& table, std::size_t stratum, const RationalPoint& xi) {
  const auto& st = table.strata.at(stratum);
  return reduced_transform(table.points, st.restrictions, st.codim, xi);
}

ExpSum heckman_transform(const FixedPointDatum& point, const RationalPoint& xi) {
  ExpSum out;
  Rational den = 1;
  for (const auto& w : point.weights) {
    Rational x = dot(w, xi);
    if (x == 0) throw MathError(ErrorKind::kNonGenericDirection, "weight " + to_string(w) + " vanishes on xi");
    den *= x;
  }
  accumulate(out, -dot(point.moment, xi), 1 / den);
  return out;
}

SignedConeSum heckman_term(const FixedPointDatum& point, const WeightVector& s) {
  SignedConeSum raw(point.rank());
  raw.add(cone(point.moment, point.weights));
  return flip_to_direction(raw, s);
}

MainTheoremVerdict main_theorem_check(const CellClassTable& table, std::size_t stratum,
                                      const MainTheoremOptions& options) {
  MainTheoremVerdict v;
  const auto& st = table.strata.at(stratum);
  if (!st.bb_vertex || !table.circle)
    throw MathError(ErrorKind::kInvalidInput, "stratum " + st.label + " is not an attracting cell");
  const auto& s = *table.circle;
  const auto& p = table.points[*st.bb_vertex];
  const std::size_t n = table.rank();

  std::vector<WeightVector> all;
  for (const auto& f : table.points) all.insert(all.end(), f.weights.begin(), f.weights.end());
  GenericSampler sampler(options.sampling.seed);
  RationalPoint lo(n, Rational(-3)), hi(n, Rational(3));
  v.identity = true;
  for (std::size_t k = 0; k < options.directions; ++k) {
    RationalPoint xi;
    do {
      xi = sampler.point_in_box(lo, hi);
    } while (std::any_of(all.begin(), all.end(), [&](const WeightVector& w) { return dot(w, xi) == 0; }));
    v.directions.push_back(xi);
    if (reduced_transform(table, stratum, xi) != heckman_transform(p, xi)) {
      v.identity = false;
      v.counterexample = xi;
      v.detail = "reduction differs from the Heckman term at xi=" + to_string(xi);
      break;
    }
  }

  try {
    auto ext = stratum_cone_sum(table, stratum, extended_direction(s));
    std::vector<std::size_t> kept(n);
    for (std::size_t i = 0; i < n; ++i) kept[i] = i;
    v.properness = is_proper(ext, kept, s);
    v.proper = v.properness.proper;
    if (v.proper) {
      v.comparison = measures_equal(projected_stratum(table, stratum, s), heckman_term(p, s), options.sampling);
      v.projection_equal = v.comparison.equal;
      if (!v.projection_equal && v.detail.empty()) v.detail = "projected measure differs from the Heckman term";
    } else if (v.detail.empty()) {
      v.detail = "extended sum does not project properly: " + v.properness.reason;
    }
  } catch (const MathError& e) {
    if (v.detail.empty()) v.detail = e.what();
  }
  v.passed = v.identity && v.proper && v.projection_equal;
  return v;
}

}  // namespace conecalc
