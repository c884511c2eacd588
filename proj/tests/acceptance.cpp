// Sign-off run: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "conecalc/char_cycle.hpp"
#include "conecalc/commands.hpp"
#include "conecalc/halfspace.hpp"
#include "conecalc/localization.hpp"
#include "conecalc/scenario.hpp"
#include "conecalc/toric.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

using namespace conecalc;

namespace {

struct Result {
  bool passed = true;
  std::string note;

  void fail(const std::string& why) {
    if (passed) note = why;
    passed = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

Scenario builtin(const std::string& name) { return parse_scenario(Json::parse(builtin_scenarios().at(name))); }

DelzantPolytope interval01() { return DelzantPolytope({{0}, {1}}, {{{1}, 0}, {{-1}, -1}}); }
DelzantPolytope triangle() { return *builtin("cp2").polytope; }
DelzantPolytope square() { return *builtin("square").polytope; }
DelzantPolytope trapezoid() { return *builtin("trapezoid").polytope; }

std::string str(const RationalPoint& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].get_str();
  os << ')';
  return os.str();
}

// Points shared by criteria 1 and 8.
IndicatorCheck cp2_reference;

Result c1() {
  Result r;
  auto s = builtin("cp2");
  auto sum = heckman_cone_sum(s.data(), 2, {1, 2});
  r.expect(sum.size() == 3, "expected three cone terms");
  cp2_reference = matches_indicator(sum, *s.polytope, 1, kDefaultSeed, 10);
  r.expect(cp2_reference.interior.size() == 10 && cp2_reference.exterior.size() == 10, "point count");
  if (!cp2_reference.passed) r.fail("density " + cp2_reference.actual.get_str() + " at " + str(*cp2_reference.counterexample));
  for (const auto& x : cp2_reference.interior) r.expect(oracle::simplicial_density(sum.terms()[0], x) == 1, "oracle");
  return r;
}

Result c2() {
  Result r;
  auto data = builtin("cp2").data();
  std::vector<WeightVector> vs{{1, 2}, {2, 1}, {-1, -3}};
  std::vector<SignedConeSum> sums;
  for (const auto& v : vs) sums.push_back(heckman_cone_sum(data, 2, v));
  for (std::size_t i = 0; i < sums.size(); ++i)
    for (std::size_t j = i + 1; j < sums.size(); ++j) {
      auto cmp = measures_equal(sums[i], sums[j]);
      r.expect(cmp.equal, "v=" + str(RationalPoint(vs[i].begin(), vs[i].end())) + " vs " +
                              str(RationalPoint(vs[j].begin(), vs[j].end())));
    }
  return r;
}

Result c3() {
  Result r;
  for (const auto& name : {"cp1", "cp2", "cp2-w012", "hexagon-gl3"}) {
    auto s = builtin(name);
    auto h = holomorphy_check(s.data(), s.directions_xi);
    r.expect(h.passed, std::string(name) + ": pole of order " + std::to_string(-h.exponent));
  }
  auto s = builtin("cp2");
  auto series = localization_series(s.data(), {1, 2});
  r.expect(series.coefficient(0) == Rational(1, 2), "constant coefficient " + series.coefficient(0).get_str());
  r.expect(series.coefficient(1) == Rational(-1, 2), "linear coefficient " + series.coefficient(1).get_str());
  auto m = polytope_moments(*s.polytope, {1, 2}, 1);
  r.expect(m[0] == series.coefficient(0) && m[1] == -series.coefficient(1), "polytope_moments disagree");
  r.expect(oracle::boundary_moment(*s.polytope, {1, 2}, 1) == m[1], "boundary integral disagrees");
  return r;
}

Result c4() {
  Result r;
  std::vector<std::pair<std::string, DelzantPolytope>> ps{
      {"interval", interval01()}, {"triangle", triangle()}, {"square", square()}, {"trapezoid", trapezoid()}};
  for (const auto& [name, p] : ps) {
    auto base = brianchon_gram_sum(p);
    auto chk = matches_indicator(base, p, 1, kDefaultSeed, 10);
    r.expect(chk.passed && chk.interior.size() == 10 && chk.exterior.size() == 10, name + ": not Lebesgue on P");
    for (std::size_t f = 0; f < p.faces().size(); ++f) {
      const auto& verts = p.faces()[f].vertices;
      if (verts.size() < 2) continue;
      for (auto v : verts)
        r.expect(measures_equal(base, brianchon_gram_sum(p, {{f, v}})).equal,
                 name + ": face " + std::to_string(f) + " depends on vertex " + std::to_string(v));
    }
  }
  return r;
}

Result c5() {
  Result r;
  for (const auto& p : {interval01(), triangle(), square(), trapezoid()}) {
    Rational sign = p.rank() % 2 ? -1 : 1;
    auto chk = matches_indicator(brianchon_gram_inward(p), p, sign, kDefaultSeed, 10, true);
    r.expect(chk.passed, "rank " + std::to_string(p.rank()) + ": density " + chk.actual.get_str());
  }
  return r;
}

Result c6() {
  Result r;
  for (const auto& [name, text] : builtin_scenarios()) {
    auto s = parse_scenario(Json::parse(text));
    if (!s.polytope) continue;
    const auto& p = *s.polytope;
    ClosureCombination all;
    for (std::size_t f = 0; f < p.faces().size(); ++f)
      for (const auto& t : open_orbit_indicator(p, f)) all.push_back(t);
    auto csm = csm_of_constructible(p, all);
    const auto h = Polynomial::hbar(p.rank() + 1);
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
      Polynomial zero = Polynomial::constant(p.rank() + 1, 1);
      for (const auto& e : p.edges(v)) zero *= h - Polynomial::linear_form(e.direction, p.rank() + 1);
      r.expect(csm[v] == zero, name + ": vertex " + vertex_label(p, v));
    }
  }
  return r;
}

Result c7() {
  Result r;
  auto a = weber_check(cell_cc_table(*builtin("cp1").polytope, {1}));
  auto b = weber_check(cell_cc_table(*builtin("cp2").polytope, {1, 2}));
  r.expect(a.passed, "cp1");
  r.expect(b.passed, "cp2");
  return r;
}

Result c8() {
  Result r;
  for (const auto& [name, s] : std::vector<std::pair<std::string, WeightVector>>{{"cp1", {1}}, {"cp2", {1, 2}}}) {
    auto table = cell_cc_table(*builtin(name).polytope, s);
    for (std::size_t i = 0; i < table.strata.size(); ++i) {
      auto v = main_theorem_check(table, i);
      const auto cell = name + " cell " + table.strata[i].label;
      r.expect(v.identity && v.directions.size() == 5, cell + ": reduction differs from the Heckman term");
      r.expect(v.proper, cell + ": improper projection");
      r.expect(v.projection_equal, cell + ": projection differs from the Heckman term");
    }
    if (name != "cp2") continue;
    DensityEvaluator pipe(pipeline_sum(table, s));
    for (const auto& x : cp2_reference.interior) r.expect(pipe(x) == 1, "pipeline density at " + str(x));
    for (const auto& x : cp2_reference.exterior) r.expect(pipe(x) == 0, "pipeline density at " + str(x));
    r.expect(!cp2_reference.interior.empty(), "criterion 1 points missing");
  }
  return r;
}

Result c9() {
  Result r;
  auto s = builtin("cp2-w012");
  auto table = table_from_scenario(s);
  auto up = upward_direction(table.points, *s.circle_s);
  SignedConeSum combined(up.size(), {});
  for (std::size_t i = 0; i < table.strata.size(); ++i) combined = combined + stratum_cone_sum(table, i, up);
  auto pv = is_proper(combined, {0});
  r.expect(!pv.proper, "upward projection reported proper");
  r.expect(!pv.proper && verify_certificate(pv.generators, pv.certificate), "certificate does not verify");
  DensityEvaluator heck(heckman_cone_sum(s.data(), 2, *s.direction_v));
  for (Rational x : {Rational(1, 7), Rational(1, 3), Rational(3, 4), Rational(5, 4), Rational(12, 7), Rational(-1, 2),
                     Rational(5, 2)})
    r.expect(heck({x}) == oracle::tent(x), "density at " + x.get_str());
  return r;
}

Result c10() {
  Result r;
  auto p = triangle();
  const Integer want[] = {21, 66, 231};
  Rational last = -1;
  unsigned i = 0;
  for (unsigned d : {5u, 10u, 20u}) {
    auto c = lattice_count(p, d);
    r.expect(c.count == want[i] && c.count == oracle::lattice_points(p, d), "count at d=" + std::to_string(d));
    Rational err = abs(ratio(c.count, Integer(d) * d) - Rational(1, 2));
    r.expect(err == c.error, "error field at d=" + std::to_string(d));
    r.expect(last < 0 || err < last, "error not decreasing at d=" + std::to_string(d));
    if (d == 20) r.expect(err < Rational(1, 10), "error at d=20 is " + err.get_str());
    last = err;
    ++i;
  }
  return r;
}

Result c11() {
  Result r;
  RunOptions o;
  auto rep = run_command("cc", builtin("cp2-nonmorse"), o);
  bool zero = false, leb = false;
  for (const auto& c : rep.checks()) {
    if (c.name == "cc: constructible csm classes sum to the zero section") zero = c.passed;
    if (c.name == "cc: constructible projections sum to lebesgue on polytope") leb = c.passed;
  }
  r.expect(zero, "csm classes do not sum to the zero section");
  r.expect(leb, "projected sum is not Lebesgue on the triangle");
  return r;
}

Result c12() {
  Result r;
  for (const auto& o : property::core_suites(kDefaultSeed, 100)) {
    r.expect(o.trials == 100, o.name + ": ran " + std::to_string(o.trials) + " trials");
    r.expect(o.passed(), o.name + ": " + o.first_failure);
  }
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit;
    std::function<Result()> run;
  };
  const std::vector<Criterion> all{
      {1, "CP2 Heckman sum is Lebesgue on the triangle", 1, c1},
      {2, "independence of v", 1, c2},
      {3, "holomorphy and moments", 1, c3},
      {4, "Brianchon-Gram and vertex choice", 5, c4},
      {5, "inward variant", 1, c5},
      {6, "CSM additivity", 1, c6},
      {7, "Weber divisibility", 1, c7},
      {8, "cell pipeline", 5, c8},
      {9, "improper projection and the tent", 1, c9},
      {10, "lattice-point convergence", 1, c10},
      {11, "non-Morse decomposition", 5, c11},
      {12, "property suites", 60, c12},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit) r.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit) + " s");
    failed += !r.passed;
    std::printf("%s  %2d  %-46s %8.3f s%s%s\n", r.passed ? "PASS" : "FAIL", c.id, c.title, secs,
                r.note.empty() ? "" : "  ", r.note.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
