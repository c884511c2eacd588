#include "doctest.h"

#include "conecalc/char_cycle.hpp"
#include "conecalc/errors.hpp"
#include "support/oracles.hpp"

using namespace conecalc;

namespace {

DelzantPolytope interval01() { return DelzantPolytope({{0}, {1}}, {{{1}, 0}, {{-1}, -1}}); }
DelzantPolytope triangle() {
  return DelzantPolytope({{0, 0}, {1, 0}, {0, 1}}, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -1}});
}

Polynomial yv(std::size_t i, std::size_t nv) { return Polynomial::variable(nv, i); }

std::vector<std::size_t> assigned_to(const std::vector<std::size_t>& cells, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < cells.size(); ++f)
    if (cells[f] == v) out.push_back(f);
  return out;
}

// Cell table for the weights 0,1,2 line, as supplied by hand.
CellClassTable weighted_line() {
  const std::size_t nv = 2;
  auto y = yv(0, nv), h = Polynomial::hbar(nv);
  CellClassTable t;
  t.points = {full_datum("0", {0}, {{1}, {2}}), full_datum("1", {1}, {{-1}, {1}}), full_datum("2", {2}, {{-2}, {-1}})};
  StratumClasses a;
  a.label = "A";
  a.codim = 0;
  a.contains = {0, 2};
  a.restrictions = {(h - y) * (h - y * Rational(2)), h * h, (h + y * Rational(2)) * (h + y)};
  StratumClasses pt;
  pt.label = "pt";
  pt.codim = 2;
  pt.contains = {1};
  pt.restrictions = {Polynomial(nv), -(y * y), Polynomial(nv)};
  t.strata = {a, pt};
  t.circle = WeightVector{1};
  return t;
}

}  // namespace

TEST_CASE("bb_cells") {
  SUBCASE("interval, s = 1") {
    auto p = interval01();
    auto cells = bb_cells(p, {1});
    CHECK(assigned_to(cells, 0).size() == 2);
    CHECK(assigned_to(cells, 1) == std::vector<std::size_t>{p.vertex_face(1)});
  }
  SUBCASE("triangle, s = (1,2)") {
    auto p = triangle();
    auto cells = bb_cells(p, {1, 2});
    CHECK(assigned_to(cells, 0).size() == 4);
    auto hyp = *p.find_face({1, 2});
    CHECK(assigned_to(cells, 1) == std::vector<std::size_t>{std::min(hyp, p.vertex_face(1)), std::max(hyp, p.vertex_face(1))});
    CHECK(assigned_to(cells, 2) == std::vector<std::size_t>{p.vertex_face(2)});
  }
  SUBCASE("negating s picks maximizing vertices") {
    auto p = triangle();
    auto cells = bb_cells(p, {-1, -2});
    CHECK(cells[0] == 2);
    CHECK(assigned_to(cells, 0) == std::vector<std::size_t>{p.vertex_face(0)});
  }
  SUBCASE("ties") {
    try {
      bb_cells(triangle(), {1, 1});
      FAIL("expected an error");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::kNonGenericCircle);
    }
  }
  CHECK(cell_codim({{1, 0}, {-1, 1}}, {1, 2}) == 0);
  CHECK(cell_codim({{0, -1}, {1, -1}}, {1, 2}) == 2);
}

TEST_CASE("diagonal_restriction conventions") {
  const std::size_t nv = 2;
  auto y = yv(0, nv), h = Polynomial::hbar(nv);
  CHECK(diagonal_restriction({{1}}, {1}) == h - y);
  CHECK(diagonal_restriction({{-1}}, {1}) == -y);
  CHECK(diagonal_restriction({{1}}, {1}, DiagonalConvention::kCaseStatement) == y);
  CHECK(diagonal_restriction({{-1}}, {1}, DiagonalConvention::kCaseStatement) == h + y);
}

TEST_CASE("cell_cc_table") {
  SUBCASE("interval") {
    auto t = cell_cc_table(interval01(), {1});
    const std::size_t nv = 2;
    auto y = yv(0, nv), h = Polynomial::hbar(nv);
    REQUIRE(t.strata.size() == 2);
    CHECK(t.strata[0].restrictions[0] == h - y);
    CHECK(t.strata[0].restrictions[1] == h);
    CHECK(t.strata[1].restrictions[1] == -y);
    CHECK(t.strata[1].restrictions[0].is_zero());
    CHECK(t.strata[0].codim == 0);
    CHECK(t.strata[1].codim == 1);
  }
  SUBCASE("triangle diagonals follow the closed form") {
    auto t = cell_cc_table(triangle(), {1, 2});
    for (const auto& st : t.strata) {
      const auto p = *st.bb_vertex;
      CHECK(st.restrictions[p] == diagonal_restriction(t.points[p].weights, {1, 2}));
      for (const auto& r : st.restrictions)
        if (!r.is_zero()) CHECK(r.is_homogeneous(2));
    }
    const auto& point_cell = t.strata[2];
    CHECK(point_cell.restrictions[2] == euler_product(t.points[2].weights, 3));
    CHECK(audit_table(t).empty());
  }
}

TEST_CASE("weber_check") {
  CHECK(weber_check(cell_cc_table(interval01(), {1})).passed);
  CHECK(weber_check(cell_cc_table(triangle(), {1, 2})).passed);
  SUBCASE("fault injection") {
    auto t = cell_cc_table(triangle(), {1, 2});
    t.strata[0].restrictions[1] += yv(0, 3) * yv(1, 3);
    auto v = weber_check(t);
    CHECK_FALSE(v.passed);
    REQUIRE(v.offenders.size() == 1);
    CHECK(v.offenders[0].stratum == t.strata[0].label);
    CHECK(v.offenders[0].point == t.points[1].label);
    CHECK_FALSE(audit_table(t).empty());
  }
}

TEST_CASE("cotangent cone sums") {
  SUBCASE("point cell of the interval is one bent half-plane") {
    auto t = cell_cc_table(interval01(), {1});
    auto s = stratum_cone_sum(t, 1, extended_direction({1}));
    REQUIRE(s.size() == 1);
    CHECK(s.terms()[0].apex == RationalPoint{1, 0});
    CHECK(is_proper(s, {0}).proper);
  }
  SUBCASE("cell at 0 projects to cone(0, {1})") {
    auto t = cell_cc_table(interval01(), {1});
    auto proj = projected_stratum(t, 0, {1});
    CHECK(measures_equal(proj, SignedConeSum(1, {cone({0}, {{1}})})).equal);
  }
  SUBCASE("upward direction clears every fibre form") {
    auto t = weighted_line();
    auto up = upward_direction(t.points, {1});
    CHECK(up.size() == 2);
    CHECK(up[1] > 2);
  }
}

TEST_CASE("main_theorem_check") {
  SUBCASE("interval cells") {
    auto t = cell_cc_table(interval01(), {1});
    for (std::size_t i = 0; i < 2; ++i) {
      auto v = main_theorem_check(t, i);
      CHECK(v.passed);
      CHECK(v.identity);
      CHECK(v.proper);
      CHECK(v.projection_equal);
      CHECK(v.directions.size() == 5);
    }
    CHECK(measures_equal(projected_stratum(t, 1, {1}), SignedConeSum(1, {cone({1}, {{1}}, -1)})).equal);
  }
  SUBCASE("triangle cells") {
    auto t = cell_cc_table(triangle(), {1, 2});
    for (std::size_t i = 0; i < t.strata.size(); ++i) CHECK(main_theorem_check(t, i).passed);
    CHECK(matches_indicator(pipeline_sum(t, {1, 2}), triangle(), 1, 3).passed);
  }
  SUBCASE("reduced transform equals the Heckman term") {
    auto t = cell_cc_table(triangle(), {1, 2});
    RationalPoint xi{Rational(3, 7), Rational(-2, 5)};
    for (std::size_t i = 0; i < t.strata.size(); ++i)
      CHECK(reduced_transform(t, i, xi) == heckman_transform(t.points[*t.strata[i].bb_vertex], xi));
  }
  SUBCASE("a corrupted table is caught") {
    auto t = cell_cc_table(triangle(), {1, 2});
    t.strata[1].restrictions[1] = t.strata[1].restrictions[1] * Rational(2);
    CHECK_FALSE(main_theorem_check(t, 1).passed);
  }
}

TEST_CASE("weights 0,1,2: impropriety and the tent") {
  auto t = weighted_line();
  CHECK(audit_table(t).empty());
  CHECK(weber_check(t).passed);
  auto up = upward_direction(t.points, {1});
  bool improper = false;
  for (std::size_t i = 0; i < t.strata.size(); ++i) {
    auto pv = is_proper(stratum_cone_sum(t, i, up), {0});
    if (!pv.proper) {
      improper = true;
      CHECK(verify_certificate(pv.generators, pv.certificate));
    }
  }
  CHECK(improper);
  auto pipe = pipeline_sum(t, {1});
  DensityEvaluator eval(pipe);
  for (Rational x : {Rational(1, 3), Rational(3, 4), Rational(5, 4), Rational(7, 4), Rational(5, 2), Rational(-1, 2)})
    CHECK(eval({x}) == oracle::tent(x));
}
