#include "doctest.h"

#include "conecalc/errors.hpp"
#include "conecalc/laurent.hpp"
#include "conecalc/linalg.hpp"
#include "conecalc/polynomial.hpp"
#include "conecalc/rational.hpp"
#include "conecalc/sampler.hpp"

using namespace conecalc;

namespace {

Polynomial y(std::size_t i, std::size_t nv = 2) { return Polynomial::variable(nv, i); }
Polynomial h(std::size_t nv = 2) { return Polynomial::hbar(nv); }
Polynomial c(const Rational& q, std::size_t nv = 2) { return Polynomial::constant(nv, q); }

}  // namespace

TEST_CASE("rationals parse to canonical form") {
  CHECK(parse_rational("6/-4") == Rational(-3, 2));
  CHECK(to_string(parse_rational("10/5")) == "2");
  CHECK(to_string(parse_rational(" -7/21 ")) == "-1/3");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("solve_linear") {
  SUBCASE("identity") {
    auto s = solve_linear({{1, 0}, {0, 1}}, {3, 5});
    REQUIRE(s.kind == LinearSolution::Kind::kUnique);
    CHECK(s.particular == RationalPoint{3, 5});
  }
  SUBCASE("generators (1,0) and (-1,1) as columns reach (0,1)") {
    auto s = solve_linear({{1, -1}, {0, 1}}, {0, 1});
    REQUIRE(s.kind == LinearSolution::Kind::kUnique);
    CHECK(s.particular == RationalPoint{1, 1});
  }
  SUBCASE("underdetermined") {
    auto s = solve_linear({{1, 1}}, {2});
    REQUIRE(s.kind == LinearSolution::Kind::kFamily);
    CHECK(s.kernel.size() == 1);
    CHECK(s.particular[0] + s.particular[1] == 2);
    CHECK(s.kernel[0][0] + s.kernel[0][1] == 0);
  }
  SUBCASE("inconsistent") {
    auto s = solve_linear({{1, 1}, {2, 2}}, {1, 3});
    CHECK(s.kind == LinearSolution::Kind::kNone);
  }
}

TEST_CASE("primitive") {
  CHECK(primitive({2, -2}) == WeightVector{1, -1});
  CHECK(primitive({0, 3}) == WeightVector{0, 1});
  CHECK(primitive({-1, 2}) == WeightVector{-1, 2});
  try {
    primitive({0, 0});
    FAIL("expected an error");
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::kZeroVector);
  }
}

TEST_CASE("det") {
  CHECK(det({{1, 0}, {0, 1}}) == 1);
  CHECK(det(to_matrix({{1, 0}, {-1, 1}})) == 1);
  CHECK(det(to_matrix({{2, -1}, {-1, 2}})) == 3);
  CHECK(det({{Rational(1, 2), 3}, {Rational(1, 3), 2}}) == 0);
}

TEST_CASE("lattice helpers") {
  CHECK(lattice_index({{2, 0}, {0, 1}}) == 2);
  CHECK(lattice_index({{1, 1}}) == 1);
  CHECK(lattice_index({{2, 2}}) == 2);
  auto ann = integer_annihilator_basis({{1, 1, 0}}, 3);
  REQUIRE(ann.size() == 2);
  for (const auto& a : ann) CHECK(a[0] + a[1] == 0);
  auto sol = solve_integer({{2, 0}, {0, 3}}, {4, 9});
  REQUIRE(sol);
  CHECK((*sol)[0] == 2);
  CHECK((*sol)[1] == 3);
  CHECK_FALSE(solve_integer({{2}}, {3}));
}

TEST_CASE("polynomial arithmetic and h -> 0") {
  auto yy = y(0);
  SUBCASE("(h - y)(h + y) at h = 0") { CHECK(((h() - yy) * (h() + yy)).hbar_to_zero() == -(yy * yy)); }
  SUBCASE("(h - y)(h - 2y) is homogeneous of degree 2") {
    auto p = (h() - yy) * (h() - yy * Rational(2));
    CHECK(p.homogeneous_degree() == 2);
    CHECK(p.is_homogeneous(2));
    CHECK_FALSE((p + yy).homogeneous_degree().has_value());
  }
  SUBCASE("y h + y^2 at h = 0") { CHECK((yy * h() + yy * yy).hbar_to_zero() == yy * yy); }
  SUBCASE("divisibility by h") {
    CHECK((h() * yy + h() * h()).divisible_by_hbar());
    CHECK_FALSE((h() + yy).divisible_by_hbar());
    CHECK(Polynomial(2).divisible_by_hbar());
  }
  SUBCASE("evaluation") { CHECK((yy * yy - c(1)).evaluate({3, 7}) == 8); }
  SUBCASE("zero coefficients are not stored") {
    auto p = yy - yy;
    CHECK(p.is_zero());
    CHECK(p.terms().empty());
    CHECK(p.total_degree() == -1);
  }
  SUBCASE("linear forms") {
    auto f = Polynomial::linear_form({2, -1}, 3);
    CHECK(f.evaluate({1, 5, 100}) == -3);
    CHECK(f.hbar_free());
  }
  SUBCASE("mismatched variable counts are rejected") { CHECK_THROWS(y(0, 2) + y(0, 3)); }
}

TEST_CASE("laurent_expand") {
  SUBCASE("mu = 0, forms 1 and 2") {
    auto s = laurent_expand({0}, {{1}, {2}}, {1}, 2);
    CHECK(s.coefficient(-2) == Rational(1, 2));
    CHECK(s.coefficient(-1) == 0);
    CHECK(s.coefficient(0) == 0);
    CHECK(s.coefficient(2) == 0);
  }
  SUBCASE("mu = (1,0), forms (-1,0), (-1,1), xi = (1,2)") {
    auto s = laurent_expand({1, 0}, {{-1, 0}, {-1, 1}}, {1, 2}, 2);
    CHECK(s.coefficient(-2) == -1);
    CHECK(s.coefficient(-1) == 1);
    CHECK(s.coefficient(0) == Rational(-1, 2));
    CHECK(s.coefficient(1) == Rational(1, 6));
  }
  SUBCASE("three terms of the triangle") {
    auto s = laurent_expand({0, 0}, {{1, 0}, {0, 1}}, {1, 2}) + laurent_expand({1, 0}, {{-1, 0}, {-1, 1}}, {1, 2}) +
             laurent_expand({0, 1}, {{0, -1}, {1, -1}}, {1, 2});
    CHECK(s.coefficient(-2) == 0);
    CHECK(s.coefficient(-1) == 0);
    CHECK(s.leading_exponent() == 0);
    CHECK(s.coefficient(0) == Rational(1, 2));
    CHECK(s.coefficient(1) == Rational(-1, 2));
  }
  SUBCASE("non-generic direction") {
    try {
      laurent_expand({0, 0}, {{2, -1}}, {1, 2});
      FAIL("expected an error");
    } catch (const MathError& e) {
      CHECK(e.kind() == ErrorKind::kNonGenericDirection);
    }
  }
  SUBCASE("truncation is enforced") {
    auto s = laurent_expand({0}, {{1}}, {1}, 3);
    CHECK_THROWS(s.coefficient(4));
    CHECK(s.max_exponent() == 3);
  }
  SUBCASE("numerator expansion") {
    // y / y = 1 along any direction.
    auto s = laurent_expand({0}, Polynomial::variable(2, 0), {{1}}, {Rational(3, 7)}, 2);
    CHECK(s.coefficient(0) == 1);
    CHECK(s.coefficient(-1) == 0);
    CHECK(s.coefficient(1) == 0);
  }
}

TEST_CASE("generic sampler is deterministic and uses prime-power denominators") {
  GenericSampler a(7), b(7);
  for (int i = 0; i < 20; ++i) {
    auto p = a.uniform(-1, 1), q = b.uniform(-1, 1);
    CHECK(p == q);
    CHECK(p >= -1);
    CHECK(p <= 1);
    CHECK(Integer(97 * 97) % Integer(p.get_den()) == 0);
  }
  auto v = a.integer_vector(3, 2);
  CHECK_FALSE(is_zero(v));
}
