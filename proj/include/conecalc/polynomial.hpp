#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conecalc/rational.hpp"

namespace conecalc {

// Multivariate polynomial with rational coefficients. By convention the last
// variable is the dilation parameter ħ; the others are weight variables
// y_1..y_n pairing with t.
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial hbar(std::size_t nvars) { return variable(nvars, nvars - 1); }
  // Σ w_i y_i; w may be shorter than nvars (missing entries are zero).
  static Polynomial linear_form(const WeightVector& w, std::size_t nvars);
  static Polynomial monomial(const Exponents& e, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds c * x^e; zero results are erased.
  void add_term(const Exponents& e, const Rational& c);
  Rational coefficient(const Exponents& e) const;

  // -1 for the zero polynomial.
  int total_degree() const;
  // Degree of homogeneity, or nullopt. The zero polynomial is homogeneous of
  // every degree and reports nullopt here; callers test is_zero first.
  std::optional<int> homogeneous_degree() const;
  bool is_homogeneous(int degree) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& s) const;
  Polynomial operator-() const { return *this * Rational(-1); }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Rational evaluate(const RationalPoint& point) const;
  // Homogeneous component of the given degree.
  Polynomial homogeneous_part(int degree) const;
  // Drops every term with a positive exponent in the given variable.
  Polynomial substitute_zero(std::size_t var) const;
  Polynomial hbar_to_zero() const { return substitute_zero(nvars_ - 1); }
  bool divisible_by_variable(std::size_t var) const;
  bool divisible_by_hbar() const { return divisible_by_variable(nvars_ - 1); }
  bool hbar_free() const;

  // Renders with variable names y1..yn and "h" for ħ unless names are given.
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void require_compatible(const Polynomial& o) const;

  std::size_t nvars_;
  Terms terms_;
};

Polynomial pow(const Polynomial& p, unsigned k);
Polynomial product(const std::vector<Polynomial>& factors, std::size_t nvars);

}  // namespace conecalc
