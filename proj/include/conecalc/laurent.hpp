#pragma once

#include <string>
#include <vector>

#include "conecalc/polynomial.hpp"
#include "conecalc/rational.hpp"

namespace conecalc {

// Retains coefficients through t^4 unless told otherwise.
inline constexpr int kDefaultTruncation = 4;

// Truncated Laurent series Σ_{e=order}^{max_exponent} c_e t^e.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(int order, int max_exponent);

  int order() const { return order_; }
  int max_exponent() const { return max_exponent_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  // Zero below the stored range; throws past the truncation.
  Rational coefficient(int exponent) const;
  void add_to(int exponent, const Rational& value);

  // Smallest exponent with a nonzero coefficient, or max_exponent + 1.
  int leading_exponent() const;

  // Sum truncated to the smaller max_exponent.
  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator*(const Rational& s) const;
  bool operator==(const LaurentSeries& o) const;

  std::string to_string() const;

 private:
  int order_ = 0;
  int max_exponent_ = -1;
  std::vector<Rational> coeffs_;
};

// Expansion in t of coefficient * exp(-<apex, xi0> t) * N(xi0 t) / Π_i <form_i, xi0> t.
// The numerator is evaluated at (xi0, 0...) padded to its variable count, so
// ħ-free numerators are the intended input here. Throws kNonGenericDirection
// when some <form, xi0> vanishes.
LaurentSeries laurent_expand(const RationalPoint& apex, const Polynomial& numerator,
                             const std::vector<WeightVector>& forms, const RationalPoint& xi0,
                             int max_exponent = kDefaultTruncation);

// Pure exponential-over-forms term (numerator = coefficient).
LaurentSeries laurent_expand(const RationalPoint& apex, const std::vector<WeightVector>& forms,
                             const RationalPoint& xi0, int max_exponent = kDefaultTruncation,
                             const Rational& coefficient = 1);

}  // namespace conecalc
