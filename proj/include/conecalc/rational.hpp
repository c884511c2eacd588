#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace conecalc {

using Integer = mpz_class;
// mpq_class keeps itself canonical (gcd 1, positive denominator) under
// arithmetic; parse_rational canonicalizes on input.
using Rational = mpq_class;

// Element of the weight lattice T*.
using WeightVector = std::vector<std::int64_t>;
// Element of t* (or of t, when used as a pairing direction).
using RationalPoint = std::vector<Rational>;

Rational parse_rational(std::string_view text);
// num/den in lowest terms; den != 0.
Rational ratio(const Integer& num, const Integer& den);
std::string to_string(const Rational& q);
std::string to_string(const RationalPoint& p);
std::string to_string(const WeightVector& w);

inline int sign(const Rational& q) { return sgn(q); }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

RationalPoint to_point(const WeightVector& w);
RationalPoint zero_point(std::size_t n);

Rational dot(const WeightVector& a, const RationalPoint& b);
Rational dot(const RationalPoint& a, const RationalPoint& b);
std::int64_t dot(const WeightVector& a, const WeightVector& b);

RationalPoint add(const RationalPoint& a, const RationalPoint& b);
RationalPoint sub(const RationalPoint& a, const RationalPoint& b);
RationalPoint add(const RationalPoint& a, const WeightVector& b);
RationalPoint sub(const RationalPoint& a, const WeightVector& b);
RationalPoint scale(const RationalPoint& a, const Rational& s);
WeightVector negate(const WeightVector& w);
bool is_zero(const WeightVector& w);

// n! and binomials as exact integers.
Integer factorial(unsigned n);

}  // namespace conecalc
