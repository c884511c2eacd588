#pragma once

#include <cstdint>
#include <random>

#include "conecalc/rational.hpp"

namespace conecalc {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

// Deterministic source of "generic" rationals: every value has denominator
// prime^exponent, which keeps accidental hits on small-integer walls rare.
// Callers still detect and re-draw wall hits.
class GenericSampler {
 public:
  explicit GenericSampler(std::uint64_t seed = kDefaultSeed, long prime = 97, int exponent = 2);

  Rational uniform(const Rational& lo, const Rational& hi);
  RationalPoint point_in_box(const RationalPoint& lo, const RationalPoint& hi);
  // Random integer vector with entries in [-bound, bound], not all zero.
  WeightVector integer_vector(std::size_t n, std::int64_t bound);
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  double unit_double();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  Integer denominator_;
};

}  // namespace conecalc
