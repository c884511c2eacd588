#include "conecalc/sampler.hpp"

#include "conecalc/errors.hpp"

namespace conecalc {

GenericSampler::GenericSampler(std::uint64_t seed, long prime, int exponent) : engine_(seed) {
  denominator_ = 1;
  for (int i = 0; i < exponent; ++i) denominator_ *= prime;
}

Rational GenericSampler::uniform(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw MathError(ErrorKind::kInvalidInput, "empty sampling interval");
  // Numerators k with lo <= k / D <= hi, drawn uniformly.
  Rational lo_scaled = lo * Rational(denominator_);
  Rational hi_scaled = hi * Rational(denominator_);
  Integer kmin, kmax;
  mpz_cdiv_q(kmin.get_mpz_t(), lo_scaled.get_num_mpz_t(), lo_scaled.get_den_mpz_t());
  mpz_fdiv_q(kmax.get_mpz_t(), hi_scaled.get_num_mpz_t(), hi_scaled.get_den_mpz_t());
  if (kmax < kmin) return lo;
  Integer span = kmax - kmin + 1;
  Integer pick;
  if (span.fits_ulong_p() && span.get_ui() < (1UL << 62)) {
    std::uniform_int_distribution<unsigned long> dist(0, span.get_ui() - 1);
    pick = dist(engine_);
  } else {
    pick = Integer(static_cast<unsigned long>(engine_() >> 2)) % span;
  }
  Rational q(kmin + pick, denominator_);
  q.canonicalize();
  return q;
}

RationalPoint GenericSampler::point_in_box(const RationalPoint& lo, const RationalPoint& hi) {
  RationalPoint p;
  for (std::size_t i = 0; i < lo.size(); ++i) p.push_back(uniform(lo[i], hi[i]));
  return p;
}

std::int64_t GenericSampler::integer(std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  return dist(engine_);
}

WeightVector GenericSampler::integer_vector(std::size_t n, std::int64_t bound) {
  while (true) {
    WeightVector w(n);
    for (auto& c : w) c = integer(-bound, bound);
    if (!is_zero(w)) return w;
  }
}

double GenericSampler::unit_double() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

}  // namespace conecalc
