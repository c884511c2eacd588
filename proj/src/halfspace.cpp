#include "conecalc/halfspace.hpp"

#include <map>

#include "conecalc/errors.hpp"
#include "conecalc/linalg.hpp"

namespace conecalc {

namespace {

struct Row {
  RationalPoint coeffs;          // inequality coeffs . v > 0
  std::vector<Rational> mult;    // nonnegative combination of input rows
};

// Normalizes a row direction to a canonical key so duplicates collapse.
std::vector<Rational> direction_key(const RationalPoint& c) {
  Rational scale = 0;
  for (const auto& x : c)
    if (x != 0) {
      scale = abs(x);
      break;
    }
  std::vector<Rational> key;
  for (const auto& x : c) key.push_back(scale == 0 ? x : x / scale);
  return key;
}

}  // namespace

bool verify_witness(const std::vector<WeightVector>& generators, const WeightVector& v) {
  for (const auto& g : generators)
    if (dot(g, v) <= 0) return false;
  return true;
}

bool verify_certificate(const std::vector<WeightVector>& generators,
                        const std::vector<Rational>& y) {
  if (y.size() != generators.size() || generators.empty()) return false;
  bool nonzero = false;
  for (const auto& c : y) {
    if (c < 0) return false;
    if (c != 0) nonzero = true;
  }
  if (!nonzero) return false;
  RationalPoint s = zero_point(generators[0].size());
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) s[j] += y[i] * Rational(static_cast<long>(generators[i][j]));
  for (const auto& c : s)
    if (c != 0) return false;
  return true;
}

HalfSpaceResult strict_halfspace(const std::vector<WeightVector>& generators, std::size_t dim,
                                 const std::optional<WeightVector>& hint) {
  HalfSpaceResult out;
  for (const auto& g : generators)
    if (g.size() != dim) throw MathError(ErrorKind::kDimensionMismatch, "generator length");
  if (hint && hint->size() == dim && verify_witness(generators, *hint)) {
    out.witness = *hint;
    return out;
  }
  const std::size_t k = generators.size();

  // stages[j] holds rows involving only variables 0..j-1 after elimination.
  std::vector<std::vector<Row>> stages(dim + 1);
  {
    std::map<std::vector<Rational>, bool> seen;
    for (std::size_t i = 0; i < k; ++i) {
      Row r{to_point(generators[i]), std::vector<Rational>(k, Rational(0))};
      r.mult[i] = 1;
      auto key = direction_key(r.coeffs);
      if (seen.emplace(key, true).second) stages[dim].push_back(std::move(r));
    }
  }
  for (std::size_t var = dim; var-- > 0;) {
    std::vector<Row> pos, neg, zero;
    for (auto& r : stages[var + 1]) {
      int s = sign(r.coeffs[var]);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
    }
    std::vector<Row> next;
    std::map<std::vector<Rational>, bool> seen;
    auto push = [&](Row r) {
      r.coeffs.resize(var);
      auto key = direction_key(r.coeffs);
      if (seen.emplace(key, true).second) next.push_back(std::move(r));
    };
    for (auto& r : zero) push(r);
    for (const auto& p : pos)
      for (const auto& q : neg) {
        Rational a = p.coeffs[var], b = -q.coeffs[var];
        Row c{RationalPoint(var + 1), std::vector<Rational>(k)};
        for (std::size_t j = 0; j <= var; ++j) c.coeffs[j] = b * p.coeffs[j] + a * q.coeffs[j];
        for (std::size_t j = 0; j < k; ++j) c.mult[j] = b * p.mult[j] + a * q.mult[j];
        push(std::move(c));
      }
    stages[var] = std::move(next);
  }
  // After eliminating all variables, any surviving row reads 0 > 0.
  if (!stages[0].empty()) {
    out.feasible = false;
    out.certificate = stages[0].front().mult;
    return out;
  }
  RationalPoint v = zero_point(dim);
  for (std::size_t var = 0; var < dim; ++var) {
    bool has_lo = false, has_hi = false;
    Rational lo, hi;
    for (const auto& r : stages[var + 1]) {
      const Rational& a = r.coeffs[var];
      if (a == 0) continue;
      Rational rest = 0;
      for (std::size_t j = 0; j < var; ++j) rest += r.coeffs[j] * v[j];
      Rational bound = -rest / a;
      if (a > 0) {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      } else {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      }
    }
    if (has_lo && has_hi)
      v[var] = (lo + hi) / 2;
    else if (has_lo)
      v[var] = lo + 1;
    else if (has_hi)
      v[var] = hi - 1;
    else
      v[var] = 0;
  }
  bool all_zero = true;
  for (const auto& c : v)
    if (c != 0) all_zero = false;
  if (all_zero) {
    // No constraints at all (no generators): any direction works.
    v.assign(dim, Rational(0));
    if (dim) v[0] = 1;
  }
  out.witness = dim ? primitive_integer(v) : WeightVector{};
  return out;
}

}  // namespace conecalc
