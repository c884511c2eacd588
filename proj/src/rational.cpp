#include "conecalc/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "conecalc/errors.hpp"

namespace conecalc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kZeroVector: return "zero vector";
    case ErrorKind::kNonGenericDirection: return "non-generic direction";
    case ErrorKind::kNonGenericPoint: return "non-generic point";
    case ErrorKind::kSingularTerm: return "singular term";
    case ErrorKind::kImproperTerm: return "improper term";
    case ErrorKind::kImproperProjection: return "improper projection";
    case ErrorKind::kDistributionalTransform: return "distributional transform";
    case ErrorKind::kDecompositionFailure: return "decomposition failure";
    case ErrorKind::kNonGenericCircle: return "non-generic circle";
    case ErrorKind::kInvalidPolytope: return "invalid polytope";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kInvalidInput: return "invalid input";
  }
  return "error";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto strip = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  strip(s);
  if (s.empty()) throw InputError("empty rational literal");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  strip(num);
  strip(den);
  if (num.empty() || den.empty() || !valid_int(num) || !valid_int(den))
    throw InputError("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(num.begin());
  if (den[0] == '+') den.erase(den.begin());
  Integer n(num), d(den);
  if (d == 0) throw InputError("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const RationalPoint& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const WeightVector& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ')';
  return os.str();
}

RationalPoint to_point(const WeightVector& w) {
  RationalPoint p;
  p.reserve(w.size());
  for (auto c : w) p.emplace_back(static_cast<long>(c));
  return p;
}

RationalPoint zero_point(std::size_t n) { return RationalPoint(n, Rational(0)); }

static void require_same(std::size_t a, std::size_t b) {
  if (a != b)
    throw MathError(ErrorKind::kDimensionMismatch,
                    "vector lengths " + std::to_string(a) + " and " + std::to_string(b));
}

Rational dot(const WeightVector& a, const RationalPoint& b) {
  require_same(a.size(), b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Rational(static_cast<long>(a[i])) * b[i];
  return s;
}

Rational dot(const RationalPoint& a, const RationalPoint& b) {
  require_same(a.size(), b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t dot(const WeightVector& a, const WeightVector& b) {
  require_same(a.size(), b.size());
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RationalPoint add(const RationalPoint& a, const RationalPoint& b) {
  require_same(a.size(), b.size());
  RationalPoint r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

RationalPoint sub(const RationalPoint& a, const RationalPoint& b) {
  require_same(a.size(), b.size());
  RationalPoint r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

RationalPoint add(const RationalPoint& a, const WeightVector& b) {
  require_same(a.size(), b.size());
  RationalPoint r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += static_cast<long>(b[i]);
  return r;
}

RationalPoint sub(const RationalPoint& a, const WeightVector& b) {
  require_same(a.size(), b.size());
  RationalPoint r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= static_cast<long>(b[i]);
  return r;
}

RationalPoint scale(const RationalPoint& a, const Rational& s) {
  RationalPoint r(a);
  for (auto& c : r) c *= s;
  return r;
}

WeightVector negate(const WeightVector& w) {
  WeightVector r(w);
  for (auto& c : r) c = -c;
  return r;
}

bool is_zero(const WeightVector& w) {
  for (auto c : w)
    if (c != 0) return false;
  return true;
}

Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace conecalc
