#include "conecalc/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "conecalc/errors.hpp"

namespace conecalc {

LaurentSeries::LaurentSeries(int order, int max_exponent)
    : order_(order), max_exponent_(max_exponent) {
  if (max_exponent_ >= order_) coeffs_.assign(max_exponent_ - order_ + 1, Rational(0));
}

Rational LaurentSeries::coefficient(int exponent) const {
  if (exponent > max_exponent_)
    throw MathError(ErrorKind::kInvalidInput,
                    "coefficient t^" + std::to_string(exponent) + " beyond truncation");
  if (exponent < order_) return 0;
  return coeffs_[exponent - order_];
}

void LaurentSeries::add_to(int exponent, const Rational& value) {
  if (exponent > max_exponent_) return;
  if (exponent < order_) {
    coeffs_.insert(coeffs_.begin(), order_ - exponent, Rational(0));
    order_ = exponent;
  }
  coeffs_[exponent - order_] += value;
}

int LaurentSeries::leading_exponent() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return order_ + static_cast<int>(i);
  return max_exponent_ + 1;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  if (coeffs_.empty()) return o;
  if (o.coeffs_.empty()) return *this;
  LaurentSeries r(std::min(order_, o.order_), std::min(max_exponent_, o.max_exponent_));
  for (int e = r.order_; e <= r.max_exponent_; ++e) r.coeffs_[e - r.order_] = coefficient(e) + o.coefficient(e);
  return r;
}

LaurentSeries LaurentSeries::operator*(const Rational& s) const {
  LaurentSeries r(*this);
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
  int lo = std::min(order_, o.order_);
  int hi = std::min(max_exponent_, o.max_exponent_);
  for (int e = lo; e <= hi; ++e)
    if (coefficient(e) != o.coefficient(e)) return false;
  return true;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int e = order_; e <= max_exponent_; ++e) {
    Rational c = coefficient(e);
    if (c == 0) continue;
    os << (first ? "" : " + ") << c.get_str();
    if (e != 0) os << "*t^" << e;
    first = false;
  }
  if (first) os << '0';
  os << " + O(t^" << max_exponent_ + 1 << ')';
  return os.str();
}

LaurentSeries laurent_expand(const RationalPoint& apex, const Polynomial& numerator,
                             const std::vector<WeightVector>& forms, const RationalPoint& xi0,
                             int max_exponent) {
  Rational denom = 1;
  for (const auto& f : forms) {
    Rational p = dot(f, xi0);
    if (p == 0)
      throw MathError(ErrorKind::kNonGenericDirection,
                      "form " + conecalc::to_string(f) + " vanishes on " + conecalc::to_string(xi0));
    denom *= p;
  }
  const int pole = static_cast<int>(forms.size());
  LaurentSeries out(-pole, max_exponent);
  if (numerator.is_zero()) return out;

  RationalPoint eval(numerator.nvars(), Rational(0));
  if (xi0.size() > eval.size())
    throw MathError(ErrorKind::kDimensionMismatch, "numerator has fewer variables than xi0");
  std::copy(xi0.begin(), xi0.end(), eval.begin());

  const int top = max_exponent + pole;  // highest power of t needed before the shift
  if (top < 0) return out;
  std::vector<Rational> num_by_degree(top + 1, Rational(0));
  for (int k = 0; k <= std::min(top, numerator.total_degree()); ++k)
    num_by_degree[k] = numerator.homogeneous_part(k).evaluate(eval);

  const Rational a = -dot(apex, xi0);
  std::vector<Rational> expo(top + 1);
  Rational power = 1;
  for (int j = 0; j <= top; ++j) {
    expo[j] = power / Rational(factorial(j));
    power *= a;
  }
  for (int j = 0; j <= top; ++j)
    for (int k = 0; j + k <= top; ++k) {
      if (num_by_degree[k] == 0) continue;
      out.add_to(j + k - pole, expo[j] * num_by_degree[k] / denom);
    }
  return out;
}

LaurentSeries laurent_expand(const RationalPoint& apex, const std::vector<WeightVector>& forms,
                             const RationalPoint& xi0, int max_exponent,
                             const Rational& coefficient) {
  Polynomial c = Polynomial::constant(xi0.size() + 1, coefficient);
  return laurent_expand(apex, c, forms, xi0, max_exponent);
}

}  // namespace conecalc
