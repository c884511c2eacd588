#include "conecalc/polynomial.hpp"

#include <sstream>

#include "conecalc/errors.hpp"

namespace conecalc {

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw MathError(ErrorKind::kDimensionMismatch, "variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  Polynomial p(nvars);
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::linear_form(const WeightVector& w, std::size_t nvars) {
  if (w.size() > nvars) throw MathError(ErrorKind::kDimensionMismatch, "linear form too long");
  Polynomial p(nvars);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    Exponents e(nvars, 0);
    e[i] = 1;
    p.add_term(e, Rational(static_cast<long>(w[i])));
  }
  return p;
}

Polynomial Polynomial::monomial(const Exponents& e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw MathError(ErrorKind::kDimensionMismatch, "exponent vector length");
  for (int x : e)
    if (x < 0) throw MathError(ErrorKind::kInvalidInput, "negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

std::optional<int> Polynomial::homogeneous_degree() const {
  std::optional<int> d;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (d && *d != s) return std::nullopt;
    d = s;
  }
  return d;
}

bool Polynomial::is_homogeneous(int degree) const {
  if (is_zero()) return true;
  auto d = homogeneous_degree();
  return d && *d == degree;
}

void Polynomial::require_compatible(const Polynomial& o) const {
  if (nvars_ != o.nvars_)
    throw MathError(ErrorKind::kDimensionMismatch, "polynomials in different variable counts");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_compatible(o);
  Polynomial r(*this);
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  require_compatible(o);
  Polynomial r(*this);
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_compatible(o);
  Polynomial r(nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::operator*(const Rational& s) const {
  Polynomial r(nvars_);
  if (s == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
  return r;
}

Rational Polynomial::evaluate(const RationalPoint& point) const {
  if (point.size() != nvars_) throw MathError(ErrorKind::kDimensionMismatch, "evaluation point length");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    total += m;
  }
  return total;
}

Polynomial Polynomial::homogeneous_part(int degree) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (s == degree) r.terms_.emplace(e, c);
  }
  return r;
}

Polynomial Polynomial::substitute_zero(std::size_t var) const {
  if (var >= nvars_) throw MathError(ErrorKind::kDimensionMismatch, "variable index out of range");
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_)
    if (e[var] == 0) r.terms_.emplace(e, c);
  return r;
}

bool Polynomial::divisible_by_variable(std::size_t var) const {
  if (var >= nvars_) throw MathError(ErrorKind::kDimensionMismatch, "variable index out of range");
  for (const auto& [e, c] : terms_)
    if (e[var] == 0) return false;
  return true;
}

bool Polynomial::hbar_free() const {
  if (nvars_ == 0) return true;
  for (const auto& [e, c] : terms_)
    if (e[nvars_ - 1] != 0) return false;
  return true;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  auto name = [&](std::size_t i) {
    if (i < names.size()) return names[i];
    if (i + 1 == nvars_) return std::string("h");
    return "y" + std::to_string(i + 1);
  };
  std::ostringstream os;
  bool first = true;
  // Highest degree first reads better.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    bool constant_term = true;
    for (int x : e)
      if (x) constant_term = false;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool wrote = false;
    if (mag != 1 || constant_term) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (wrote) os << '*';
      os << name(i);
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

Polynomial pow(const Polynomial& p, unsigned k) {
  Polynomial r = Polynomial::constant(p.nvars(), 1);
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

Polynomial product(const std::vector<Polynomial>& factors, std::size_t nvars) {
  Polynomial r = Polynomial::constant(nvars, 1);
  for (const auto& f : factors) r *= f;
  return r;
}

}  // namespace conecalc
