#include "conecalc/localization.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <numeric>
#include <set>

#include "conecalc/errors.hpp"
#include "conecalc/linalg.hpp"

namespace conecalc {

Polynomial euler_product(const std::vector<WeightVector>& weights, std::size_t nvars) {
  std::vector<Polynomial> f;
  for (const auto& w : weights) f.push_back(Polynomial::linear_form(w, nvars));
  return product(f, nvars);
}

FixedPointDatum full_datum(std::string label, RationalPoint moment, std::vector<WeightVector> weights) {
  FixedPointDatum d;
  d.label = std::move(label);
  d.numerator = Polynomial::constant(moment.size() + 1, 1);
  d.moment = std::move(moment);
  d.weights = std::move(weights);
  return d;
}

void validate(const FixedPointDatum& datum) {
  const std::size_t n = datum.rank();
  for (const auto& w : datum.weights) {
    if (w.size() != n) throw MathError(ErrorKind::kDimensionMismatch, "weight length at " + datum.label);
    if (is_zero(w)) throw MathError(ErrorKind::kZeroVector, "zero weight at " + datum.label);
  }
  if (datum.numerator.nvars() != n + 1)
    throw MathError(ErrorKind::kDimensionMismatch, "numerator at " + datum.label + " must have n+1 variables");
  if (!datum.numerator.is_zero() && datum.numerator.total_degree() > static_cast<int>(datum.weights.size()))
    throw MathError(ErrorKind::kImproperTerm, "numerator degree exceeds the number of weights at " + datum.label);
}

namespace {

void for_each_subset(std::size_t m, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Polynomial complement_product(const std::vector<WeightVector>& forms, const std::vector<std::size_t>& subset,
                              std::size_t nvars) {
  Polynomial p = Polynomial::constant(nvars, 1);
  std::size_t s = 0;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (s < subset.size() && subset[s] == i) {
      ++s;
      continue;
    }
    p *= Polynomial::linear_form(forms[i], nvars);
  }
  return p;
}

}  // namespace

MultiplicityDecomposition decompose_over_forms(const Polynomial& numerator,
                                               const std::vector<WeightVector>& forms,
                                               std::size_t d, const WeightVector& v,
                                               const std::vector<int>* pair_ids) {
  const std::size_t nvars = numerator.nvars();
  MultiplicityDecomposition dec;
  dec.forms = forms;
  std::vector<int> signs;
  for (const auto& f : forms) {
    if (f.size() > nvars || f.size() != v.size())
      throw MathError(ErrorKind::kDimensionMismatch, "form length");
    auto p = dot(f, v);
    if (p == 0)
      throw MathError(ErrorKind::kNonGenericDirection,
                      "weight " + to_string(f) + " is perpendicular to v=" + to_string(v));
    signs.push_back(p > 0 ? 1 : -1);
  }
  if (numerator.is_zero()) return dec;
  if (d > forms.size())
    throw MathError(ErrorKind::kDecompositionFailure, "cycle dimension exceeds the number of weights");
  const int degree = static_cast<int>(forms.size() - d);
  if (!numerator.is_homogeneous(degree))
    throw MathError(ErrorKind::kDecompositionFailure,
                    "numerator " + numerator.to_string() + " is not homogeneous of degree " + std::to_string(degree));

  // Candidate subsets, one per distinct sub-multiset.
  std::vector<std::vector<std::size_t>> subsets;
  std::set<std::vector<WeightVector>> seen;
  for_each_subset(forms.size(), d, [&](const std::vector<std::size_t>& s) {
    std::vector<WeightVector> key;
    for (auto i : s) key.push_back(forms[i]);
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) subsets.push_back(s);
  });
  if (pair_ids) {
    auto doubled = [&](const std::vector<std::size_t>& s) {
      std::set<int> ids;
      for (auto i : s)
        if (!ids.insert((*pair_ids)[i]).second) return true;
      return false;
    };
    std::stable_partition(subsets.begin(), subsets.end(), [&](const auto& s) { return !doubled(s); });
  }

  std::vector<Polynomial> columns;
  std::vector<int> sigmas;
  std::map<Polynomial::Exponents, std::size_t> row_of;
  for (const auto& s : subsets) {
    int sigma = 1;
    for (auto i : s) sigma *= signs[i];
    sigmas.push_back(sigma);
    columns.push_back(complement_product(forms, s, nvars) * Rational(sigma));
    for (const auto& [e, c] : columns.back().terms()) row_of.emplace(e, row_of.size());
  }
  for (const auto& [e, c] : numerator.terms())
    if (!row_of.count(e))
      throw MathError(ErrorKind::kDecompositionFailure,
                      "numerator " + numerator.to_string() + " is outside the span of the weight products");

  Matrix a(row_of.size(), RationalPoint(columns.size(), Rational(0)));
  RationalPoint rhs(row_of.size(), Rational(0));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [e, c] : columns[j].terms()) a[row_of[e]][j] = c;
  for (const auto& [e, c] : numerator.terms()) rhs[row_of[e]] = c;

  auto sol = solve_linear(a, rhs);
  if (sol.kind == LinearSolution::Kind::kNone)
    throw MathError(ErrorKind::kDecompositionFailure,
                    "numerator " + numerator.to_string() + " is outside the span of the weight products");
  std::vector<Integer> n;
  bool integral = std::all_of(sol.particular.begin(), sol.particular.end(), [](const Rational& r) { return is_integer(r); });
  if (integral) {
    for (const auto& r : sol.particular) n.push_back(r.get_num());
  } else {
    IntegerMatrix ai(a.size(), std::vector<Integer>(columns.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < columns.size(); ++j) ai[i][j] = a[i][j].get_num();
    auto isol = solve_integer(ai, rhs);
    if (!isol)
      throw MathError(ErrorKind::kDecompositionFailure,
                      "no integer decomposition of " + numerator.to_string());
    n = *isol;
  }
  for (std::size_t j = 0; j < subsets.size(); ++j)
    if (n[j] != 0) dec.entries.push_back({subsets[j], sigmas[j], n[j]});

  if (recombine(dec, nvars) != numerator)
    throw MathError(ErrorKind::kDecompositionFailure, "decomposition does not recombine");
  return dec;
}

MultiplicityDecomposition decompose_multiplicity(const FixedPointDatum& datum, std::size_t d,
                                                 const WeightVector& v) {
  validate(datum);
  if (!datum.numerator.hbar_free())
    throw MathError(ErrorKind::kInvalidInput, "numerator at " + datum.label + " involves hbar");
  return decompose_over_forms(datum.numerator, datum.weights, d, v);
}

Polynomial recombine(const MultiplicityDecomposition& dec, std::size_t nvars) {
  Polynomial total(nvars);
  for (const auto& e : dec.entries)
    total += complement_product(dec.forms, e.subset, nvars) * Rational(e.n * e.sigma);
  return total;
}

SignedConeSum cone_terms(const RationalPoint& apex, const MultiplicityDecomposition& dec,
                         const WeightVector& v) {
  SignedConeSum raw(apex.size());
  for (const auto& e : dec.entries) {
    std::vector<WeightVector> rays;
    for (auto i : e.subset) rays.push_back(dec.forms[i]);
    raw.add(cone(apex, rays, Rational(e.n * e.sigma)));
  }
  return flip_to_direction(raw, v);
}

SignedConeSum heckman_cone_sum(const std::vector<FixedPointDatum>& data, std::size_t d,
                               const WeightVector& v) {
  SignedConeSum out(v.size());
  for (const auto& f : data) {
    if (f.rank() != v.size()) throw MathError(ErrorKind::kDimensionMismatch, "direction length");
    out.append(cone_terms(f.moment, decompose_multiplicity(f, d, v), v));
  }
  return out;
}

LaurentSeries localization_series(const std::vector<FixedPointDatum>& data, const RationalPoint& xi0,
                                  int max_exponent) {
  LaurentSeries total;
  for (const auto& f : data) {
    validate(f);
    total = total + laurent_expand(f.moment, f.numerator, f.weights, xi0, max_exponent);
  }
  return total;
}

LaurentSeries cone_sum_series(const SignedConeSum& sum, const RationalPoint& xi0, int max_exponent) {
  LaurentSeries total;
  for (const auto& t : sum.terms()) {
    if (!t.lineality.empty())
      throw MathError(ErrorKind::kDistributionalTransform, "term has a lineality space");
    const std::size_t nb = t.boxes.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << nb); ++mask) {
      RationalPoint apex = t.apex;
      Rational c = t.coefficient;
      std::vector<WeightVector> rays = t.rays;
      for (std::size_t j = 0; j < nb; ++j) {
        rays.push_back(t.boxes[j]);
        if (mask & (std::size_t{1} << j)) {
          apex = add(apex, t.boxes[j]);
          c = -c;
        }
      }
      total = total + laurent_expand(apex, rays, xi0, max_exponent, c);
    }
  }
  if (total.coefficients().empty()) total = LaurentSeries(0, max_exponent);
  return total;
}

HolomorphyVerdict holomorphy_check(const std::vector<FixedPointDatum>& data,
                                   const std::vector<RationalPoint>& directions, int max_exponent) {
  HolomorphyVerdict v;
  for (const auto& xi : directions) {
    auto s = localization_series(data, xi, max_exponent);
    for (int e = s.order(); e < 0; ++e) {
      if (s.coefficient(e) != 0) {
        v.passed = false;
        v.direction = xi;
        v.exponent = e;
        v.value = s.coefficient(e);
        return v;
      }
    }
  }
  return v;
}

MomentsVerdict moments_match(const std::vector<FixedPointDatum>& data, const SignedConeSum& sum,
                             const RationalPoint& xi0, int max_exponent) {
  MomentsVerdict v;
  v.localization = localization_series(data, xi0, max_exponent);
  v.cones = cone_sum_series(sum, xi0, max_exponent);
  int lo = std::min(v.localization.order(), v.cones.order());
  for (int e = lo; e <= max_exponent; ++e) {
    if (v.localization.coefficient(e) != v.cones.coefficient(e)) {
      v.passed = false;
      v.exponent = e;
      return v;
    }
  }
  return v;
}

Rational moment_from_series(const LaurentSeries& series, int j) {
  Rational c = series.coefficient(j) * Rational(factorial(j));
  return (j % 2 == 0) ? c : Rational(-c);
}

}  // namespace conecalc
