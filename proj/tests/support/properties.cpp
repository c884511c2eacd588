#include "properties.hpp"

#include <cmath>
#include <sstream>

#include "conecalc/cone.hpp"
#include "conecalc/errors.hpp"
#include "conecalc/laurent.hpp"
#include "conecalc/linalg.hpp"
#include "conecalc/localization.hpp"
#include "conecalc/polynomial.hpp"
#include "conecalc/sampler.hpp"
#include "oracles.hpp"

namespace property {

using namespace conecalc;

namespace {

struct Random {
  GenericSampler s;
  explicit Random(std::uint64_t seed) : s(seed) {}

  WeightVector nonzero(std::size_t n, std::int64_t bound) { return s.integer_vector(n, bound); }

  // Rays pair positively with `w` and span R^n.
  ConeTerm pointed_term(std::size_t n, std::size_t k, WeightVector& w) {
    while (true) {
      w = nonzero(n, 3);
      std::vector<WeightVector> rays;
      while (rays.size() < k) {
        auto g = nonzero(n, 2);
        if (dot(w, g) > 0) rays.push_back(g);
      }
      if (rank(rays) != n) continue;
      RationalPoint apex(n);
      for (auto& a : apex) a = s.uniform(-2, 2);
      Rational coef = 0;
      while (coef == 0) coef = s.integer(-3, 3);
      return cone(apex, rays, coef);
    }
  }

  RationalPoint point(const RationalPoint& centre, const Rational& radius) {
    RationalPoint lo = centre, hi = centre;
    for (auto& v : lo) v -= radius;
    for (auto& v : hi) v += radius;
    return s.point_in_box(lo, hi);
  }

  // Nonzero against every listed vector.
  RationalPoint generic_dual(std::size_t n, const std::vector<WeightVector>& against) {
    while (true) {
      auto xi = point(zero_point(n), 3);
      bool ok = true;
      for (const auto& g : against) ok = ok && dot(g, xi) != 0;
      if (ok) return xi;
    }
  }
  WeightVector generic_direction(std::size_t n, const std::vector<WeightVector>& against) {
    while (true) {
      auto v = nonzero(n, 5);
      bool ok = true;
      for (const auto& g : against) ok = ok && dot(v, g) != 0;
      if (ok) return v;
    }
  }

  Polynomial polynomial(std::size_t nvars) {
    Polynomial p(nvars);
    const auto terms = s.integer(0, 4);
    for (std::int64_t t = 0; t < terms; ++t) {
      Polynomial::Exponents e(nvars);
      for (auto& x : e) x = static_cast<int>(s.integer(0, 2));
      p.add_term(e, ratio(s.integer(-4, 4), s.integer(1, 3)));
    }
    return p;
  }
};

std::vector<WeightVector> all_rays(const SignedConeSum& sum) {
  std::vector<WeightVector> out;
  for (const auto& t : sum.terms()) out.insert(out.end(), t.rays.begin(), t.rays.end());
  return out;
}

template <class Trial>
Outcome run(const std::string& name, std::size_t trials, Trial trial) {
  Outcome o;
  o.name = name;
  for (std::size_t i = 0; i < trials; ++i) {
    std::string why;
    bool ok = false;
    try {
      ok = trial(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    ++o.trials;
    if (!ok) {
      ++o.failures;
      if (o.first_failure.empty()) o.first_failure = "trial " + std::to_string(i) + ": " + why;
    }
  }
  return o;
}

}  // namespace

Outcome flip_preserves_fourier(std::uint64_t seed, std::size_t trials) {
  Random r(seed);
  return run("flip preserves the Fourier transform", trials, [&](std::string& why) {
    const std::size_t n = r.s.integer(1, 3);
    SignedConeSum sum(n);
    const auto terms = r.s.integer(1, 3);
    for (std::int64_t i = 0; i < terms; ++i) {
      WeightVector w;
      sum.add(r.pointed_term(n, r.s.integer(n, 4), w));
    }
    const auto v = r.generic_direction(n, all_rays(sum));
    const auto flipped = flip_to_direction(sum, v);
    const auto xi = r.generic_dual(n, all_rays(sum));
    if (fourier_sum(sum, xi) == fourier_sum(flipped, xi)) return true;
    why = "transforms differ at xi=" + to_string(xi) + " for v=" + to_string(v);
    return false;
  });
}

Outcome difference_is_pointwise(std::uint64_t seed, std::size_t trials) {
  Random r(seed);
  return run("difference is pointwise", trials, [&](std::string& why) {
    const std::size_t n = r.s.integer(1, 3);
    WeightVector w;
    const auto term = r.pointed_term(n, r.s.integer(n, std::min<std::int64_t>(n + 1, 4)), w);
    SignedConeSum sum(n, {term});
    WeightVector lambda = r.s.integer(0, 1) ? term.rays[r.s.integer(0, term.rays.size() - 1)] : r.nonzero(n, 2);
    const auto diff = difference(sum, lambda);
    DensityEvaluator f(sum), df(diff);
    for (int attempt = 0; attempt < 200; ++attempt) {
      auto x = r.point(term.apex, 3);
      auto shifted = add(x, lambda);
      if (!f.is_generic(x) || !f.is_generic(shifted) || !df.is_generic(x)) continue;
      Rational lhs = df(x), rhs = f(x) - f(shifted);
      if (lhs == rhs) return true;
      why = "at " + to_string(x) + ": " + to_string(lhs) + " vs " + to_string(rhs);
      return false;
    }
    why = "no generic point found";
    return false;
  });
}

Outcome density_matches_monte_carlo(std::uint64_t seed, std::size_t trials) {
  Random r(seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return run("density matches Monte Carlo within 3 sigma", trials, [&](std::string& why) {
    const std::size_t n = r.s.integer(1, 3);
    WeightVector w;
    const auto term = r.pointed_term(n, r.s.integer(n, 4), w);
    DensityEvaluator f(SignedConeSum(n, {term}));
    for (int attempt = 0; attempt < 200; ++attempt) {
      RationalPoint x = term.apex;
      for (const auto& g : term.rays) {
        Rational t = r.s.uniform(0, Rational(3, 2));
        for (std::size_t i = 0; i < n; ++i) x[i] += t * g[i];
      }
      x = r.point(x, Rational(1, 4));
      if (!f.is_generic(x)) continue;
      const Rational exact = f(x);
      const auto mc = oracle::mc_density(term, x, w, rng, 40000);
      const double gap = std::abs(mc.estimate - exact.get_d());
      if (gap <= 3 * mc.sigma + 1e-9) return true;
      std::ostringstream os;
      os << "at " << to_string(x) << ": exact " << to_string(exact) << ", estimate " << mc.estimate << " +- "
         << mc.sigma;
      why = os.str();
      return false;
    }
    why = "no generic point found";
    return false;
  });
}

Outcome polynomial_ring_laws(std::uint64_t seed, std::size_t trials) {
  Random r(seed);
  return run("polynomial ring laws", trials, [&](std::string& why) {
    const std::size_t nv = r.s.integer(1, 3) + 1;
    auto a = r.polynomial(nv), b = r.polynomial(nv), c = r.polynomial(nv);
    RationalPoint at(nv);
    for (auto& q : at) q = r.s.uniform(-2, 2);
    std::vector<std::pair<const char*, bool>> laws{
        {"additive associativity", (a + b) + c == a + (b + c)},
        {"additive commutativity", a + b == b + a},
        {"multiplicative associativity", (a * b) * c == a * (b * c)},
        {"multiplicative commutativity", a * b == b * a},
        {"distributivity", a * (b + c) == a * b + a * c},
        {"additive inverse", (a - a).is_zero()},
        {"unit", a * Polynomial::constant(nv, 1) == a},
        {"h -> 0 is multiplicative", (a * b).hbar_to_zero() == a.hbar_to_zero() * b.hbar_to_zero()},
        {"evaluation is multiplicative", (a * b).evaluate(at) == a.evaluate(at) * b.evaluate(at)},
        {"evaluation is additive", (a + b).evaluate(at) == a.evaluate(at) + b.evaluate(at)},
    };
    for (const auto& [law, ok] : laws)
      if (!ok) {
        why = std::string(law) + " fails for a=" + a.to_string() + ", b=" + b.to_string() + ", c=" + c.to_string();
        return false;
      }
    return true;
  });
}

Outcome rational_inverse(std::uint64_t seed, std::size_t trials) {
  Random r(seed);
  return run("rational inverse", trials, [&](std::string& why) {
    Rational a = 0, b = 0;
    while (a == 0) a = r.s.uniform(-5, 5);
    while (b == 0) b = r.s.uniform(-5, 5);
    if ((a / b) * (b / a) == 1) return true;
    why = to_string(a) + ", " + to_string(b);
    return false;
  });
}

Outcome det_permutation_sign(std::uint64_t seed, std::size_t trials) {
  Random r(seed);
  return run("det changes sign with the permutation", trials, [&](std::string& why) {
    const std::size_t n = r.s.integer(2, 4);
    Matrix m(n, RationalPoint(n));
    for (auto& row : m)
      for (auto& v : row) v = r.s.integer(-4, 4);
    const Rational d = det(m);
    auto swapped = m;
    std::swap(swapped[0], swapped[n - 1]);
    auto rotated = m;
    std::rotate(rotated.begin(), rotated.begin() + 1, rotated.end());
    const Rational cycle_sign = (n % 2 == 1) ? 1 : -1;
    if (det(swapped) == -d && det(rotated) == cycle_sign * d) return true;
    why = "det " + to_string(d) + ", swapped " + to_string(det(swapped)) + ", rotated " + to_string(det(rotated));
    return false;
  });
}

Outcome laurent_recovers_exponential(std::uint64_t seed, std::size_t trials) {
  Random r(seed);
  return run("laurent expansion recovers the exponential", trials, [&](std::string& why) {
    const std::size_t n = r.s.integer(1, 3);
    const auto m = r.s.integer(1, 3);
    std::vector<WeightVector> forms;
    for (std::int64_t i = 0; i < m; ++i) forms.push_back(r.nonzero(n, 3));
    RationalPoint mu(n);
    for (auto& v : mu) v = r.s.integer(-3, 3);
    const auto xi = r.generic_dual(n, forms);
    const int k = 4;
    const auto series = laurent_expand(mu, forms, xi, k);
    Rational pairing = 1;
    for (const auto& f : forms) pairing *= dot(f, xi);
    const Rational a = -dot(mu, xi);
    Rational power = 1;
    for (int e = 0; e <= k + m; ++e) {
      const Rational want = power / Rational(factorial(e));
      const Rational got = series.coefficient(e - static_cast<int>(m)) * pairing;
      if (got != want) {
        why = "coefficient " + std::to_string(e) + ": " + to_string(got) + " vs " + to_string(want);
        return false;
      }
      power *= a;
    }
    return true;
  });
}

Outcome decomposition_recombines(std::uint64_t seed, std::size_t trials) {
  Random r(seed);
  return run("decomposition recombines", trials, [&](std::string& why) {
    const std::size_t n = r.s.integer(1, 2);
    const std::size_t nv = n + 1;
    const std::size_t m = r.s.integer(1, 4);
    std::vector<WeightVector> forms;
    for (std::size_t i = 0; i < m; ++i) forms.push_back(r.nonzero(n, 2));
    const std::size_t d = r.s.integer(0, m);
    // Random integer combination of complementary products over d-subsets.
    Polynomial numerator(nv);
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != d) continue;
      Polynomial prod = Polynomial::constant(nv, r.s.integer(-2, 2));
      for (std::size_t i = 0; i < m; ++i)
        if (!(mask >> i & 1)) prod *= Polynomial::linear_form(forms[i], nv);
      numerator += prod;
    }
    const auto v = r.generic_direction(n, forms);
    const auto dec = decompose_over_forms(numerator, forms, d, v);
    if (recombine(dec, nv) == numerator) return true;
    why = "numerator " + numerator.to_string() + " recombined as " + recombine(dec, nv).to_string();
    return false;
  });
}

Outcome full_difference_is_compact(std::uint64_t seed, std::size_t trials) {
  Random r(seed);
  return run("differencing every ray leaves a parallelepiped", trials, [&](std::string& why) {
    const std::size_t n = r.s.integer(1, 3);
    WeightVector w;
    const auto term = r.pointed_term(n, n, w);
    SignedConeSum sum(n, {term});
    for (const auto& g : term.rays) sum = difference(sum, g);
    if (sum.size() != 1 || !sum.terms()[0].rays.empty() || sum.terms()[0].boxes.size() != n) {
      why = "result is not a single box term";
      return false;
    }
    const Rational vol = abs(det(columns_matrix(term.rays)));
    RationalPoint inside = term.apex;
    for (const auto& g : term.rays) {
      Rational t = r.s.uniform(Rational(1, 10), Rational(9, 10));
      for (std::size_t i = 0; i < n; ++i) inside[i] -= t * g[i];
    }
    const Rational height = density_at(sum, inside);
    const Rational want = n % 2 ? Rational(-term.coefficient) : term.coefficient;
    if (height * vol == want) return true;
    why = "mass " + to_string(height * vol) + ", expected " + to_string(want);
    return false;
  });
}

Outcome projection_integrates(std::uint64_t seed, std::size_t trials) {
  Random r(seed);
  return run("projection integrates the last coordinate", trials, [&](std::string& why) {
    SignedConeSum sum(2);
    const auto terms = r.s.integer(1, 2);
    for (std::int64_t i = 0; i < terms; ++i) {
      std::vector<WeightVector> rays;
      const auto k = r.s.integer(2, 3);
      while (static_cast<std::int64_t>(rays.size()) < k) rays.push_back({r.s.integer(1, 2), r.s.integer(-2, 2)});
      if (rank(rays) != 2) {
        --i;
        continue;
      }
      sum.add(cone({r.s.uniform(-1, 1), r.s.uniform(-1, 1)}, rays, r.s.integer(1, 2) == 1 ? 1 : -1));
    }
    const auto projected = project_drop_last(sum);
    DensityEvaluator f(projected);
    for (int attempt = 0; attempt < 100; ++attempt) {
      const Rational x0 = r.s.uniform(-1, 4);
      if (!f.is_generic({x0})) continue;
      const Rational lhs = f({x0});
      const Rational rhs = oracle::integrate_last(sum, x0);
      if (lhs == rhs) return true;
      why = "at " + to_string(x0) + ": projected " + to_string(lhs) + ", integrated " + to_string(rhs);
      return false;
    }
    why = "no generic point found";
    return false;
  });
}

std::vector<Outcome> core_suites(std::uint64_t seed, std::size_t trials) {
  return {flip_preserves_fourier(seed, trials), difference_is_pointwise(seed + 1, trials),
          density_matches_monte_carlo(seed + 2, trials), polynomial_ring_laws(seed + 3, trials)};
}

}  // namespace property
