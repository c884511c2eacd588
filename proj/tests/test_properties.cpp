#include "doctest.h"

#include "conecalc/sampler.hpp"
#include "support/properties.hpp"

namespace {

constexpr std::size_t kTrials = 100;

void expect(const property::Outcome& o) {
  CAPTURE(o.name);
  CAPTURE(o.first_failure);
  CHECK(o.trials == kTrials);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("flip preserves the Fourier transform") { expect(property::flip_preserves_fourier(conecalc::kDefaultSeed, kTrials)); }
TEST_CASE("difference is pointwise") { expect(property::difference_is_pointwise(conecalc::kDefaultSeed + 1, kTrials)); }
TEST_CASE("density against Monte Carlo") { expect(property::density_matches_monte_carlo(conecalc::kDefaultSeed + 2, kTrials)); }
TEST_CASE("polynomial ring laws") { expect(property::polynomial_ring_laws(conecalc::kDefaultSeed + 3, kTrials)); }
TEST_CASE("rational inverse") { expect(property::rational_inverse(conecalc::kDefaultSeed + 4, kTrials)); }
TEST_CASE("det and row permutations") { expect(property::det_permutation_sign(conecalc::kDefaultSeed + 5, kTrials)); }
TEST_CASE("laurent expansion and the exponential") { expect(property::laurent_recovers_exponential(conecalc::kDefaultSeed + 6, kTrials)); }
TEST_CASE("decomposition recombines") { expect(property::decomposition_recombines(conecalc::kDefaultSeed + 7, kTrials)); }
TEST_CASE("full differencing") { expect(property::full_difference_is_compact(conecalc::kDefaultSeed + 8, kTrials)); }
TEST_CASE("projection and integration") { expect(property::projection_integrates(conecalc::kDefaultSeed + 9, kTrials)); }
