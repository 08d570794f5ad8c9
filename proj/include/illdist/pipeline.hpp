#ifndef ILLDIST_PIPELINE_HPP
#define ILLDIST_PIPELINE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "illdist/point_set.hpp"
#include "illdist/polynomial.hpp"
#include "illdist/primes.hpp"
#include "illdist/sampling.hpp"
#include "illdist/siegel.hpp"

namespace illdist {

struct PipelineConfig {
  Coord N = 0;
  int d = 0;
  double kappa = 0.0;
  double eta = 1.0;
  double tau = 1.0;
  double eps = 0.1;
  std::uint64_t seed = 0;
  std::int64_t trials = 64;
  double C1 = 1.0;  // eta >= C1 tau^kappa
  double C2 = 1.0;  // tau >= C2 eta^(1/d)
  double c_d = 1.0; // scale of the |P(x)| <= N^(c_d r^(1/d)) reporting bound
  double c1 = 0.1, c2 = 0.1, c3 = 0.1, c4 = 0.25;
  std::int64_t max_iterations = 0;  // 0: use ceil(1/eps) * 4
  int threads = 1;
};

// Whether the configured constants satisfy eta >= C1 tau^kappa and
// tau >= C2 eta^(1/d), plus the closed-form minimal eta
// (C1 C2^kappa)^{d/(d-kappa)}. Advisory at desk scale: the pipeline warns
// and proceeds when it fails.
struct ConstantsReport {
  bool eta_vs_tau = false;
  bool tau_vs_eta = false;
  bool ok = false;
  double eta_min = 0.0;
  std::string explanation;
};

ConstantsReport constants_check(const PipelineConfig& config);

// Chebyshev mass of the window primes dividing the exact value P(x); the
// whole mass when P(x) = 0 (every prime divides 0).
double divisor_weight(const IntegerPolynomial& P, const Point& x,
                      const PrimeWindow& window);

// Everything one round produces, in report-ready form.
struct StructureReport {
  std::int64_t input_size = 0;
  // window
  double window_lower = 0.0, window_upper = 0.0;
  std::int64_t primes_count = 0;
  double chebyshev_mass = 0.0;
  // sampling
  std::int64_t r = 0;
  std::int64_t trials = 0;
  std::int64_t good_primes = 0;
  std::int64_t s_prime_size = 0;
  double coverage_min = 0.0, coverage_median = 0.0;
  bool winner_meets_c1 = false;  // good_primes >= c1 * |P_I|
  bool s_prime_meets_c3 = false; // |S'| >= c3 |S|
  // siegel
  int D = 0;
  std::string R;  // decimal, can exceed 64 bits
  double log_height_bound = 0.0;
  std::int64_t sigma_size = 0;
  // result
  int degree = 0;
  mpz_class height;
  double complexity = 0.0;
  double asymptotic_log_bound = 0.0;  // ln of N^(c_d r^(1/d)), reported only
  std::int64_t vanishing_count = 0;
  double proportion = 0.0;
  std::int64_t forced_count = 0;       // x in S' flagged by divisor weight
  std::int64_t forced_violations = 0;  // flagged yet nonzero; must stay 0
};

struct RunOnceResult {
  IntegerPolynomial polynomial;
  StructureReport report;
  PrimeWindow window;
  CharacteristicSample sample;
};

// One round of the structure pipeline: window, characteristic sample,
// Siegel polynomial on the distinct tuple points, then exact evaluation
// over all of S with the forced-vanishing cross-check on S'.
RunOnceResult run_once(const LatticePointSet& S, const PipelineConfig& config);

struct IterateOutcome {
  std::vector<IntegerPolynomial> polynomials;
  IntegerPolynomial product;
  std::vector<StructureReport> rounds;
  std::int64_t covered_count = 0;
  double covered_fraction = 0.0;
  bool reached_target = false;
  bool budget_exceeded = false;
  // combined measurements of the product polynomial
  int degree = 0;
  mpz_class height;
  double complexity = 0.0;
  std::int64_t forced_violations_total = 0;
};

// Applies run_once to the residual set (points missed by every previous
// polynomial) until at least (1 - eps)|S| points are covered or the round
// budget runs out. Budget exhaustion is reported, never silent.
IterateOutcome iterate(const LatticePointSet& S, const PipelineConfig& config);

}  // namespace illdist

#endif
