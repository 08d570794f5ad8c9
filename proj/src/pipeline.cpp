#include "illdist/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "illdist/error.hpp"
#include "illdist/parallel.hpp"

namespace illdist {

namespace {

void validate_config(const PipelineConfig& c) {
  require(c.N >= 3, errc::invalid_parameter, "N must be >= 3");
  require(c.d >= 1, errc::invalid_parameter, "d must be >= 1");
  require(c.kappa >= 0.0 && c.kappa < static_cast<double>(c.d),
          errc::invalid_parameter, "kappa must lie in [0, d)");
  require(c.eta > 0.0 && c.tau > 0.0, errc::invalid_parameter,
          "eta and tau must be positive");
  require(c.eps > 0.0 && c.eps < 1.0, errc::invalid_parameter,
          "eps must lie in (0, 1)");
  require(c.trials >= 1, errc::zero_trials, "trials must be >= 1");
  require(c.C1 > 0.0 && c.C2 > 0.0 && c.c_d > 0.0, errc::invalid_parameter,
          "constants must be positive");
  for (double v : {c.c1, c.c2, c.c3, c.c4})
    require(v > 0.0 && v < 1.0, errc::invalid_parameter,
            "sampling constants must lie in (0, 1)");
}

double median_of_sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ConstantsReport constants_check(const PipelineConfig& config) {
  validate_config(config);
  ConstantsReport rep;
  const double rhs1 = config.C1 * std::pow(config.tau, config.kappa);
  const double rhs2 = config.C2 * std::pow(config.eta, 1.0 / config.d);
  rep.eta_vs_tau = config.eta >= rhs1;
  rep.tau_vs_eta = config.tau >= rhs2;
  rep.ok = rep.eta_vs_tau && rep.tau_vs_eta;
  rep.eta_min = std::pow(config.C1 * std::pow(config.C2, config.kappa),
                         config.d / (config.d - config.kappa));
  std::ostringstream out;
  out << "eta >= C1 tau^kappa: " << config.eta << (rep.eta_vs_tau ? " >= " : " < ")
      << rhs1 << "; tau >= C2 eta^(1/d): " << config.tau
      << (rep.tau_vs_eta ? " >= " : " < ") << rhs2
      << "; minimal eta for this (C1, C2): " << rep.eta_min;
  rep.explanation = out.str();
  return rep;
}

double divisor_weight(const IntegerPolynomial& P, const Point& x,
                      const PrimeWindow& window) {
  const mpz_class value = P.evaluate(x);
  if (value == 0) return window.chebyshev_mass;
  double sum = 0.0;
  for (std::uint64_t p : window.primes)
    if (mpz_divisible_ui_p(value.get_mpz_t(), static_cast<unsigned long>(p)))
      sum += std::log(static_cast<double>(p));
  return sum;
}

RunOnceResult run_once(const LatticePointSet& S, const PipelineConfig& config) {
  validate_config(config);
  require(!S.points.empty(), errc::empty_set, "S must be nonempty");
  require(S.dim == config.d, errc::dimension_mismatch,
          "config d does not match the set dimension");
  require(S.box_bound == config.N, errc::header_mismatch,
          "config N does not match the set box bound");

  RunOnceResult result;
  StructureReport& rep = result.report;
  rep.input_size = static_cast<std::int64_t>(S.size());

  result.window = primes_in_window(config.N, config.d, config.kappa, config.tau);
  require(!result.window.empty(), errc::empty_window,
          "prime window contains no prime");
  rep.window_lower = result.window.lower;
  rep.window_upper = result.window.upper;
  rep.primes_count = static_cast<std::int64_t>(result.window.primes.size());
  rep.chebyshev_mass = result.window.chebyshev_mass;

  SamplingParams params;
  params.eta = config.eta;
  params.r = characteristic_size(config.N, config.d, config.kappa, config.eta);
  params.trials = config.trials;
  params.c1 = config.c1;
  params.c2 = config.c2;
  params.c3 = config.c3;
  params.c4 = config.c4;
  params.threads = config.threads;
  result.sample = select_characteristic(S, result.window, params, config.seed);

  rep.r = params.r;
  rep.trials = config.trials;
  rep.good_primes = static_cast<std::int64_t>(result.sample.good_primes.size());
  rep.s_prime_size = static_cast<std::int64_t>(result.sample.s_prime.size());
  rep.winner_meets_c1 =
      static_cast<double>(rep.good_primes) >=
      config.c1 * static_cast<double>(result.window.primes.size());
  rep.s_prime_meets_c3 = static_cast<double>(rep.s_prime_size) >=
                         config.c3 * static_cast<double>(S.size());
  {
    std::vector<double> values;
    values.reserve(result.sample.s_prime.size());
    for (const Point& x : result.sample.s_prime)
      values.push_back(result.sample.coverage.at(x));
    rep.coverage_min =
        values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
    rep.coverage_median = median_of_sorted(values);
  }

  const int D = choose_degree(params.r, config.d);
  SiegelInstance instance =
      make_siegel_instance(result.sample.tuple, config.d, D, config.N);
  rep.D = D;
  rep.R = instance.R.get_str();
  rep.log_height_bound = instance.log_height_bound;
  rep.sigma_size = static_cast<std::int64_t>(instance.sigma.size());

  result.polynomial = solve_vanishing(instance);
  for (const Point& c : result.sample.tuple)
    require(result.polynomial.evaluate(c) == 0, errc::internal_error,
            "polynomial fails to vanish on the characteristic tuple");

  const PolynomialMeasure measure = measure_polynomial(result.polynomial, config.N);
  rep.degree = measure.degree;
  rep.height = measure.height;
  rep.complexity = measure.complexity;
  rep.asymptotic_log_bound =
      config.c_d *
      std::pow(static_cast<double>(params.r), 1.0 / config.d) *
      std::log(static_cast<double>(config.N));

  // Exact evaluation over S, in parallel with per-index slots.
  std::vector<mpz_class> values(S.size());
  parallel_for(S.size(), config.threads, [&](std::size_t i) {
    values[i] = result.polynomial.evaluate(S.points[i]);
  });
  for (const mpz_class& v : values)
    if (v == 0) ++rep.vanishing_count;
  rep.proportion = static_cast<double>(rep.vanishing_count) /
                   static_cast<double>(S.size());

  // Forced-vanishing check on S': the divisor weight of P(x) over the
  // window can exceed ln(height R N^degree) only if P(x) = 0. A violation
  // is arithmetically impossible and means a bug.
  const double log_value_cap =
      log_mpz(measure.height) + log_mpz(instance.R) +
      rep.degree * std::log(static_cast<double>(config.N));
  std::size_t s_prime_idx = 0;
  for (std::size_t i = 0; i < S.size() && s_prime_idx < result.sample.s_prime.size(); ++i) {
    if (S.points[i] != result.sample.s_prime[s_prime_idx]) continue;
    ++s_prime_idx;
    const double weight = divisor_weight(result.polynomial, S.points[i], result.window);
    if (weight > log_value_cap) {
      ++rep.forced_count;
      if (values[i] != 0) ++rep.forced_violations;
    }
  }
  return result;
}

IterateOutcome iterate(const LatticePointSet& S, const PipelineConfig& config) {
  validate_config(config);
  require(!S.points.empty(), errc::empty_set, "S must be nonempty");

  const std::int64_t budget =
      config.max_iterations > 0
          ? config.max_iterations
          : 4 * static_cast<std::int64_t>(std::ceil(1.0 / config.eps));
  const auto total = static_cast<std::int64_t>(S.size());
  const auto target = static_cast<std::int64_t>(
      std::ceil((1.0 - config.eps) * static_cast<double>(total)));

  IterateOutcome outcome;
  outcome.product = IntegerPolynomial(config.d);

  std::vector<Point> residual = S.points;
  std::int64_t covered = 0;
  bool first = true;

  while (covered < target &&
         static_cast<std::int64_t>(outcome.rounds.size()) < budget) {
    LatticePointSet current = make_set(S.dim, S.box_bound, residual);
    RunOnceResult round = run_once(current, config);
    outcome.rounds.push_back(round.report);
    outcome.forced_violations_total += round.report.forced_violations;

    std::vector<Point> next;
    next.reserve(residual.size());
    for (const Point& x : current.points)
      if (round.polynomial.evaluate(x) != 0) next.push_back(x);
    covered += static_cast<std::int64_t>(current.size() - next.size());
    residual = std::move(next);

    if (first) {
      outcome.product = round.polynomial;
      first = false;
    } else {
      outcome.product = outcome.product * round.polynomial;
    }
    outcome.polynomials.push_back(std::move(round.polynomial));
    if (residual.empty()) break;
  }

  outcome.covered_count = covered;
  outcome.covered_fraction =
      static_cast<double>(covered) / static_cast<double>(total);
  outcome.reached_target = covered >= target;
  outcome.budget_exceeded = !outcome.reached_target;

  const PolynomialMeasure measure = measure_polynomial(outcome.product, config.N);
  outcome.degree = measure.degree;
  outcome.height = measure.height;
  outcome.complexity = measure.complexity;
  return outcome;
}

}  // namespace illdist
