#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <illdist/error.hpp>
#include <illdist/point_set.hpp>
#include <illdist/primes.hpp>
#include <illdist/residue.hpp>
#include <illdist/rng.hpp>
#include <illdist/sampling.hpp>

#include <cmath>
#include <functional>

using namespace illdist;

namespace {

bool throws_code(errc expected, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code() == expected;
  }
  return false;
}

LatticePointSet diagonal_set(Coord n) {
  std::vector<Point> pts;
  for (Coord i = 1; i <= n; ++i) pts.push_back({i, i});
  return make_set(2, n, pts);
}

}  // namespace

TEST_CASE("characteristic size") {
  // ln 22026 is a hair below 10, exponent d kappa / (d - kappa) = 2
  CHECK(characteristic_size(22026, 2, 1.0, 1.0) == 100);
  // kappa = 0 collapses the power to 1
  CHECK(characteristic_size(1000, 3, 0.0, 3.2) == 4);
  CHECK(characteristic_size(50, 5, 0.0, 3.2) == 4);
  CHECK(throws_code(errc::invalid_parameter,
                    [] { characteristic_size(100, 2, 1.0, -1.0); }));
}

TEST_CASE("score_tuple") {
  auto S = make_set(1, 10, {{1}, {2}, {3}, {4}});
  const std::vector<Point> L = {{1}, {2}};

  auto w2 = window_from_primes({2}, 1);
  auto score2 = score_tuple(L, S, w2, 1.0);
  REQUIRE(score2.per_prime.size() == 1);
  CHECK(score2.per_prime[0].good_x_count == 4);  // both parities covered
  CHECK(score2.per_prime[0].good);
  CHECK(score2.good_prime_count == 1);

  auto w5 = window_from_primes({5}, 1);
  auto score5 = score_tuple(L, S, w5, 0.6);
  CHECK(score5.per_prime[0].good_x_count == 2);  // only 1 and 2 match
  CHECK_FALSE(score5.per_prime[0].good);

  auto empty_score = score_tuple({}, S, window_from_primes({2, 5}, 1), 0.5);
  for (const auto& ps : empty_score.per_prime) {
    CHECK(ps.good_x_count == 0);
    CHECK_FALSE(ps.good);
  }
}

TEST_CASE("coverage weight") {
  const std::vector<Point> C = {{3}, {1}};
  auto w = window_from_primes({3, 5}, 1);
  // 6 = 3 (mod 3) and 6 = 1 (mod 5)
  CHECK(coverage_weight({6}, C, w) ==
        doctest::Approx(std::log(3.0) + std::log(5.0)).epsilon(1e-15));

  // membership gives exactly the chebyshev mass, bit for bit
  CHECK(coverage_weight({3}, C, w) == w.chebyshev_mass);

  // no shared class anywhere: x = 2 mod 3 (C hits 0 and 1), 2 mod 5 (C hits 3 and 1)
  CHECK(coverage_weight({2}, C, w) == 0.0);

  CHECK(throws_code(errc::dimension_mismatch,
                    [&] { coverage_weight({2, 2}, C, w); }));
}

TEST_CASE("coverage weight is monotone under tuple extension") {
  auto w = window_from_primes({3, 5, 7, 11}, 1);
  Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    Point x{1 + static_cast<Coord>(rng.below(50))};
    std::vector<Point> C;
    double prev = 0.0;
    for (int i = 0; i < 5; ++i) {
      C.push_back({1 + static_cast<Coord>(rng.below(50))});
      const double cov = coverage_weight(x, C, w);
      CHECK(cov >= prev - 1e-15);
      CHECK(cov <= w.chebyshev_mass + 1e-15);
      prev = cov;
    }
  }
}

TEST_CASE("select_characteristic short-circuits when |S| <= r") {
  auto S = make_set(1, 50, {{4}, {9}, {33}});
  auto w = window_from_primes({5, 7, 11}, 1);
  SamplingParams params;
  params.r = 5;
  auto sample = select_characteristic(S, w, params, 3);
  CHECK(sample.tuple.size() == 5);
  CHECK(sample.s_prime == S.points);
  CHECK(sample.good_primes == w.primes);
  for (const Point& x : S.points)
    CHECK(sample.coverage.at(x) == w.chebyshev_mass);
}

TEST_CASE("select_characteristic postconditions on the diagonal") {
  auto S = diagonal_set(50);
  auto w = primes_in_window(22026, 2, 1.0, 0.1);  // [10, 20]: {11, 13, 17, 19}
  REQUIRE(w.primes == std::vector<std::uint64_t>{11, 13, 17, 19});
  SamplingParams params;
  params.r = 8;
  params.trials = 32;
  auto sample = select_characteristic(S, w, params, 0);

  CHECK(sample.tuple.size() == 8);
  for (const Point& c : sample.tuple) {
    bool in_s = false;
    for (const Point& x : S.points) in_s = in_s || x == c;
    CHECK(in_s);
  }
  CHECK_FALSE(sample.s_prime.empty());
  const double threshold = params.c4 * w.chebyshev_mass;
  for (const Point& x : sample.s_prime) {
    CHECK(sample.coverage.at(x) >= threshold);
    // membership is exactly the threshold predicate on coverage_weight
    CHECK(sample.coverage.at(x) ==
          coverage_weight(x, sample.tuple, w));
  }
  // no point of S outside S' clears the threshold
  std::size_t idx = 0;
  for (const Point& x : S.points) {
    const bool in_prime =
        idx < sample.s_prime.size() && sample.s_prime[idx] == x;
    if (in_prime)
      ++idx;
    else
      CHECK(coverage_weight(x, sample.tuple, w) < threshold);
  }
}

TEST_CASE("select_characteristic validates inputs") {
  auto S = diagonal_set(10);
  auto w = window_from_primes({3, 5}, 2);
  SamplingParams params;
  params.r = 3;
  params.trials = 0;
  CHECK(throws_code(errc::zero_trials,
                    [&] { select_characteristic(S, w, params, 0); }));
}

TEST_CASE("select_characteristic is deterministic and thread-invariant") {
  auto S = diagonal_set(60);
  auto w = primes_in_window(22026, 2, 1.0, 0.1);
  SamplingParams params;
  params.r = 6;
  params.trials = 40;

  params.threads = 1;
  auto a = select_characteristic(S, w, params, 11);
  auto b = select_characteristic(S, w, params, 11);
  CHECK(a.tuple == b.tuple);
  CHECK(a.s_prime == b.s_prime);
  CHECK(a.coverage == b.coverage);

  params.threads = 7;
  auto c = select_characteristic(S, w, params, 11);
  CHECK(a.tuple == c.tuple);
  CHECK(a.s_prime == c.s_prime);
  CHECK(a.winning_trial == c.winning_trial);
  CHECK(a.coverage == c.coverage);

  auto other = select_characteristic(S, w, params, 12);
  CHECK(other.tuple != a.tuple);  // overwhelmingly likely for 60^6 tuples
}

TEST_CASE("Monte Carlo good-tuple frequency matches the formula") {
  // Lemma-level consistency: empirical good frequency over 10^4 draws vs
  // 1 - formula, within 4 standard errors.
  Rng set_rng(2024);
  std::vector<Point> pts;
  while (pts.size() < 40) {
    Point p{1 + static_cast<Coord>(set_rng.below(25)),
            1 + static_cast<Coord>(set_rng.below(25))};
    pts.push_back(p);
  }
  auto S = make_set(2, 25, pts);
  const std::uint64_t p = 5;
  const int r = 3;
  auto prof = occupancy_profile(S, p);
  const double good_prob = 1.0 - bad_tuple_probability(prof, r);

  const int draws = 10000;
  Rng rng(7);
  int good = 0;
  const auto n = static_cast<std::uint64_t>(S.size());
  for (int t = 0; t < draws; ++t) {
    const Point& x = S.points[rng.below(n)];
    std::vector<Point> L;
    for (int i = 0; i < r; ++i) L.push_back(S.points[rng.below(n)]);
    if (is_good_tuple(x, L, p)) ++good;
  }
  const double freq = static_cast<double>(good) / draws;
  const double se = std::sqrt(good_prob * (1.0 - good_prob) / draws);
  CHECK(std::abs(freq - good_prob) <= 4.0 * se);
}
