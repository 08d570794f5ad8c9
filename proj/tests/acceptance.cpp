// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one [PASS]/[FAIL] line per criterion. Exit status 0 only when all
// criteria hold, including their runtime budgets.

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "illdist/generators.hpp"
#include "illdist/pipeline.hpp"
#include "illdist/point_set.hpp"
#include "illdist/polynomial.hpp"
#include "illdist/primes.hpp"
#include "illdist/report.hpp"
#include "illdist/residue.hpp"
#include "illdist/rng.hpp"
#include "illdist/sampling.hpp"
#include "illdist/siegel.hpp"

using namespace illdist;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string title, double budget_seconds)
      : number_(number),
        title_(std::move(title)),
        budget_(budget_seconds),
        start_(std::chrono::steady_clock::now()) {}

  void check(bool condition, const std::string& detail) {
    if (!condition) {
      ok_ = false;
      if (first_failure_.empty()) first_failure_ = detail;
    }
  }

  void finish() {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    if (elapsed > budget_) {
      ok_ = false;
      if (first_failure_.empty()) {
        std::ostringstream out;
        out << "runtime " << elapsed << "s exceeds budget " << budget_ << "s";
        first_failure_ = out.str();
      }
    }
    std::ostringstream line;
    line << (ok_ ? "[PASS]" : "[FAIL]") << " criterion " << number_ << ": "
         << title_ << " (" << elapsed << "s)";
    if (!ok_) line << " -- " << first_failure_;
    std::cout << line.str() << "\n";
    if (!ok_) ++failures;
  }

 private:
  int number_;
  std::string title_;
  double budget_;
  std::chrono::steady_clock::time_point start_;
  bool ok_ = true;
  std::string first_failure_;
};

LatticePointSet random_set(Coord N, int d, std::size_t count, Rng& rng) {
  std::set<Point> pts;
  while (pts.size() < count) {
    Point p(static_cast<std::size_t>(d));
    for (auto& c : p)
      c = 1 + static_cast<Coord>(rng.below(static_cast<std::uint64_t>(N)));
    pts.insert(std::move(p));
  }
  return make_set(d, N, {pts.begin(), pts.end()});
}

// Exhaustive oracle over S^(r+1): counts tuples with no residue match.
std::pair<std::int64_t, std::int64_t> count_bad_tuples(const LatticePointSet& S,
                                                       std::uint64_t p, int r) {
  const auto n = static_cast<std::int64_t>(S.size());
  std::vector<Point> reduced;
  for (const Point& x : S.points) reduced.push_back(reduce_mod(x, p));
  std::int64_t total = 1;
  for (int i = 0; i <= r; ++i) total *= n;
  std::int64_t bad = 0;
  for (std::int64_t step = 0; step < total; ++step) {
    std::int64_t v = step;
    const Point& x = reduced[static_cast<std::size_t>(v % n)];
    v /= n;
    bool matched = false;
    for (int i = 0; i < r; ++i) {
      matched = matched || reduced[static_cast<std::size_t>(v % n)] == x;
      v /= n;
    }
    if (!matched) ++bad;
  }
  return {bad, total};
}

bool is_prime_slow(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

LatticePointSet diagonal_set(Coord n) {
  std::vector<Point> pts;
  for (Coord i = 1; i <= n; ++i) pts.push_back({i, i});
  return make_set(2, n, pts);
}

LatticePointSet two_lines_set(Coord n) {
  std::vector<Point> pts;
  for (Coord i = 1; i <= n; ++i) {
    pts.push_back({i, i});
    pts.push_back({i, n + 1 - i});
  }
  return make_set(2, n, pts);
}

void criterion_1() {
  Criterion c(1, "bad-tuple formula equals exhaustive enumeration", 10.0);
  Rng rng(101);
  for (std::size_t size = 1; size <= 8; ++size) {
    for (int variant = 0; variant < 5; ++variant) {
      auto S = random_set(10, 2, size, rng);
      for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        auto prof = occupancy_profile(S, p);
        for (int r = 0; r <= 3; ++r) {
          auto [bad, total] = count_bad_tuples(S, p, r);
          mpq_class oracle(bad, total);
          oracle.canonicalize();
          c.check(bad_tuple_probability_exact(prof, r) == oracle,
                  "exact mode mismatch");
          const double oracle_f =
              static_cast<double>(bad) / static_cast<double>(total);
          c.check(std::abs(bad_tuple_probability(prof, r) - oracle_f) <= 1e-12,
                  "float mode outside 1e-12");
        }
      }
    }
  }
  c.finish();
}

void criterion_2() {
  Criterion c(2, "Monte Carlo good-tuple frequency matches the formula", 120.0);
  Rng rng(202);
  int successes = 0;
  const int draws = 10000;
  for (int config = 0; config < 20; ++config) {
    const std::size_t size = 10 + rng.below(31);
    auto S = random_set(20, 2, size, rng);
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[rng.below(4)];
    const int r = 1 + static_cast<int>(rng.below(5));
    const double good_prob = 1.0 - bad_tuple_probability(occupancy_profile(S, p), r);

    Rng draw_rng = Rng::derive(909, static_cast<std::uint64_t>(config));
    int good = 0;
    const auto n = static_cast<std::uint64_t>(S.size());
    for (int t = 0; t < draws; ++t) {
      const Point& x = S.points[draw_rng.below(n)];
      std::vector<Point> L;
      L.reserve(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i) L.push_back(S.points[draw_rng.below(n)]);
      if (is_good_tuple(x, L, p)) ++good;
    }
    const double freq = static_cast<double>(good) / draws;
    const double se = std::sqrt(good_prob * (1.0 - good_prob) / draws);
    if (std::abs(freq - good_prob) <= 4.0 * se) ++successes;
  }
  c.check(successes >= 19, "only " + std::to_string(successes) + "/20 within 4 SE");
  c.finish();
}

void criterion_3() {
  Criterion c(3, "Siegel solver soundness and height bound", 60.0);
  Rng rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(2));
    const Coord N = 5 + static_cast<Coord>(rng.below(46));
    const std::size_t m = 1 + rng.below(5);
    auto sigma_set = random_set(N, d, m, rng);
    const auto r = static_cast<std::int64_t>(sigma_set.size());
    const int D = choose_degree(r, d);
    auto inst = make_siegel_instance(sigma_set.points, d, D, N);
    auto P = solve_vanishing(inst);
    c.check(!P.is_zero(), "zero polynomial");
    c.check(P.degree() <= D, "degree over D");
    bool vanishes = true;
    for (const Point& s : sigma_set.points) vanishes = vanishes && P.evaluate(s) == 0;
    c.check(vanishes, "missed a point of Sigma");
    c.check(height_within_bound(P.height(), d, D, N, r), "height over the bound");
  }

  // every d=1, N=10 instance with |Sigma| <= 2, D <= 2 and |Sigma| < R
  for (Coord a = 1; a <= 10; ++a) {
    for (int D : {1, 2}) {
      auto inst = make_siegel_instance({{a}}, 1, D, 10);
      auto P = solve_vanishing(inst);
      auto oracle = brute_force_min_height({{a}}, 1, D, 10, 100);
      c.check(oracle.has_value(), "oracle found nothing for a singleton");
      c.check(height_within_bound(oracle->height(), 1, D, 10, 1),
              "oracle minimum over the bound");
      c.check(height_within_bound(P.height(), 1, D, 10, 1),
              "solver height over the bound");
    }
    for (Coord b = a + 1; b <= 10; ++b) {
      auto inst = make_siegel_instance({{a}, {b}}, 1, 2, 10);
      auto P = solve_vanishing(inst);
      auto oracle = brute_force_min_height({{a}, {b}}, 1, 2, 10, 100);
      c.check(oracle.has_value(), "oracle found nothing for a pair");
      c.check(height_within_bound(oracle->height(), 1, 2, 10, 2),
              "oracle minimum over the bound");
      c.check(height_within_bound(P.height(), 1, 2, 10, 2),
              "solver height over the bound");
    }
  }

  // spot value: the d=1, D=2, N=10, |Sigma|=2 bound is exactly 360000
  c.check(std::abs(std::exp(siegel_bound(1, 2, 10, 2)) - 360000.0) < 1e-6,
          "bound is not 360000");
  c.check(height_within_bound(mpz_class(360000), 1, 2, 10, 2),
          "360000 rejected");
  c.check(!height_within_bound(mpz_class(360001), 1, 2, 10, 2),
          "360001 accepted");
  c.finish();
}

void criterion_4() {
  Criterion c(4, "CRT generator size and occupancy guarantee at N = 10^6", 5.0);
  auto res = gen_crt_set(1000000, 0.5, CrtMode::small, 0, 42);
  c.check(res.set.size() == 3,
          "size " + std::to_string(res.set.size()) + " != 3");
  for (std::uint64_t p : primes_up_to(1000)) {
    auto prof = occupancy_profile(res.set, p);
    const auto cap = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::floor(std::pow(static_cast<double>(p), 0.5))));
    c.check(prof.occupancy() <= cap,
            "occupancy over the cap at p = " + std::to_string(p));
  }
  c.finish();
}

std::vector<IterateOutcome> criterion_5() {
  std::vector<IterateOutcome> outcomes;

  {
    Criterion c(5, "Bezout-forced full vanishing on lines (seeds 0, 1, 2)", 90.0);
    auto diag = diagonal_set(200);
    auto lines = two_lines_set(100);
    for (std::uint64_t seed : {0ull, 1ull, 2ull}) {
      PipelineConfig cfg;
      cfg.d = 2;
      cfg.kappa = 1.0;
      cfg.tau = 1.0;
      cfg.eps = 0.1;
      cfg.seed = seed;
      cfg.trials = 64;

      cfg.N = 200;
      cfg.eta = 0.75;
      auto res = run_once(diag, cfg);
      c.check(res.report.proportion == 1.0,
              "diagonal proportion != 1.0 at seed " + std::to_string(seed));
      c.check(res.report.degree <= choose_degree(res.report.r, 2),
              "degree over choose_degree");
      c.check(res.report.forced_violations == 0, "forced violation");

      cfg.N = 100;
      cfg.eta = 1.0;
      auto out = iterate(lines, cfg);
      c.check(out.covered_fraction == 1.0,
              "two-lines coverage != 1.0 at seed " + std::to_string(seed));
      for (const auto& round : out.rounds) {
        c.check(round.degree <= choose_degree(round.r, 2),
                "round degree over choose_degree");
        c.check(round.forced_violations == 0, "round forced violation");
      }
      outcomes.push_back(std::move(out));
    }
    c.finish();
  }
  return outcomes;
}

void criterion_6(const std::vector<IterateOutcome>& pipeline_outcomes) {
  Criterion c(6, "divisor Chebyshev mass never exceeds ln|m|", 60.0);
  Rng rng(606);
  auto window = primes_in_window(22026, 1, 0.5, 1.0);
  IntegerPolynomial identity(1);
  identity.add_term({1}, 1);
  for (int trial = 0; trial < 100000; ++trial) {
    const auto m = static_cast<Coord>(rng.below(4000000000000ull)) + 1;
    const double weight = divisor_weight(identity, {m}, window);
    if (weight > std::log(static_cast<double>(m)) + 1e-9) {
      c.check(false, "weight exceeded ln m at m = " + std::to_string(m));
      break;
    }
  }
  for (const auto& outcome : pipeline_outcomes)
    c.check(outcome.forced_violations_total == 0,
            "a pipeline report carries forced violations");
  c.finish();
}

void criterion_7() {
  Criterion c(7, "window sieve yields exactly the 21 primes of [100, 200]", 10.0);
  auto w = primes_in_window(22026, 1, 0.5, 1.0);
  c.check(w.primes.size() == 21,
          "count " + std::to_string(w.primes.size()) + " != 21");
  std::vector<std::uint64_t> slow;
  for (std::uint64_t v = 100; v <= 200; ++v)
    if (is_prime_slow(v) && static_cast<double>(v) >= w.lower &&
        static_cast<double>(v) <= w.upper)
      slow.push_back(v);
  c.check(w.primes == slow, "sieve disagrees with trial division");
  c.finish();
}

void criterion_8() {
  Criterion c(8, "byte-identical reports for thread caps 1 and 8", 60.0);
  auto S = two_lines_set(100);
  PipelineConfig cfg;
  cfg.N = 100;
  cfg.d = 2;
  cfg.kappa = 1.0;
  cfg.tau = 1.0;
  cfg.eta = 1.0;
  cfg.eps = 0.1;
  cfg.seed = 0;
  cfg.trials = 64;

  cfg.threads = 1;
  const std::string rep1 = render_json(iterate_report_to_json(cfg, iterate(S, cfg)));
  PipelineConfig cfg8 = cfg;
  cfg8.threads = 8;
  const std::string rep8 = render_json(iterate_report_to_json(cfg8, iterate(S, cfg8)));
  c.check(rep1 == rep8, "reports differ between thread caps");
  c.finish();
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  auto outcomes = criterion_5();
  criterion_6(outcomes);
  criterion_7();
  criterion_8();
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
