#ifndef ILLDIST_SAMPLING_HPP
#define ILLDIST_SAMPLING_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "illdist/point_set.hpp"
#include "illdist/primes.hpp"

namespace illdist {

// r = ceil(eta (ln N)^{d kappa / (d - kappa)}), the characteristic tuple
// length. Ceiling because the tuple length is integral and more entries only
// improve coverage.
std::int64_t characteristic_size(Coord N, int d, double kappa, double eta);

struct SamplingParams {
  double eta = 1.0;  // the scale r was derived from, kept for diagnostics
  std::int64_t r = 1;
  std::int64_t trials = 64;
  double c1 = 0.1;   // target fraction of good primes for the winner
  double c2 = 0.1;   // per-prime good-x fraction defining a good tuple
  double c3 = 0.1;   // S' density target (diagnostic only)
  double c4 = 0.25;  // coverage threshold as a fraction of chebyshev_mass
  int threads = 1;
};

// Per-prime quality of a candidate tuple L: how many x in S share a residue
// class with some entry of L, and whether that count clears c2 |S|.
struct PrimeScore {
  std::uint64_t p = 0;
  std::int64_t good_x_count = 0;
  bool good = false;
};

struct TupleScore {
  std::vector<PrimeScore> per_prime;  // aligned with window.primes
  std::int64_t good_prime_count = 0;
};

TupleScore score_tuple(std::span<const Point> L, const LatticePointSet& S,
                       const PrimeWindow& window, double c2);

// Chebyshev-weighted coverage of x by C: sum of ln p over window primes at
// which x shares a residue class with some entry of C. Summed in ascending
// prime order, so full coverage equals window.chebyshev_mass exactly.
double coverage_weight(const Point& x, std::span<const Point> C,
                       const PrimeWindow& window);

struct CharacteristicSample {
  std::vector<Point> tuple;                 // the r entries of C (multiplicity kept)
  std::vector<std::uint64_t> good_primes;   // primes where C is good
  std::vector<Point> s_prime;               // canonical order subset of S
  std::map<Point, double> coverage;         // x in S' -> coverage weight
  std::int64_t winning_trial = -1;          // -1 for the |S| <= r short-circuit
  std::int64_t r = 0;
  double chebyshev_mass = 0.0;
};

// Best-of-trials randomized search for the characteristic tuple: draws
// params.trials tuples uniformly from S^r (each trial's randomness derived
// from (seed, trial index), so the result is independent of scheduling),
// keeps the one good at the most primes, then collects
// S' = {x : coverage >= c4 * chebyshev_mass}. When |S| <= r the tuple is all
// of S padded by repetition and S' = S.
CharacteristicSample select_characteristic(const LatticePointSet& S,
                                           const PrimeWindow& window,
                                           const SamplingParams& params,
                                           std::uint64_t seed);

}  // namespace illdist

#endif
