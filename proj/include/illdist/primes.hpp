#ifndef ILLDIST_PRIMES_HPP
#define ILLDIST_PRIMES_HPP

#include <cstdint>
#include <vector>

#include "illdist/point_set.hpp"

namespace illdist {

// All primes <= n, simple sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// All primes in [lo, hi], segmented sieve.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

// The prime window I = [tau (ln N)^{d/(d-kappa)}, 2 tau (ln N)^{d/(d-kappa)}]
// with its sieved prime list. Membership is lower <= p <= upper with
// real-valued endpoints. chebyshev_mass is sum of ln p over the window,
// accumulated in ascending prime order; coverage computations reuse the
// same order so that a full-coverage sum reproduces this value bit for bit.
struct PrimeWindow {
  int d = 0;
  double kappa = 0.0;
  double tau = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::uint64_t> primes;
  double chebyshev_mass = 0.0;

  bool empty() const { return primes.empty(); }
};

// Sieves the window for the given parameters. Throws invalid_parameter when
// kappa is outside [0, d) or tau <= 0 or N < 3; window_below_two when the
// lower endpoint falls below 2.
PrimeWindow primes_in_window(Coord N, int d, double kappa, double tau);

// Window over an explicit prime list (synthetic windows for analysis and
// tests). The list must be sorted and contain primes only.
PrimeWindow window_from_primes(std::vector<std::uint64_t> primes, int d);

}  // namespace illdist

#endif
