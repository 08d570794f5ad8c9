#include "illdist/primes.hpp"

#include <algorithm>
#include <cmath>

#include "illdist/error.hpp"

namespace illdist {

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  if (n < 2) return primes;
  std::vector<char> is_prime(n + 1, 1);
  is_prime[0] = is_prime[1] = 0;
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (is_prime[i])
      for (std::uint64_t j = i * i; j <= n; j += i) is_prime[j] = 0;
  for (std::uint64_t i = 2; i <= n; ++i)
    if (is_prime[i]) primes.push_back(i);
  return primes;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> primes;
  if (hi < 2 || lo > hi) return primes;
  lo = std::max<std::uint64_t>(lo, 2);

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  const std::vector<std::uint64_t> base = primes_up_to(root);

  constexpr std::uint64_t segment_size = 1 << 16;
  std::vector<char> sieve;
  for (std::uint64_t low = lo; low <= hi; low += segment_size) {
    const std::uint64_t high = std::min(hi, low + segment_size - 1);
    sieve.assign(high - low + 1, 1);
    for (std::uint64_t p : base) {
      if (p * p > high) break;
      std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
      for (std::uint64_t j = start; j <= high; j += p) sieve[j - low] = 0;
    }
    for (std::uint64_t v = low; v <= high; ++v)
      if (sieve[v - low]) primes.push_back(v);
    if (high == hi) break;  // avoid wraparound when hi is near the type max
  }
  return primes;
}

PrimeWindow primes_in_window(Coord N, int d, double kappa, double tau) {
  require(N >= 3, errc::invalid_parameter, "N must be >= 3");
  require(d >= 1, errc::invalid_parameter, "d must be >= 1");
  require(kappa >= 0.0 && kappa < static_cast<double>(d), errc::invalid_parameter,
          "kappa must lie in [0, d)");
  require(tau > 0.0, errc::invalid_parameter, "tau must be positive");

  const double logN = std::log(static_cast<double>(N));
  const double exponent = static_cast<double>(d) / (static_cast<double>(d) - kappa);
  const double lower = tau * std::pow(logN, exponent);
  const double upper = 2.0 * lower;
  if (lower < 2.0)
    raise(errc::window_below_two,
          "window lower endpoint " + std::to_string(lower) + " is below 2");

  PrimeWindow w;
  w.d = d;
  w.kappa = kappa;
  w.tau = tau;
  w.lower = lower;
  w.upper = upper;
  const auto lo = static_cast<std::uint64_t>(std::ceil(lower));
  const auto hi = static_cast<std::uint64_t>(std::floor(upper));
  w.primes = primes_in_range(lo, hi);
  for (std::uint64_t p : w.primes)
    w.chebyshev_mass += std::log(static_cast<double>(p));
  return w;
}

PrimeWindow window_from_primes(std::vector<std::uint64_t> primes, int d) {
  require(std::is_sorted(primes.begin(), primes.end()), errc::invalid_parameter,
          "prime list must be sorted");
  PrimeWindow w;
  w.d = d;
  if (!primes.empty()) {
    w.lower = static_cast<double>(primes.front());
    w.upper = static_cast<double>(primes.back());
  }
  w.primes = std::move(primes);
  for (std::uint64_t p : w.primes)
    w.chebyshev_mass += std::log(static_cast<double>(p));
  return w;
}

}  // namespace illdist
