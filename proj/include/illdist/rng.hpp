#ifndef ILLDIST_RNG_HPP
#define ILLDIST_RNG_HPP

#include <cstdint>
#include <vector>

namespace illdist {

// splitmix64. Self-contained so seeded runs are reproducible across
// platforms and standard library versions; std::uniform_int_distribution
// is deliberately avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream for (seed, stream). Used so that e.g. trial k of a
  // randomized search gets the same draws no matter how trials are
  // scheduled across threads.
  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    Rng r(mix(seed) ^ mix(stream + 0x9e3779b97f4a7c15ULL));
    r.next();
    return r;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), unbiased via rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
    if (rem == 0) return next() % n;
    const std::uint64_t max_ok = UINT64_MAX - rem;
    std::uint64_t u;
    do {
      u = next();
    } while (u > max_ok);
    return u % n;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

// First k positions of a uniform random permutation of [0, n), by partial
// Fisher-Yates. Requires k <= n. Result order is the draw order.
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t k, Rng& rng);

}  // namespace illdist

#endif
