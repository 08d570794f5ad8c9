#include "illdist/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "illdist/error.hpp"
#include "illdist/parallel.hpp"
#include "illdist/residue.hpp"
#include "illdist/rng.hpp"

namespace illdist {

std::int64_t characteristic_size(Coord N, int d, double kappa, double eta) {
  require(N >= 3, errc::invalid_parameter, "N must be >= 3");
  require(d >= 1, errc::invalid_parameter, "d must be >= 1");
  require(kappa >= 0.0 && kappa < static_cast<double>(d), errc::invalid_parameter,
          "kappa must lie in [0, d)");
  require(eta > 0.0, errc::invalid_parameter, "eta must be positive");
  const double logN = std::log(static_cast<double>(N));
  const double exponent = d * kappa / (d - kappa);
  const double raw = eta * std::pow(logN, exponent);
  require(raw < 1e15, errc::invalid_parameter, "r would exceed 1e15");
  return static_cast<std::int64_t>(std::ceil(raw));
}

namespace {

// Residue keys of all points of S mod p, packed into one uint64 per point
// when p^d fits; the packed form makes the per-trial matching cheap.
struct ResidueKeys {
  bool packed = false;
  std::vector<std::uint64_t> packed_keys;
  std::vector<Point> vector_keys;
};

ResidueKeys residue_keys(const std::vector<Point>& pts, std::uint64_t p, int d) {
  ResidueKeys keys;
  double span = 1.0;
  for (int i = 0; i < d; ++i) span *= static_cast<double>(p);
  keys.packed = span < 9e18;
  if (keys.packed) {
    keys.packed_keys.reserve(pts.size());
    for (const Point& x : pts) {
      std::uint64_t k = 0;
      for (Coord c : x) {
        Coord v = c % static_cast<Coord>(p);
        if (v < 0) v += static_cast<Coord>(p);
        k = k * p + static_cast<std::uint64_t>(v);
      }
      keys.packed_keys.push_back(k);
    }
  } else {
    keys.vector_keys.reserve(pts.size());
    for (const Point& x : pts) keys.vector_keys.push_back(reduce_mod(x, p));
  }
  return keys;
}

}  // namespace

TupleScore score_tuple(std::span<const Point> L, const LatticePointSet& S,
                       const PrimeWindow& window, double c2) {
  require(!S.points.empty(), errc::empty_set, "S must be nonempty");
  for (const Point& c : L)
    require(static_cast<int>(c.size()) == S.dim, errc::dimension_mismatch,
            "tuple entry dimension mismatch");

  TupleScore score;
  const double threshold = c2 * static_cast<double>(S.size());
  std::vector<Point> l_points(L.begin(), L.end());
  for (std::uint64_t p : window.primes) {
    const ResidueKeys s_keys = residue_keys(S.points, p, S.dim);
    const ResidueKeys l_keys = residue_keys(l_points, p, S.dim);
    std::int64_t good = 0;
    if (s_keys.packed) {
      std::vector<std::uint64_t> covered = l_keys.packed_keys;
      std::sort(covered.begin(), covered.end());
      for (std::uint64_t k : s_keys.packed_keys)
        if (std::binary_search(covered.begin(), covered.end(), k)) ++good;
    } else {
      std::set<Point> covered(l_keys.vector_keys.begin(),
                              l_keys.vector_keys.end());
      for (const Point& k : s_keys.vector_keys)
        if (covered.count(k)) ++good;
    }
    PrimeScore ps;
    ps.p = p;
    ps.good_x_count = good;
    ps.good = static_cast<double>(good) >= threshold;
    if (ps.good) ++score.good_prime_count;
    score.per_prime.push_back(ps);
  }
  return score;
}

double coverage_weight(const Point& x, std::span<const Point> C,
                       const PrimeWindow& window) {
  for (const Point& c : C)
    require(c.size() == x.size(), errc::dimension_mismatch,
            "tuple entry dimension mismatch");
  double sum = 0.0;
  for (std::uint64_t p : window.primes)
    if (is_good_tuple(x, C, p)) sum += std::log(static_cast<double>(p));
  return sum;
}

CharacteristicSample select_characteristic(const LatticePointSet& S,
                                           const PrimeWindow& window,
                                           const SamplingParams& params,
                                           std::uint64_t seed) {
  require(!S.points.empty(), errc::empty_set, "S must be nonempty");
  require(params.r >= 1, errc::invalid_parameter, "r must be >= 1");
  require(params.trials >= 1, errc::zero_trials, "trials must be >= 1");

  CharacteristicSample sample;
  sample.r = params.r;
  sample.chebyshev_mass = window.chebyshev_mass;

  const auto n = static_cast<std::int64_t>(S.size());
  const auto r = static_cast<std::size_t>(params.r);

  if (n <= params.r) {
    // S fits inside the tuple: take every point once, pad by repetition.
    for (std::size_t i = 0; i < r; ++i)
      sample.tuple.push_back(S.points[i % S.points.size()]);
    sample.good_primes = window.primes;
    sample.s_prime = S.points;
    for (const Point& x : S.points)
      sample.coverage[x] = window.chebyshev_mass;
    return sample;
  }

  // Independent trials; results reduced deterministically by trial index.
  const auto trials = static_cast<std::size_t>(params.trials);
  std::vector<std::vector<std::size_t>> drawn(trials);
  std::vector<std::int64_t> good_counts(trials, 0);
  parallel_for(trials, params.threads, [&](std::size_t t) {
    Rng rng = Rng::derive(seed, t);
    auto& idx = drawn[t];
    idx.reserve(r);
    for (std::size_t i = 0; i < r; ++i)
      idx.push_back(static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n))));
    std::vector<Point> L;
    L.reserve(r);
    for (std::size_t i : idx) L.push_back(S.points[i]);
    good_counts[t] = score_tuple(L, S, window, params.c2).good_prime_count;
  });

  std::size_t winner = 0;
  for (std::size_t t = 1; t < trials; ++t)
    if (good_counts[t] > good_counts[winner]) winner = t;

  sample.winning_trial = static_cast<std::int64_t>(winner);
  for (std::size_t i : drawn[winner]) sample.tuple.push_back(S.points[i]);

  const TupleScore winner_score =
      score_tuple(sample.tuple, S, window, params.c2);
  for (const PrimeScore& ps : winner_score.per_prime)
    if (ps.good) sample.good_primes.push_back(ps.p);

  // Coverage of every x in S by the winning tuple, accumulated per prime in
  // ascending order (the same order chebyshev_mass uses).
  std::vector<double> coverage(S.size(), 0.0);
  for (std::uint64_t p : window.primes) {
    const ResidueKeys s_keys = residue_keys(S.points, p, S.dim);
    const ResidueKeys c_keys = residue_keys(sample.tuple, p, S.dim);
    const double logp = std::log(static_cast<double>(p));
    if (s_keys.packed) {
      std::vector<std::uint64_t> covered = c_keys.packed_keys;
      std::sort(covered.begin(), covered.end());
      for (std::size_t i = 0; i < S.size(); ++i)
        if (std::binary_search(covered.begin(), covered.end(),
                               s_keys.packed_keys[i]))
          coverage[i] += logp;
    } else {
      std::set<Point> covered(c_keys.vector_keys.begin(),
                              c_keys.vector_keys.end());
      for (std::size_t i = 0; i < S.size(); ++i)
        if (covered.count(s_keys.vector_keys[i])) coverage[i] += logp;
    }
  }

  const double threshold = params.c4 * window.chebyshev_mass;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (coverage[i] >= threshold) {
      sample.s_prime.push_back(S.points[i]);
      sample.coverage[S.points[i]] = coverage[i];
    }
  }
  return sample;
}

}  // namespace illdist
