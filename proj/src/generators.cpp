#include "illdist/generators.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

#include "illdist/error.hpp"
#include "illdist/primes.hpp"
#include "illdist/rng.hpp"

namespace illdist {

namespace {

mpz_class eval_int_poly(const std::vector<Coord>& coeffs, Coord x) {
  mpz_class acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

}  // namespace

LatticePointSet crt_set_from_residues(
    Coord N,
    const std::vector<std::pair<std::uint64_t, std::vector<Coord>>>& residues) {
  std::vector<Point> pts;
  for (Coord x = 1; x <= N; ++x) {
    bool ok = true;
    for (const auto& [p, rs] : residues) {
      const Coord r = x % static_cast<Coord>(p);
      if (!std::binary_search(rs.begin(), rs.end(), r)) {
        ok = false;
        break;
      }
    }
    if (ok) pts.push_back({x});
  }
  require(!pts.empty(), errc::generation_failed,
          "CRT residue system has no solution in [1, N]");
  return make_set(1, N, std::move(pts));
}

CrtGenResult gen_crt_set(Coord N, double epsilon, CrtMode mode,
                         std::uint64_t prime_bound, std::uint64_t seed) {
  require(N >= 16, errc::invalid_parameter, "N must be >= 16");
  require(epsilon > 0.0 && epsilon < 1.0, errc::invalid_parameter,
          "epsilon must lie in (0, 1)");
  const double logN = std::log(static_cast<double>(N));

  double bound = logN;
  if (mode == CrtMode::full) {
    require(prime_bound >= 2, errc::invalid_parameter, "prime bound B must be >= 2");
    bound = std::min(bound, static_cast<double>(prime_bound));
    // Emptiness cannot occur when the primorial of the primes up to B fits
    // in the box; reject B otherwise. The primorial overtakes any int64 N by
    // p = 47, so sieving a short prefix suffices.
    mpz_class primorial = 1;
    for (std::uint64_t p :
         primes_up_to(std::min<std::uint64_t>(prime_bound, 128))) {
      primorial *= static_cast<unsigned long>(p);
      require(primorial <= N, errc::generation_failed,
              "primorial of primes up to B exceeds N; the residue system "
              "could be empty");
    }
  }
  const auto primes = primes_up_to(static_cast<std::uint64_t>(std::floor(bound)));

  CrtGenResult result;
  for (std::uint64_t p : primes) {
    const auto k = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::floor(
               std::pow(static_cast<double>(p), epsilon))));
    Rng rng = Rng::derive(seed, p);  // per-prime stream, identical across modes
    auto picks = sample_without_replacement(static_cast<std::size_t>(p),
                                            static_cast<std::size_t>(k), rng);
    std::vector<Coord> rs(picks.begin(), picks.end());
    std::sort(rs.begin(), rs.end());
    result.residues.emplace_back(p, std::move(rs));
  }

  result.set = crt_set_from_residues(N, result.residues);
  if (mode == CrtMode::full) return result;

  // Small mode: subsample floor((ln N)^epsilon) elements.
  auto k = static_cast<std::size_t>(std::floor(std::pow(logN, epsilon)));
  k = std::max<std::size_t>(1, k);
  if (k < result.set.size()) {
    Rng rng = Rng::derive(seed, 0);  // stream 0 reserved for the subsample
    auto picks = sample_without_replacement(result.set.size(), k, rng);
    std::vector<Point> chosen;
    chosen.reserve(k);
    for (std::size_t i : picks) chosen.push_back(result.set.points[i]);
    result.set = make_set(1, N, std::move(chosen));
  }
  return result;
}

LatticePointSet gen_product_set(const LatticePointSet& X, int power) {
  require(X.dim == 1, errc::dimension_mismatch, "product base set must have dim 1");
  require(power >= 1, errc::invalid_parameter, "power must be >= 1");
  require(!X.points.empty(), errc::empty_set, "product base set is empty");

  double total = std::pow(static_cast<double>(X.size()), power);
  require(total <= 1e7, errc::invalid_parameter,
          "product set would have more than 1e7 points");

  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(total));
  Point current(static_cast<std::size_t>(power));
  std::vector<std::size_t> odo(static_cast<std::size_t>(power), 0);
  while (true) {
    for (int i = 0; i < power; ++i)
      current[static_cast<std::size_t>(i)] = X.points[odo[static_cast<std::size_t>(i)]][0];
    pts.push_back(current);
    int pos = power - 1;
    while (pos >= 0 && ++odo[static_cast<std::size_t>(pos)] == X.size()) {
      odo[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return make_set(power, X.box_bound, std::move(pts));
}

LatticePointSet gen_perturbed_set(Coord N, const std::vector<Coord>& f_coeffs,
                                  const std::vector<Coord>& Y) {
  require(N >= 2, errc::invalid_parameter, "N must be >= 2");
  require(!f_coeffs.empty(), errc::invalid_parameter, "f needs at least one coefficient");
  require(!Y.empty(), errc::invalid_parameter, "Y must be nonempty");
  for (Coord y : Y)
    require(y >= 1, errc::invalid_parameter, "Y must contain positive integers");

  std::vector<Point> pts;
  for (Coord x = 1; x <= N; ++x) {
    const mpz_class fx = eval_int_poly(f_coeffs, x);
    if (fx == 0) continue;
    for (Coord y : Y) {
      const mpz_class v = fx * y;
      if (v >= 1 && v <= N) pts.push_back({x, static_cast<Coord>(v.get_si())});
    }
  }
  require(!pts.empty(), errc::empty_set, "no point survived clipping to [1, N]^2");
  return make_set(2, N, std::move(pts));
}

LatticePointSet gen_graph_shift_set(Coord N, double rho, int m,
                                    const std::vector<Coord>& Z) {
  require(N >= 2, errc::invalid_parameter, "N must be >= 2");
  require(rho >= 0.0 && rho < 1.0, errc::invalid_parameter, "rho must lie in [0, 1)");
  require(m >= 1, errc::invalid_parameter, "m must be >= 1");
  require(!Z.empty(), errc::invalid_parameter, "Z must be nonempty");
  for (Coord z : Z)
    require(z >= 1, errc::invalid_parameter, "Z must contain positive integers");

  const auto scale = static_cast<Coord>(
      std::floor(std::pow(static_cast<double>(N), rho)));
  const Coord z_min = *std::min_element(Z.begin(), Z.end());

  std::vector<Point> pts;
  for (Coord x = 1;; ++x) {
    mpz_class fx = scale;
    for (int i = 0; i < m; ++i) fx *= x;
    if (fx + z_min > N) break;
    for (Coord z : Z) {
      const mpz_class v = fx + z;
      if (v <= N) pts.push_back({x, static_cast<Coord>(v.get_si())});
    }
  }
  require(!pts.empty(), errc::empty_set, "f(1) + min(Z) already exceeds N");
  return make_set(2, N, std::move(pts));
}

LatticePointSet generate_set(Coord N, const GeneratorSpec& spec,
                             std::uint64_t seed) {
  return std::visit(
      [&](const auto& s) -> LatticePointSet {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CrtSpec>) {
          return gen_crt_set(N, s.epsilon, s.mode, s.prime_bound, seed).set;
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          return gen_product_set(s.X, s.power);
        } else if constexpr (std::is_same_v<T, PerturbedSpec>) {
          return gen_perturbed_set(N, s.f_coeffs, s.Y);
        } else {
          return gen_graph_shift_set(N, s.rho, s.m, s.Z);
        }
      },
      spec);
}

}  // namespace illdist
