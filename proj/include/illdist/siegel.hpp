#ifndef ILLDIST_SIEGEL_HPP
#define ILLDIST_SIEGEL_HPP

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "illdist/point_set.hpp"
#include "illdist/polynomial.hpp"

namespace illdist {

// Smallest degree D with both (d! r)^{1/d} < D and binomial(D+d, d) >= 2r,
// so the monomial count leaves at least half the coefficient space free.
int choose_degree(std::int64_t r, int d);

// binomial(n, k) as an exact big integer.
mpz_class binomial_mpz(int n, int k);

// A "vanish on Sigma with degree <= D inside [N]^d" instance. R is the
// monomial count binomial(D+d, d); the height bound 4 (R N^D)^{m/(R-m)} is
// kept in log form (it overflows fixed precision fast).
struct SiegelInstance {
  std::vector<Point> sigma;  // distinct points, |sigma| < R
  int d = 0;
  int D = 0;
  Coord N = 0;
  mpz_class R;
  double log_height_bound = 0.0;
};

SiegelInstance make_siegel_instance(std::vector<Point> sigma, int d, int D, Coord N);

// ln of the height bound: ln 4 + (m/(R-m)) (ln R + D ln N). Throws
// overdetermined when m >= R.
double siegel_bound(int d, int D, Coord N, std::int64_t m);

// Exact check height <= 4 (R N^D)^{m/(R-m)}, done in integer arithmetic
// (height^{R-m} vs 4^{R-m} (R N^D)^m) whenever the powers stay small enough
// to be cheap, in log space with a safety margin otherwise.
bool height_within_bound(const mpz_class& height, int d, int D, Coord N,
                         std::int64_t m);

// Nonzero integer polynomial of degree <= D vanishing on every point of
// sigma, with height within the bound. Constructive route: exact saturated
// kernel of the monomial evaluation matrix, LLL-reduced, shortest vector
// taken; exhaustive box search as fallback if the reduced vector were ever
// to miss the bound.
IntegerPolynomial solve_vanishing(const SiegelInstance& instance);

// Exhaustive oracle: minimal-height nonzero polynomial with coefficients in
// [-H_max, H_max] vanishing on sigma, or nullopt. Guarded to <= 1e8
// candidate vectors.
std::optional<IntegerPolynomial> brute_force_min_height(
    const std::vector<Point>& sigma, int d, int D, Coord N, std::int64_t H_max);

}  // namespace illdist

#endif
