#ifndef ILLDIST_RESIDUE_HPP
#define ILLDIST_RESIDUE_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "illdist/point_set.hpp"
#include "illdist/primes.hpp"

namespace illdist {

// Coordinatewise residue vector of x modulo p, entries in [0, p).
Point reduce_mod(const Point& x, std::uint64_t p);

// Occupancy of S in Z_p^d: how many points fall in each residue class.
struct ResidueProfile {
  std::uint64_t p = 0;
  int dim = 0;
  std::map<Point, std::int64_t> class_counts;  // residue vector -> count >= 1
  std::int64_t total = 0;                      // |S|

  std::size_t occupancy() const { return class_counts.size(); }
};

ResidueProfile occupancy_profile(const LatticePointSet& S, std::uint64_t p);

// Ill-distribution check: flags every window prime whose occupancy exceeds
// c_bound * p^kappa.
struct OccupancyCheck {
  std::uint64_t p = 0;
  std::size_t occupancy = 0;
  double limit = 0.0;
  bool flagged = false;
};

struct IllDistReport {
  double kappa = 0.0;
  double c_bound = 0.0;
  std::vector<OccupancyCheck> per_prime;
  bool pass = false;
  bool empty_window = false;  // vacuous pass
};

IllDistReport check_ill_distribution(const LatticePointSet& S,
                                     const PrimeWindow& window, double kappa,
                                     double c_bound);

// True iff some entry of L shares the residue class of x mod p.
bool is_good_tuple(const Point& x, std::span<const Point> L, std::uint64_t p);

// Probability that a uniform x in S together with an independent uniform
// L in S^r forms a bad tuple mod p: sum over occupied classes a of
// S_a (1 - S_a)^r. Float version uses compensated summation; the exact
// version is the oracle for equality tests and supports |S| <= 64.
double bad_tuple_probability(const ResidueProfile& profile, int r);
mpq_class bad_tuple_probability_exact(const ResidueProfile& profile, int r);

}  // namespace illdist

#endif
