#ifndef ILLDIST_GENERATORS_HPP
#define ILLDIST_GENERATORS_HPP

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "illdist/point_set.hpp"

namespace illdist {

// CRT construction of one-dimensional sets occupying few residue classes.
//
// In full mode the set is {x in [N] : x mod p in R_p for every prime
// p <= min(B, ln N)}, where R_p is a seeded uniform choice of
// max(1, floor(p^epsilon)) residues. In small mode the full-mode set with
// B = ln N is built first and then floor((ln N)^epsilon) elements are
// subsampled uniformly without replacement; the result occupies at most
// max(1, floor(p^epsilon)) classes mod p for every prime p: small primes by
// construction, primes p >= ln N because the whole set has at most
// (ln N)^epsilon elements.
enum class CrtMode { small, full };

struct CrtGenResult {
  LatticePointSet set;
  // (p, chosen residues mod p), ascending in p, residues sorted.
  std::vector<std::pair<std::uint64_t, std::vector<Coord>>> residues;
};

// prime_bound is the B of full mode and is ignored in small mode.
CrtGenResult gen_crt_set(Coord N, double epsilon, CrtMode mode,
                         std::uint64_t prime_bound, std::uint64_t seed);

// Deterministic core of the CRT construction: all x in [N] congruent to one
// of the given residues modulo each listed prime.
LatticePointSet crt_set_from_residues(
    Coord N,
    const std::vector<std::pair<std::uint64_t, std::vector<Coord>>>& residues);

// Cartesian power X^power of a one-dimensional set, inside [X.box_bound]^power.
LatticePointSet gen_product_set(const LatticePointSet& X, int power);

// {(x, f(x) y) : x in [N], y in Y, 1 <= f(x) y <= N} for f given by integer
// coefficients (constant term first). Values landing outside the box are
// dropped.
LatticePointSet gen_perturbed_set(Coord N, const std::vector<Coord>& f_coeffs,
                                  const std::vector<Coord>& Y);

// {(x, f(x) + z) : x >= 1, z in Z, f(x) + z <= N} with
// f(x) = floor(N^rho) * x^m.
LatticePointSet gen_graph_shift_set(Coord N, double rho, int m,
                                    const std::vector<Coord>& Z);

// Tagged generator description, one alternative per example family.
struct CrtSpec {
  double epsilon = 0.5;
  CrtMode mode = CrtMode::small;
  std::uint64_t prime_bound = 2;  // full mode only
};
struct ProductSpec {
  LatticePointSet X;
  int power = 1;
};
struct PerturbedSpec {
  std::vector<Coord> f_coeffs;
  std::vector<Coord> Y;
};
struct GraphShiftSpec {
  double rho = 0.0;
  int m = 1;
  std::vector<Coord> Z;
};
using GeneratorSpec =
    std::variant<CrtSpec, ProductSpec, PerturbedSpec, GraphShiftSpec>;

// Dispatches to the matching generator. N is ignored for the product
// variant, whose box bound comes from the base set.
LatticePointSet generate_set(Coord N, const GeneratorSpec& spec,
                             std::uint64_t seed);

}  // namespace illdist

#endif
