#ifndef ILLDIST_POINT_SET_HPP
#define ILLDIST_POINT_SET_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace illdist {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

// A finite subset S of [1, N]^d. Points are stored lexicographically sorted
// and pairwise distinct; every downstream sampling step indexes this order,
// so the representation is canonical by construction.
struct LatticePointSet {
  int dim = 0;               // d >= 1
  Coord box_bound = 0;       // N >= 2
  std::vector<Point> points; // sorted, unique, all coordinates in [1, N]

  std::size_t size() const { return points.size(); }
};

// Validates, deduplicates and sorts. Throws coordinate_out_of_range /
// empty_set / invalid_parameter.
LatticePointSet make_set(int dim, Coord box_bound, std::vector<Point> raw_points);

// Point-set text format, v1:
//   line 1:  "# illdist v1 d=<d> N=<N>"
//   then one point per line, d base-10 integers joined by ',' (no spaces),
//   LF line endings, lexicographically sorted.
// save_set always emits the canonical form; load_set accepts unsorted or
// duplicated rows and canonicalizes, so load(save(S)) == S.
void save_set(const LatticePointSet& set, std::ostream& out);
void save_set_file(const LatticePointSet& set, const std::string& path);
LatticePointSet load_set(std::istream& in, const std::string& source_name = "<stream>");
LatticePointSet load_set_file(const std::string& path);

}  // namespace illdist

#endif
