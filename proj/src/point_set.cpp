#include "illdist/point_set.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "illdist/error.hpp"

namespace illdist {

LatticePointSet make_set(int dim, Coord box_bound, std::vector<Point> raw_points) {
  require(dim >= 1, errc::invalid_parameter, "dim must be >= 1");
  require(box_bound >= 2, errc::invalid_parameter, "box bound N must be >= 2");
  for (const Point& p : raw_points) {
    if (static_cast<int>(p.size()) != dim)
      raise(errc::dimension_mismatch,
            "point has " + std::to_string(p.size()) + " coordinates, expected " +
                std::to_string(dim));
    for (Coord c : p) {
      if (c < 1 || c > box_bound)
        raise(errc::coordinate_out_of_range,
              "coordinate " + std::to_string(c) + " outside [1, " +
                  std::to_string(box_bound) + "]");
    }
  }
  std::sort(raw_points.begin(), raw_points.end());
  raw_points.erase(std::unique(raw_points.begin(), raw_points.end()),
                   raw_points.end());
  require(!raw_points.empty(), errc::empty_set, "point set is empty");
  return LatticePointSet{dim, box_bound, std::move(raw_points)};
}

void save_set(const LatticePointSet& set, std::ostream& out) {
  out << "# illdist v1 d=" << set.dim << " N=" << set.box_bound << "\n";
  for (const Point& p : set.points) {
    for (int i = 0; i < set.dim; ++i) {
      if (i) out << ',';
      out << p[static_cast<std::size_t>(i)];
    }
    out << "\n";
  }
}

namespace {

Coord parse_coord(std::string_view tok, int line_no) {
  Coord value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    raise(errc::parse_error, "line " + std::to_string(line_no) +
                                 ": malformed integer field '" +
                                 std::string(tok) + "'");
  return value;
}

}  // namespace

LatticePointSet load_set(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line))
    raise(errc::parse_error, source_name + ": line 1: missing header");

  int dim = 0;
  long long n = 0;
  char trailing = 0;
  int matched = std::sscanf(line.c_str(), "# illdist v1 d=%d N=%lld%c", &dim,
                            &n, &trailing);
  if (matched != 2)
    raise(errc::parse_error, source_name + ": line 1: bad header '" + line + "'");
  if (dim < 1 || n < 2)
    raise(errc::header_mismatch,
          source_name + ": header declares d=" + std::to_string(dim) +
              " N=" + std::to_string(n));

  std::vector<Point> points;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty())
      raise(errc::parse_error,
            source_name + ": line " + std::to_string(line_no) + ": empty line");
    Point p;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      std::string_view tok(line.data() + start,
                           (comma == std::string::npos ? line.size() : comma) -
                               start);
      p.push_back(parse_coord(tok, line_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(p.size()) != dim)
      raise(errc::parse_error, source_name + ": line " + std::to_string(line_no) +
                                   ": expected " + std::to_string(dim) +
                                   " fields, got " + std::to_string(p.size()));
    for (Coord c : p)
      if (c < 1 || c > n)
        raise(errc::coordinate_out_of_range,
              source_name + ": line " + std::to_string(line_no) +
                  ": coordinate " + std::to_string(c) + " outside [1, " +
                  std::to_string(n) + "]");
    points.push_back(std::move(p));
  }
  return make_set(dim, static_cast<Coord>(n), std::move(points));
}

void save_set_file(const LatticePointSet& set, const std::string& path) {
  namespace fs = std::filesystem;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    require(out.good(), errc::io_write_failed, "cannot open " + tmp);
    save_set(set, out);
    out.flush();
    require(out.good(), errc::io_write_failed, "write failed for " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  require(!ec, errc::io_write_failed, "rename to " + path + " failed");
}

LatticePointSet load_set_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io_not_found, "cannot open " + path);
  return load_set(in, path);
}

}  // namespace illdist
