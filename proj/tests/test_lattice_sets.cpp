#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <illdist/error.hpp>
#include <illdist/generators.hpp>
#include <illdist/point_set.hpp>
#include <illdist/primes.hpp>
#include <illdist/residue.hpp>

#include <cmath>
#include <functional>
#include <set>
#include <sstream>

using namespace illdist;

namespace {

bool throws_code(errc expected, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code() == expected;
  }
  return false;
}

}  // namespace

TEST_CASE("make_set dedups and sorts") {
  auto s = make_set(2, 10, {{1, 1}, {1, 1}, {2, 3}});
  CHECK(s.size() == 2);
  CHECK(s.points[0] == Point{1, 1});
  CHECK(s.points[1] == Point{2, 3});
}

TEST_CASE("make_set rejects out-of-range coordinates") {
  CHECK(throws_code(errc::coordinate_out_of_range,
                    [] { make_set(1, 5, {{6}}); }));
  CHECK(throws_code(errc::empty_set, [] { make_set(2, 10, {}); }));
}

TEST_CASE("make_set singleton") {
  auto s = make_set(2, 10, {{3, 4}});
  CHECK(s.size() == 1);
  CHECK(s.points[0] == Point{3, 4});
}

TEST_CASE("crt generator, full mode, matches direct enumeration") {
  // seed 8 draws residues {1 mod 2, 1 mod 3}; then the set must be exactly
  // the x in [100] with x = 1 (mod 6).
  auto res = gen_crt_set(100, 0.5, CrtMode::full, 3, 8);
  REQUIRE(res.residues.size() == 2);
  CHECK(res.residues[0].first == 2);
  CHECK(res.residues[0].second == std::vector<Coord>{1});
  CHECK(res.residues[1].first == 3);
  CHECK(res.residues[1].second == std::vector<Coord>{1});
  std::vector<Point> expected;
  for (Coord x = 1; x <= 100; ++x)
    if (x % 6 == 1) expected.push_back({x});
  CHECK(res.set.points == expected);
  CHECK(res.set.size() == 17);
}

TEST_CASE("crt generator, full mode, oracle for arbitrary seeds") {
  for (std::uint64_t seed : {0ull, 1ull, 5ull, 99ull}) {
    auto res = gen_crt_set(100, 0.5, CrtMode::full, 3, seed);
    std::set<Point> expected;
    for (Coord x = 1; x <= 100; ++x) {
      bool ok = true;
      for (const auto& [p, rs] : res.residues) {
        bool hit = false;
        for (Coord r : rs) hit = hit || (x % static_cast<Coord>(p) == r);
        ok = ok && hit;
      }
      if (ok) expected.insert({x});
    }
    CHECK(std::set<Point>(res.set.points.begin(), res.set.points.end()) ==
          expected);
  }
}

TEST_CASE("crt generator, small mode") {
  // floor((ln 100)^0.5) = floor(2.146) = 2
  auto small = gen_crt_set(100, 0.5, CrtMode::small, 0, 8);
  CHECK(small.set.size() == 2);
  auto full = gen_crt_set(100, 0.5, CrtMode::full, 5, 8);
  for (const Point& x : small.set.points) {
    bool found = false;
    for (const Point& y : full.set.points) found = found || x == y;
    CHECK(found);
  }
}

TEST_CASE("crt generator small-mode occupancy guarantee") {
  for (std::uint64_t seed : {0ull, 3ull, 17ull}) {
    auto res = gen_crt_set(2000, 0.4, CrtMode::small, 0, seed);
    for (std::uint64_t p : primes_up_to(60)) {
      auto prof = occupancy_profile(res.set, p);
      const auto cap = std::max<std::size_t>(
          1, static_cast<std::size_t>(
                 std::floor(std::pow(static_cast<double>(p), 0.4))));
      CHECK(prof.occupancy() <= cap);
    }
  }
}

TEST_CASE("crt generator parameter validation") {
  CHECK(throws_code(errc::invalid_parameter,
                    [] { gen_crt_set(100, 1.5, CrtMode::small, 0, 0); }));
  CHECK(throws_code(errc::invalid_parameter,
                    [] { gen_crt_set(10, 0.5, CrtMode::small, 0, 0); }));
  // primorial 2*3*5*7 = 210 > 100: B = 7 must be rejected
  CHECK(throws_code(errc::generation_failed,
                    [] { gen_crt_set(100, 0.5, CrtMode::full, 7, 0); }));
}

TEST_CASE("crt generator is deterministic in the seed") {
  auto a = gen_crt_set(500, 0.6, CrtMode::small, 0, 7);
  auto b = gen_crt_set(500, 0.6, CrtMode::small, 0, 7);
  CHECK(a.set.points == b.set.points);
  CHECK(a.residues == b.residues);
}

TEST_CASE("product set") {
  auto X = make_set(1, 10, {{1}, {7}});
  auto S = gen_product_set(X, 2);
  CHECK(S.points == std::vector<Point>{{1, 1}, {1, 7}, {7, 1}, {7, 7}});

  auto Y = make_set(1, 10, {{3}});
  auto T = gen_product_set(Y, 3);
  CHECK(T.points == std::vector<Point>{{3, 3, 3}});
}

TEST_CASE("product set occupancy is the power of the base occupancy") {
  auto X = make_set(1, 50, {{1}, {7}, {12}, {30}, {49}});
  auto S = gen_product_set(X, 2);
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull}) {
    auto base = occupancy_profile(X, p).occupancy();
    auto prod = occupancy_profile(S, p).occupancy();
    CHECK(prod == base * base);
  }
}

TEST_CASE("perturbed set with clipping") {
  auto S = gen_perturbed_set(3, {0, 1}, {1, 2});  // f(x) = x
  CHECK(S.points == std::vector<Point>{{1, 1}, {1, 2}, {2, 2}, {3, 3}});

  auto T = gen_perturbed_set(5, {1}, {2});  // f = 1
  CHECK(T.points ==
        std::vector<Point>{{1, 2}, {2, 2}, {3, 2}, {4, 2}, {5, 2}});

  CHECK(throws_code(errc::empty_set, [] { gen_perturbed_set(3, {0}, {1}); }));
}

TEST_CASE("perturbed set occupancy bound") {
  // occupancy mod p <= p * |classes of Y mod p| + deg f
  const std::vector<Coord> f = {1, 0, 1};  // 1 + x^2, degree 2
  auto Y = make_set(1, 40, {{1}, {2}, {5}});
  auto S = gen_perturbed_set(40, f, {1, 2, 5});
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull}) {
    auto y_classes = occupancy_profile(Y, p).occupancy();
    auto occ = occupancy_profile(S, p).occupancy();
    CHECK(occ <= p * y_classes + 2);
  }
}

TEST_CASE("graph shift set") {
  auto S = gen_graph_shift_set(100, 0.0, 2, {1, 2});
  CHECK(S.size() == 18);
  for (const Point& pt : S.points) {
    const Coord x = pt[0];
    CHECK(x >= 1);
    CHECK(x <= 9);
    CHECK((pt[1] == x * x + 1 || pt[1] == x * x + 2));
  }

  auto diag = gen_graph_shift_set(10, 0.0, 1, {1});
  CHECK(diag.size() == 9);
  for (const Point& pt : diag.points) CHECK(pt[1] == pt[0] + 1);

  // floor(4^0.9) = 3, so f(1) = 3 and only (1, 4) fits
  auto tiny = gen_graph_shift_set(4, 0.9, 3, {1});
  CHECK(tiny.points == std::vector<Point>{{1, 4}});

  CHECK(throws_code(errc::empty_set,
                    [] { gen_graph_shift_set(3, 0.0, 2, {4}); }));
}

TEST_CASE("generators keep points inside the box and distinct") {
  auto check = [](const LatticePointSet& S) {
    std::set<Point> seen;
    for (const Point& p : S.points) {
      CHECK(static_cast<int>(p.size()) == S.dim);
      for (Coord c : p) {
        CHECK(c >= 1);
        CHECK(c <= S.box_bound);
      }
      CHECK(seen.insert(p).second);
    }
  };
  check(gen_crt_set(300, 0.5, CrtMode::full, 5, 3).set);
  check(gen_product_set(make_set(1, 9, {{2}, {9}}), 3));
  check(gen_perturbed_set(30, {1, 2}, {1, 3}));
  check(gen_graph_shift_set(50, 0.3, 2, {1, 5}));
}

TEST_CASE("save/load round trip") {
  auto S = make_set(2, 10, {{1, 2}});
  std::ostringstream out;
  save_set(S, out);
  CHECK(out.str() == "# illdist v1 d=2 N=10\n1,2\n");
  std::istringstream in(out.str());
  auto T = load_set(in);
  CHECK(T.dim == S.dim);
  CHECK(T.box_bound == S.box_bound);
  CHECK(T.points == S.points);
}

TEST_CASE("save/load round trip on a generated set") {
  auto S = gen_graph_shift_set(80, 0.2, 2, {1, 2, 3});
  std::ostringstream out;
  save_set(S, out);
  std::istringstream in(out.str());
  auto T = load_set(in);
  CHECK(T.points == S.points);
  std::ostringstream out2;
  save_set(T, out2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("load_set error paths") {
  CHECK(throws_code(errc::coordinate_out_of_range, [] {
    std::istringstream in("# illdist v1 d=1 N=10\n11\n");
    load_set(in);
  }));
  CHECK(throws_code(errc::parse_error, [] {
    std::istringstream in("# illdist v1 d=2 N=10\n1,2,3\n");
    load_set(in);
  }));
  CHECK(throws_code(errc::parse_error, [] {
    std::istringstream in("bogus header\n1,2\n");
    load_set(in);
  }));
  CHECK(throws_code(errc::parse_error, [] {
    std::istringstream in("# illdist v1 d=2 N=10\n1, 2\n");  // space
    load_set(in);
  }));
  CHECK(throws_code(errc::header_mismatch, [] {
    std::istringstream in("# illdist v1 d=0 N=10\n");
    load_set(in);
  }));
}

TEST_CASE("generate_set dispatches on the spec variant") {
  auto crt = generate_set(100, CrtSpec{0.5, CrtMode::full, 3}, 8);
  CHECK(crt.size() == 17);

  auto prod = generate_set(0, ProductSpec{make_set(1, 10, {{1}, {7}}), 2}, 0);
  CHECK(prod.size() == 4);
  CHECK(prod.box_bound == 10);

  auto pert = generate_set(5, PerturbedSpec{{1}, {2}}, 0);
  CHECK(pert.size() == 5);

  auto shift = generate_set(10, GraphShiftSpec{0.0, 1, {1}}, 0);
  CHECK(shift.size() == 9);
}
