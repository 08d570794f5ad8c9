#include "illdist/residue.hpp"

#include <cmath>

#include "illdist/error.hpp"

namespace illdist {

Point reduce_mod(const Point& x, std::uint64_t p) {
  Point r(x.size());
  const auto m = static_cast<Coord>(p);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Coord v = x[i] % m;
    if (v < 0) v += m;
    r[i] = v;
  }
  return r;
}

ResidueProfile occupancy_profile(const LatticePointSet& S, std::uint64_t p) {
  require(p >= 2, errc::invalid_parameter, "p must be a prime >= 2");
  require(!S.points.empty(), errc::empty_set, "cannot profile an empty set");
  ResidueProfile prof;
  prof.p = p;
  prof.dim = S.dim;
  prof.total = static_cast<std::int64_t>(S.size());
  for (const Point& x : S.points) ++prof.class_counts[reduce_mod(x, p)];
  return prof;
}

IllDistReport check_ill_distribution(const LatticePointSet& S,
                                     const PrimeWindow& window, double kappa,
                                     double c_bound) {
  require(c_bound > 0.0, errc::invalid_parameter, "c_bound must be positive");
  require(kappa >= 0.0, errc::invalid_parameter, "kappa must be >= 0");

  IllDistReport report;
  report.kappa = kappa;
  report.c_bound = c_bound;
  if (window.empty()) {
    report.pass = true;
    report.empty_window = true;
    return report;
  }
  bool all_ok = true;
  for (std::uint64_t p : window.primes) {
    const ResidueProfile prof = occupancy_profile(S, p);
    OccupancyCheck check;
    check.p = p;
    check.occupancy = prof.occupancy();
    check.limit = c_bound * std::pow(static_cast<double>(p), kappa);
    check.flagged = static_cast<double>(check.occupancy) > check.limit;
    all_ok = all_ok && !check.flagged;
    report.per_prime.push_back(check);
  }
  report.pass = all_ok;
  return report;
}

bool is_good_tuple(const Point& x, std::span<const Point> L, std::uint64_t p) {
  for (const Point& c : L)
    require(c.size() == x.size(), errc::dimension_mismatch,
            "tuple entries must match the dimension of x");
  const Point rx = reduce_mod(x, p);
  for (const Point& c : L)
    if (reduce_mod(c, p) == rx) return true;
  return false;
}

namespace {

double pow_int(double base, int e) {
  double acc = 1.0;
  double b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace

double bad_tuple_probability(const ResidueProfile& profile, int r) {
  require(r >= 0, errc::invalid_parameter, "r must be >= 0");
  if (r == 0) return 1.0;  // the empty tuple never matches
  const auto total = static_cast<double>(profile.total);
  double sum = 0.0, comp = 0.0;  // Kahan
  for (const auto& [cls, count] : profile.class_counts) {
    const double sa = static_cast<double>(count) / total;
    const double term = sa * pow_int(1.0 - sa, r);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

mpq_class bad_tuple_probability_exact(const ResidueProfile& profile, int r) {
  require(r >= 0, errc::invalid_parameter, "r must be >= 0");
  require(profile.total <= 64, errc::invalid_parameter,
          "exact mode supports |S| <= 64");
  // sum_a count_a (total - count_a)^r / total^(r+1)
  mpz_class numerator = 0;
  const mpz_class total(static_cast<long>(profile.total));
  for (const auto& [cls, count] : profile.class_counts) {
    mpz_class miss;
    mpz_class base = total - count;
    mpz_pow_ui(miss.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(r));
    numerator += count * miss;
  }
  mpz_class denominator;
  mpz_pow_ui(denominator.get_mpz_t(), total.get_mpz_t(),
             static_cast<unsigned long>(r + 1));
  mpq_class q(numerator, denominator);
  q.canonicalize();
  return q;
}

}  // namespace illdist
