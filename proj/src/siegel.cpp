#include "illdist/siegel.hpp"

#include <algorithm>
#include <cmath>

#include "illdist/error.hpp"
#include "illdist/intlinalg.hpp"

namespace illdist {

namespace {

// largest t >= 0 with t^d <= v
std::int64_t floor_root(std::int64_t v, int d) {
  if (v <= 0) return 0;
  auto t = static_cast<std::int64_t>(
      std::floor(std::pow(static_cast<double>(v), 1.0 / d)));
  auto pow_fits = [&](std::int64_t base) {
    mpz_class acc = 1;
    for (int i = 0; i < d; ++i) acc *= base;
    return acc <= v;
  };
  while (t > 0 && !pow_fits(t)) --t;
  while (pow_fits(t + 1)) ++t;
  return t;
}

mpz_class factorial_mpz(int d) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(d));
  return f;
}

// monomial values of point x for the given exponent list
MpzRow monomial_row(const Point& x, const std::vector<Exponents>& monomials,
                    int d, int D) {
  std::vector<std::vector<mpz_class>> powers(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    auto& tbl = powers[static_cast<std::size_t>(i)];
    tbl.resize(static_cast<std::size_t>(D) + 1);
    tbl[0] = 1;
    for (int k = 1; k <= D; ++k)
      tbl[static_cast<std::size_t>(k)] =
          tbl[static_cast<std::size_t>(k - 1)] * x[static_cast<std::size_t>(i)];
  }
  MpzRow row;
  row.reserve(monomials.size());
  for (const Exponents& e : monomials) {
    mpz_class v = 1;
    for (int i = 0; i < d; ++i)
      v *= powers[static_cast<std::size_t>(i)]
                 [static_cast<std::size_t>(e[static_cast<std::size_t>(i)])];
    row.push_back(std::move(v));
  }
  return row;
}

IntegerPolynomial vector_to_polynomial(const MpzRow& coeffs,
                                       const std::vector<Exponents>& monomials,
                                       int d) {
  IntegerPolynomial P(d);
  for (std::size_t j = 0; j < monomials.size(); ++j)
    if (coeffs[j] != 0) P.add_term(monomials[j], coeffs[j]);
  return P;
}

mpz_class sup_norm(const MpzRow& v) {
  mpz_class h = 0;
  for (const mpz_class& c : v) {
    mpz_class a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

}  // namespace

mpz_class binomial_mpz(int n, int k) {
  require(n >= 0 && k >= 0, errc::invalid_parameter, "binomial needs n, k >= 0");
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return b;
}

int choose_degree(std::int64_t r, int d) {
  require(r >= 1, errc::invalid_parameter, "r must be >= 1");
  require(d >= 1 && d <= 12, errc::invalid_parameter, "d must lie in [1, 12]");
  const mpz_class fact = factorial_mpz(d);
  require(fact * r <= mpz_class(INT64_MAX), errc::invalid_parameter,
          "d! * r too large");
  const std::int64_t v = mpz_class(fact * r).get_si();
  const std::int64_t strict = floor_root(v, d) + 1;

  int dprime = 1;
  while (binomial_mpz(dprime + d, d) < 2 * mpz_class(static_cast<long>(r)))
    ++dprime;

  return static_cast<int>(std::max<std::int64_t>(strict, dprime));
}

double siegel_bound(int d, int D, Coord N, std::int64_t m) {
  require(d >= 1 && D >= 1 && N >= 2, errc::invalid_parameter,
          "need d >= 1, D >= 1, N >= 2");
  require(m >= 0, errc::invalid_parameter, "m must be >= 0");
  const mpz_class R = binomial_mpz(D + d, d);
  require(R > m, errc::overdetermined,
          "|Sigma| = " + std::to_string(m) + " must be < R = " + R.get_str());
  const double ratio =
      static_cast<double>(m) / (R.get_d() - static_cast<double>(m));
  return std::log(4.0) +
         ratio * (log_mpz(R) + D * std::log(static_cast<double>(N)));
}

SiegelInstance make_siegel_instance(std::vector<Point> sigma, int d, int D,
                                    Coord N) {
  require(d >= 1, errc::invalid_parameter, "d must be >= 1");
  require(D >= 1, errc::invalid_parameter, "D must be >= 1");
  require(N >= 2, errc::invalid_parameter, "N must be >= 2");
  require(!sigma.empty(), errc::empty_set, "Sigma must be nonempty");
  for (const Point& s : sigma)
    require(static_cast<int>(s.size()) == d, errc::dimension_mismatch,
            "Sigma point dimension mismatch");
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());

  SiegelInstance inst;
  inst.d = d;
  inst.D = D;
  inst.N = N;
  inst.R = binomial_mpz(D + d, d);
  require(inst.R <= 1000000, errc::invalid_parameter,
          "monomial count R = " + inst.R.get_str() + " exceeds the 1e6 cap");
  inst.log_height_bound =
      siegel_bound(d, D, N, static_cast<std::int64_t>(sigma.size()));
  inst.sigma = std::move(sigma);
  return inst;
}

bool height_within_bound(const mpz_class& height, int d, int D, Coord N,
                         std::int64_t m) {
  const mpz_class R = binomial_mpz(D + d, d);
  require(R > m, errc::overdetermined, "m must be < R");
  if (height <= 4) return true;  // the bound is always >= 4
  if (m == 0) return false;

  const double log_bound = siegel_bound(d, D, N, m);
  const double log_h = log_mpz(height);
  // Far from the boundary double precision settles it; the margin dwarfs
  // the rounding error of both logs.
  if (log_h < log_bound - 0.5) return true;
  if (log_h > log_bound + 0.5) return false;

  // Boundary zone: height <= 4 (R N^D)^(m/(R-m))  <=>
  // height^(R-m) <= 4^(R-m) (R N^D)^m, all integral.
  if (log_bound <= 4096.0 * std::log(2.0) && R.fits_slong_p()) {
    const long Rm = mpz_class(R - m).get_si();
    mpz_class lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), height.get_mpz_t(),
               static_cast<unsigned long>(Rm));
    mpz_class nd;
    const mpz_class nbig(static_cast<long>(N));
    mpz_pow_ui(nd.get_mpz_t(), nbig.get_mpz_t(), static_cast<unsigned long>(D));
    const mpz_class rhs_base = R * nd;
    mpz_pow_ui(rhs.get_mpz_t(), rhs_base.get_mpz_t(),
               static_cast<unsigned long>(m));
    mpz_class four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(Rm));
    rhs *= four_pow;
    return lhs <= rhs;
  }
  return log_h <= log_bound + 1e-9;
}

namespace {

// Odometer enumeration of coefficient vectors in [-H, H]^R. Returns the
// minimal-sup-norm vanishing vector, or nullopt. int64 fast path when the
// dot products cannot overflow.
std::optional<MpzRow> brute_force_search(const MpzMatrix& eval_matrix,
                                         std::size_t R, std::int64_t H) {
  const std::size_t m = eval_matrix.size();

  bool fits64 = true;
  mpz_class cap = 0;
  for (const auto& row : eval_matrix) {
    mpz_class row_sum = 0;
    for (const auto& v : row) row_sum += abs(v);
    row_sum *= H;
    if (row_sum > cap) cap = row_sum;
  }
  if (cap > mpz_class("4611686018427387904")) fits64 = false;  // 2^62

  std::vector<std::vector<std::int64_t>> fast;
  if (fits64) {
    fast.resize(m);
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& v : eval_matrix[i]) fast[i].push_back(v.get_si());
  }

  std::vector<std::int64_t> c(R, -H);
  std::optional<std::vector<std::int64_t>> best;
  std::int64_t best_norm = H + 1;
  while (true) {
    bool zero = true;
    std::int64_t norm = 0;
    for (std::int64_t v : c) {
      if (v != 0) zero = false;
      norm = std::max(norm, std::abs(v));
    }
    if (!zero && norm < best_norm) {
      bool vanishes = true;
      if (fits64) {
        for (std::size_t i = 0; i < m && vanishes; ++i) {
          std::int64_t acc = 0;
          for (std::size_t j = 0; j < R; ++j) acc += c[j] * fast[i][j];
          vanishes = acc == 0;
        }
      } else {
        for (std::size_t i = 0; i < m && vanishes; ++i) {
          mpz_class acc = 0;
          for (std::size_t j = 0; j < R; ++j) acc += c[j] * eval_matrix[i][j];
          vanishes = acc == 0;
        }
      }
      if (vanishes) {
        best = c;
        best_norm = norm;
        if (best_norm == 1) break;  // cannot improve
      }
    }
    // advance odometer
    std::size_t pos = 0;
    while (pos < R && c[pos] == H) c[pos++] = -H;
    if (pos == R) break;
    ++c[pos];
  }
  if (!best) return std::nullopt;
  MpzRow out;
  out.reserve(R);
  for (std::int64_t v : *best) out.emplace_back(static_cast<long>(v));
  return out;
}

}  // namespace

std::optional<IntegerPolynomial> brute_force_min_height(
    const std::vector<Point>& sigma, int d, int D, Coord N, std::int64_t H_max) {
  require(H_max >= 0, errc::invalid_parameter, "H_max must be >= 0");
  require(d >= 1 && D >= 1 && N >= 2, errc::invalid_parameter,
          "need d >= 1, D >= 1, N >= 2");
  const auto monomials = monomials_up_to_degree(d, D);
  const std::size_t R = monomials.size();

  const double candidates =
      std::pow(2.0 * static_cast<double>(H_max) + 1.0, static_cast<double>(R));
  require(candidates <= 1e8, errc::search_space_too_large,
          "(2 H_max + 1)^R exceeds 1e8 candidates");
  if (H_max == 0) return std::nullopt;

  MpzMatrix eval_matrix;
  eval_matrix.reserve(sigma.size());
  for (const Point& s : sigma) {
    require(static_cast<int>(s.size()) == d, errc::dimension_mismatch,
            "Sigma point dimension mismatch");
    eval_matrix.push_back(monomial_row(s, monomials, d, D));
  }

  auto found = brute_force_search(eval_matrix, R, H_max);
  if (!found) return std::nullopt;
  return vector_to_polynomial(*found, monomials, d);
}

namespace {

// Kernel + reduction + shortest vector over a given monomial prefix.
IntegerPolynomial kernel_candidate(const std::vector<Point>& sigma,
                                   const std::vector<Exponents>& monomials,
                                   int d, int D) {
  MpzMatrix A;
  A.reserve(sigma.size());
  for (const Point& s : sigma) A.push_back(monomial_row(s, monomials, d, D));

  MpzMatrix kernel = integer_kernel_basis(A);
  require(!kernel.empty(), errc::internal_error,
          "kernel unexpectedly empty with |Sigma| < R");
  if (!lll_reduce_fp(kernel)) lll_reduce(kernel);

  std::size_t best = 0;
  mpz_class best_norm = sup_norm(kernel[0]);
  for (std::size_t i = 1; i < kernel.size(); ++i) {
    mpz_class norm = sup_norm(kernel[i]);
    if (norm < best_norm) {
      best_norm = norm;
      best = i;
    }
  }

  IntegerPolynomial P = vector_to_polynomial(kernel[best], monomials, d);
  require(!P.is_zero(), errc::internal_error, "kernel produced a zero vector");
  for (const Point& s : sigma)
    require(P.evaluate(s) == 0, errc::internal_error,
            "kernel vector fails exact vanishing");
  return P;
}

}  // namespace

IntegerPolynomial solve_vanishing(const SiegelInstance& instance) {
  const int d = instance.d;
  const int D = instance.D;
  const auto m = static_cast<std::int64_t>(instance.sigma.size());
  require(instance.R > m, errc::overdetermined,
          "|Sigma| = " + std::to_string(m) + " must be < R = " +
              instance.R.get_str());

  const auto monomials = monomials_up_to_degree(d, D);

  // Large instances: try a graded-lex prefix of the monomials first. The
  // matrix and kernel shrink a lot, and the candidate still has to clear
  // the full instance's height bound below, so nothing is lost if the
  // prefix attempt comes up short.
  if (monomials.size() > 80) {
    const std::size_t prefix_size = std::min(
        monomials.size(),
        static_cast<std::size_t>(m) + std::max<std::size_t>(
                                          20, static_cast<std::size_t>(m) / 2));
    if (prefix_size < monomials.size()) {
      std::vector<Exponents> prefix(monomials.begin(),
                                    monomials.begin() + static_cast<std::ptrdiff_t>(prefix_size));
      IntegerPolynomial P = kernel_candidate(instance.sigma, prefix, d, D);
      if (height_within_bound(P.height(), d, D, instance.N, m)) return P;
    }
  }

  IntegerPolynomial P = kernel_candidate(instance.sigma, monomials, d, D);

  if (height_within_bound(P.height(), d, D, instance.N, m)) return P;

  // Pigeonhole guarantees a vector within the bound; search boxes of
  // doubling height until it appears.
  for (std::int64_t H = 1;; H *= 2) {
    std::optional<IntegerPolynomial> Q;
    try {
      Q = brute_force_min_height(instance.sigma, d, D, instance.N, H);
    } catch (const error& e) {
      if (e.code() == errc::search_space_too_large)
        raise(errc::internal_error,
              "reduced kernel vector misses the height bound and the "
              "fallback box search is infeasible");
      throw;
    }
    if (Q && height_within_bound(Q->height(), d, D, instance.N, m)) return *Q;
    if (std::log(static_cast<double>(H)) > instance.log_height_bound)
      raise(errc::internal_error,
            "no polynomial within the height bound found; this contradicts "
            "the counting argument");
  }
}

}  // namespace illdist
