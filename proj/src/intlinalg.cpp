#include "illdist/intlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "illdist/error.hpp"

namespace illdist {

namespace {

int cmp_abs(const mpz_class& a, const mpz_class& b) {
  return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

void row_submul(MpzMatrix& M, std::size_t dst, std::size_t src,
                const mpz_class& q) {
  for (std::size_t k = 0; k < M[dst].size(); ++k) M[dst][k] -= q * M[src][k];
}

}  // namespace

mpz_class dot(const MpzRow& a, const MpzRow& b) {
  mpz_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

namespace {

// nearest integer to a/b (ties away from the floor side)
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) {
    // fdiv leaves r with the sign of b, so r/b lies in [0, 1)
    mpz_class two_r = 2 * abs(r);
    if (cmp_abs(two_r, b) >= 0) q += 1;
  }
  return q;
}

}  // namespace

MpzMatrix integer_kernel_basis(const MpzMatrix& A) {
  const std::size_t m = A.size();
  require(m > 0, errc::invalid_parameter, "kernel of an empty matrix");
  const std::size_t n = A[0].size();

  // Start from the identity basis of Z^n and intersect with one constraint
  // at a time: a Euclidean descent on the values <b_i, a> combines basis
  // vectors unimodularly until a single nonzero value remains, and dropping
  // that vector leaves exactly {x in the current lattice : <x, a> = 0}. The
  // descent works with nearest-integer quotients, which keeps the basis
  // entries near the scale of the final kernel instead of the scale of the
  // transform matrix.
  MpzMatrix basis(n, MpzRow(n, 0));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;

  auto max_entry_bits = [&]() {
    std::size_t bits = 0;
    for (const auto& row : basis)
      for (const auto& c : row)
        bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    return bits;
  };

  // The descent quotients compound into the basis entries. Re-reducing once
  // they pass a threshold keeps everything near the scale of the kernel
  // itself; the regrowth guard stops the trigger from refiring while the
  // lattice genuinely needs large entries.
  std::size_t settled_bits = 0;
  auto controlled_reduce = [&]() {
    if (basis.size() <= 1) return false;
    const std::size_t bits = max_entry_bits();
    if (bits <= 448 || bits <= settled_bits + 96) return false;
    if (!lll_reduce_fp(basis)) lll_reduce(basis);
    settled_bits = max_entry_bits();
    return true;
  };

  for (const MpzRow& a : A) {
    require(a.size() == n, errc::invalid_parameter, "ragged matrix");
    std::vector<mpz_class> value(basis.size());
    auto refresh_values = [&]() {
      value.resize(basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i) value[i] = dot(basis[i], a);
    };
    refresh_values();

    while (true) {
      if (controlled_reduce()) refresh_values();
      std::size_t s = basis.size();
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (value[i] == 0) continue;
        if (s == basis.size() || cmp_abs(value[i], value[s]) < 0) s = i;
      }
      if (s == basis.size()) break;  // constraint already satisfied

      bool others = false;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i == s || value[i] == 0) continue;
        const mpz_class q = round_div(value[i], value[s]);
        if (q != 0) {
          row_submul(basis, i, s, q);
          value[i] -= q * value[s];
        }
        others = others || value[i] != 0;
      }
      if (!others) {
        // lone nonzero value: that vector generates the complement
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(s));
        value.erase(value.begin() + static_cast<std::ptrdiff_t>(s));
        break;
      }
    }
  }
  return basis;
}

bool lll_reduce_fp(MpzMatrix& basis) {
  const std::size_t k = basis.size();
  if (k <= 1) return true;
  const std::size_t dim = basis[0].size();
  constexpr double delta = 0.99;

  // Gram matrix in doubles. Row operations update it incrementally; an
  // exact recompute every so often stops the drift from accumulating. The
  // exact post-verification downstream means drift can only cost reduction
  // quality, never correctness.
  std::vector<std::vector<double>> G(k, std::vector<double>(k, 0.0));
  auto refresh_gram = [&]() {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const double g = dot(basis[i], basis[j]).get_d();
        if (!std::isfinite(g)) return false;
        G[i][j] = g;
        G[j][i] = g;
      }
    return true;
  };
  if (!refresh_gram()) return false;

  std::vector<std::vector<double>> mu(k, std::vector<double>(k, 0.0));
  std::vector<double> B(k, 0.0);
  auto gs_row = [&](std::size_t i) {
    for (std::size_t j = 0; j < i; ++j) {
      double v = G[i][j];
      for (std::size_t t = 0; t < j; ++t) v -= mu[j][t] * mu[i][t] * B[t];
      mu[i][j] = v / B[j];
    }
    double b = G[i][i];
    for (std::size_t t = 0; t < i; ++t) b -= mu[i][t] * mu[i][t] * B[t];
    B[i] = b;
    return b > 0.0 && std::isfinite(b);
  };
  if (!gs_row(0)) return false;

  std::size_t iterations = 0;
  const std::size_t cap = 10000 * k * k + 100000;
  std::size_t updates_since_refresh = 0;

  std::size_t i = 1;
  while (i < k) {
    if (++iterations > cap) return false;
    if (updates_since_refresh > 512) {
      if (!refresh_gram()) return false;
      updates_since_refresh = 0;
    }
    if (!gs_row(i)) return false;

    for (std::size_t j = i; j-- > 0;) {
      if (std::abs(mu[i][j]) <= 0.5) continue;
      const double rounded = std::nearbyint(mu[i][j]);
      mpz_class q;
      if (std::abs(rounded) < 9.007e15) {
        q = static_cast<long>(rounded);
      } else {
        mpz_set_d(q.get_mpz_t(), rounded);
      }
      for (std::size_t t = 0; t < dim; ++t) basis[i][t] -= q * basis[j][t];
      // G row/column i tracks b_i <- b_i - q b_j in doubles
      const double gii = G[i][i] - 2.0 * rounded * G[i][j] +
                         rounded * rounded * G[j][j];
      for (std::size_t t = 0; t < k; ++t) {
        G[i][t] -= rounded * G[j][t];
        G[t][i] = G[i][t];
      }
      G[i][i] = gii;
      if (!std::isfinite(gii)) return false;
      for (std::size_t t = 0; t < j; ++t) mu[i][t] -= rounded * mu[j][t];
      mu[i][j] -= rounded;
      ++updates_since_refresh;
    }
    if (!gs_row(i)) return false;

    if (B[i] >= (delta - mu[i][i - 1] * mu[i][i - 1]) * B[i - 1]) {
      ++i;
    } else {
      std::swap(basis[i], basis[i - 1]);
      std::swap(G[i], G[i - 1]);
      for (std::size_t t = 0; t < k; ++t) std::swap(G[t][i], G[t][i - 1]);
      if (!gs_row(i - 1)) return false;
      i = std::max<std::size_t>(1, i - 1);
    }
  }
  return true;
}

void lll_reduce(MpzMatrix& basis) {
  const std::size_t k = basis.size();
  if (k <= 1) return;

  // All-integer LLL (de Weger): d[0..k] are the Gramian determinants with
  // d[0] = 1, and lambda[i][j] = d[j+1] * mu_{i,j}. Every division below is
  // exact.
  std::vector<mpz_class> d(k + 1);
  MpzMatrix lambda(k, MpzRow(k, 0));
  d[0] = 1;

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      mpz_class u = dot(basis[i], basis[j]);
      for (std::size_t s = 0; s < j; ++s)
        u = (d[s + 1] * u - lambda[i][s] * lambda[j][s]) / d[s];
      if (j < i) {
        lambda[i][j] = u;
      } else {
        d[i + 1] = u;
        require(d[i + 1] > 0, errc::internal_error,
                "LLL input basis is linearly dependent");
      }
    }
  }

  auto size_reduce = [&](std::size_t i, std::size_t j) {
    mpz_class two_l = 2 * lambda[i][j];
    if (cmp_abs(two_l, d[j + 1]) <= 0) return;
    mpz_class num = two_l + d[j + 1];
    mpz_class den = 2 * d[j + 1];
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    for (std::size_t t = 0; t < basis[i].size(); ++t)
      basis[i][t] -= q * basis[j][t];
    lambda[i][j] -= q * d[j + 1];
    for (std::size_t t = 0; t < j; ++t) lambda[i][t] -= q * lambda[j][t];
  };

  auto swap_step = [&](std::size_t i) {
    std::swap(basis[i - 1], basis[i]);
    for (std::size_t j = 0; j + 1 < i; ++j)
      std::swap(lambda[i - 1][j], lambda[i][j]);
    const mpz_class l = lambda[i][i - 1];
    const mpz_class b = (d[i - 1] * d[i + 1] + l * l) / d[i];
    for (std::size_t t = i + 1; t < k; ++t) {
      const mpz_class tmp = lambda[t][i];
      lambda[t][i] = (d[i + 1] * lambda[t][i - 1] - l * tmp) / d[i];
      lambda[t][i - 1] = (b * tmp + l * lambda[t][i]) / d[i + 1];
    }
    d[i] = b;
  };

  std::size_t i = 1;
  while (i < k) {
    size_reduce(i, i - 1);
    // Lovasz with delta = 3/4: swap when 4 d[i+1] d[i-1] < 3 d[i]^2 - 4 l^2
    const mpz_class lhs = 4 * d[i + 1] * d[i - 1];
    const mpz_class rhs =
        3 * d[i] * d[i] - 4 * lambda[i][i - 1] * lambda[i][i - 1];
    if (lhs < rhs) {
      swap_step(i);
      i = std::max<std::size_t>(1, i - 1);
    } else {
      for (std::size_t j = i - 1; j-- > 0;) size_reduce(i, j);
      ++i;
    }
  }
}

}  // namespace illdist
