#include "illdist/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "illdist/error.hpp"

namespace illdist {

int total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

std::vector<Exponents> monomials_up_to_degree(int d, int D) {
  require(d >= 1, errc::invalid_parameter, "dimension must be >= 1");
  require(D >= 0, errc::invalid_parameter, "degree must be >= 0");
  std::vector<Exponents> out;
  Exponents e(static_cast<std::size_t>(d), 0);
  auto emit = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == d - 1) {
      e[static_cast<std::size_t>(pos)] = remaining;
      out.push_back(e);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      e[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  for (int deg = 0; deg <= D; ++deg) emit(emit, 0, deg);
  return out;
}

void IntegerPolynomial::add_term(const Exponents& e, const mpz_class& coeff) {
  require(static_cast<int>(e.size()) == dim_, errc::dimension_mismatch,
          "exponent vector has the wrong dimension");
  for (int v : e)
    require(v >= 0, errc::invalid_parameter, "exponents must be nonnegative");
  if (coeff == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

int IntegerPolynomial::degree() const {
  if (terms_.empty()) return -1;
  // graded-lex map: the last key has maximal total degree
  return total_degree(terms_.rbegin()->first);
}

mpz_class IntegerPolynomial::height() const {
  mpz_class h = 0;
  for (const auto& [e, c] : terms_) {
    mpz_class a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

mpz_class IntegerPolynomial::evaluate(const Point& x) const {
  require(static_cast<int>(x.size()) == dim_, errc::dimension_mismatch,
          "point dimension does not match the polynomial");
  // power tables per coordinate up to the degree actually used
  std::vector<int> max_exp(static_cast<std::size_t>(dim_), 0);
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < dim_; ++i)
      max_exp[static_cast<std::size_t>(i)] =
          std::max(max_exp[static_cast<std::size_t>(i)], e[static_cast<std::size_t>(i)]);

  std::vector<std::vector<mpz_class>> powers(static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i) {
    auto& tbl = powers[static_cast<std::size_t>(i)];
    tbl.resize(static_cast<std::size_t>(max_exp[static_cast<std::size_t>(i)]) + 1);
    tbl[0] = 1;
    for (std::size_t k = 1; k < tbl.size(); ++k)
      tbl[k] = tbl[k - 1] * x[static_cast<std::size_t>(i)];
  }

  mpz_class acc = 0;
  for (const auto& [e, c] : terms_) {
    mpz_class term = c;
    for (int i = 0; i < dim_; ++i)
      term *= powers[static_cast<std::size_t>(i)]
                    [static_cast<std::size_t>(e[static_cast<std::size_t>(i)])];
    acc += term;
  }
  return acc;
}

IntegerPolynomial operator*(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  require(a.dim_ == b.dim_, errc::dimension_mismatch,
          "polynomial dimensions do not match");
  IntegerPolynomial prod(a.dim_);
  Exponents e(static_cast<std::size_t>(a.dim_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      prod.add_term(e, ca * cb);
    }
  }
  return prod;
}

std::string IntegerPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // print leading terms first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) out << (c >= 0 ? " + " : " - ");
    if (first && c < 0) out << "-";
    first = false;
    mpz_class a = abs(c);
    const bool constant = total_degree(e) == 0;
    if (a != 1 || constant) out << a.get_str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out << "x" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

double log_mpz(const mpz_class& v) {
  require(v > 0, errc::invalid_parameter, "log of a nonpositive integer");
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

PolynomialMeasure measure_polynomial(const IntegerPolynomial& P, Coord N) {
  require(!P.is_zero(), errc::zero_polynomial,
          "the zero polynomial has no complexity measure");
  require(N >= 2, errc::invalid_parameter, "N must be >= 2");
  PolynomialMeasure m;
  m.degree = P.degree();
  m.height = P.height();
  const double log_height = m.height == 1 ? 0.0 : log_mpz(m.height);
  m.complexity = std::max(static_cast<double>(m.degree),
                          log_height / std::log(static_cast<double>(N)));
  return m;
}

}  // namespace illdist
