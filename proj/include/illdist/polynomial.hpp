#ifndef ILLDIST_POLYNOMIAL_HPP
#define ILLDIST_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "illdist/point_set.hpp"

namespace illdist {

using Exponents = std::vector<int>;

// Graded lexicographic order on exponent vectors: first by total degree,
// then lexicographically. This is the one monomial order of the project;
// evaluation-matrix columns and serialization both follow it.
struct GradedLexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

int total_degree(const Exponents& e);

// All exponent vectors in d variables of total degree <= D, ascending in
// graded-lex order. The count is binomial(D+d, d).
std::vector<Exponents> monomials_up_to_degree(int d, int D);

// Exact multivariate polynomial over Z. Zero coefficients are never stored;
// the zero polynomial is the empty term map and is rejected wherever the
// contracts require a nonzero polynomial.
class IntegerPolynomial {
 public:
  using TermMap = std::map<Exponents, mpz_class, GradedLexLess>;

  IntegerPolynomial() = default;
  explicit IntegerPolynomial(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // Adds coeff * x^e, erasing the term if the sum cancels.
  void add_term(const Exponents& e, const mpz_class& coeff);

  int degree() const;          // max total degree; -1 for the zero polynomial
  mpz_class height() const;    // max |coefficient|; 0 for the zero polynomial

  mpz_class evaluate(const Point& x) const;

  std::string to_string() const;

  friend IntegerPolynomial operator*(const IntegerPolynomial& a,
                                     const IntegerPolynomial& b);

 private:
  int dim_ = 0;
  TermMap terms_;
};

struct PolynomialMeasure {
  int degree = 0;
  mpz_class height;
  double complexity = 0.0;  // max(degree, ln(height)/ln(N))
};

// Definition-level measurement of a polynomial against a box bound N.
// Throws zero_polynomial for the zero polynomial.
PolynomialMeasure measure_polynomial(const IntegerPolynomial& P, Coord N);

// Natural log of a positive big integer, exact to double rounding.
double log_mpz(const mpz_class& v);

}  // namespace illdist

#endif
