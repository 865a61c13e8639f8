#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nambu {

/// Exact rational in lowest terms (GMP keeps mpq_class canonical).
using Rational = mpq_class;

/// Build a canonical rational from numerator/denominator; throws on zero denominator.
Rational make_rational(const mpz_class& num, const mpz_class& den);
Rational make_rational(long num, long den = 1);

/// Exponent vector of a monomial, one entry per coordinate.
using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over Q in `dim` variables.
///
/// Terms are kept in a lexicographically ordered map with no zero
/// coefficients, so two equal polynomials have identical term maps and
/// iteration order (and therefore numeric evaluation) is deterministic.
/// Variables are addressed 1-based, matching coordinate labels x1..x_dim.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t dim);

  static Polynomial constant(std::size_t dim, const Rational& c);
  static Polynomial variable(std::size_t dim, std::size_t var);
  static Polynomial monomial(std::size_t dim, Exponents exps, const Rational& c);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const;

  /// Coefficient of the given monomial (zero if absent).
  Rational coefficient(const Exponents& exps) const;
  Rational constant_term() const;

  /// True if some term has a nonzero exponent on `var` (1-based).
  bool depends_on(std::size_t var) const;

  /// Adds c * x^exps, dropping the term if it cancels.
  void add_term(const Exponents& exps, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  std::string to_string() const;

 private:
  void require_same_dim(const Polynomial& o) const;

  std::size_t dim_;
  TermMap terms_;
};

enum class PolyOp { add, mul, neg, scale };

/// Single entry point for the four ring operations. `neg` ignores `b`;
/// `scale` uses `c`, the others use `b`.
Polynomial poly_algebra(PolyOp op, const Polynomial& a, const Polynomial& b);
Polynomial poly_algebra(PolyOp op, const Polynomial& a, const Rational& c);

/// Partial derivative with respect to x_var (1-based).
Polynomial diff(const Polynomial& p, std::size_t var);

/// Double-precision evaluation, summing terms in lexicographic order.
double evaluate(const Polynomial& p, std::span<const double> point);

/// Exact value of \int_0^1 t^{k-1} p(t x) dt as a polynomial in x:
/// each term c x^E becomes c/(k+|E|) x^E.
Polynomial radial_integral(const Polynomial& p, unsigned k);

/// Flattened double-precision copy of a polynomial for hot numeric loops.
/// Term order matches `evaluate`, so results are bit-identical to it.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p);

  std::size_t dim() const { return dim_; }
  double operator()(std::span<const double> point) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coefs_;
  // Per term: list of (variable, exponent) pairs with exponent > 0.
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> vars_;
  std::vector<std::uint32_t> pows_;
};

}  // namespace nambu
