#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Text format: a sum of terms "coef*x0^e0*x1^e1", coefficients written as
// integers or a/b. The letters x, y, z, w are accepted as x0..x3.

#include "padiclab/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace padiclab {

class SparsePolynomial {
 public:
  using Exponents = std::vector<uint32_t>;
  using TermMap = std::map<Exponents, Rational>;

  explicit SparsePolynomial(size_t nvars = 1);

  static SparsePolynomial constant(size_t nvars, const Rational& c);
  static SparsePolynomial variable(size_t nvars, size_t index);
  static SparsePolynomial monomial(const Rational& c, Exponents exps);
  /// c[0] + c[1] x + c[2] x^2 + ...
  static SparsePolynomial univariate(std::span<const Rational> coeffs);
  /// Parses the text format; nvars is raised to cover every variable seen.
  static SparsePolynomial parse(std::string_view text, size_t nvars = 1);

  size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(size_t var) const;
  bool is_homogeneous() const;

  void add_term(const Exponents& exps, const Rational& c);

  SparsePolynomial& operator+=(const SparsePolynomial& o);
  SparsePolynomial& operator-=(const SparsePolynomial& o);
  SparsePolynomial& operator*=(const Rational& c);
  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b);
  friend SparsePolynomial operator*(SparsePolynomial a, const Rational& c) { return a *= c; }
  SparsePolynomial operator-() const;
  SparsePolynomial pow(uint32_t e) const;
  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

  Rational evaluate(std::span<const Rational> point) const;
  Rational evaluate(std::span<const Integer> point) const;

  SparsePolynomial derivative(size_t var) const;
  /// Substitutes x_i -> subs[i]; subs.size() == nvars().
  SparsePolynomial compose(std::span<const SparsePolynomial> subs) const;
  /// Same polynomial viewed in more variables.
  SparsePolynomial widen(size_t nvars) const;

  /// Dense coefficients of a univariate polynomial, lowest degree first.
  std::vector<Rational> univariate_coeffs() const;

  /// min_k v_p(coeff_k); nullopt for the zero polynomial.
  std::optional<int64_t> content_valuation(int64_t p) const;

  std::string to_string() const;

 private:
  size_t nvars_;
  TermMap terms_;
};

/// Monic gcd of two univariate polynomials over Q (zero if both are zero).
SparsePolynomial univariate_gcd(const SparsePolynomial& a, const SparsePolynomial& b);

/// Resultant of two univariate polynomials (Sylvester determinant).
Rational resultant(const SparsePolynomial& a, const SparsePolynomial& b);

/// Discriminant (-1)^{n(n-1)/2} Res(f, f') / lc(f).
Rational discriminant(const SparsePolynomial& f);

/// x^n f(1/x) for univariate f of degree <= n.
SparsePolynomial reverse(const SparsePolynomial& f, int n);

}  // namespace padiclab
