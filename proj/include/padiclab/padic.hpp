#pragma once

// Elements of Q_p (p odd) at finite relative precision.

#include "padiclab/radical.hpp"
#include "padiclab/rational.hpp"

#include <optional>
#include <string>

namespace padiclab {

/// Prime p >= 3 and working relative precision N (units are known mod p^N).
class PAdicContext {
 public:
  PAdicContext(int64_t p, int64_t precision);

  int64_t prime() const { return p_; }
  int64_t precision() const { return precision_; }

  friend bool operator==(const PAdicContext&, const PAdicContext&) = default;

 private:
  int64_t p_;
  int64_t precision_;
};

/// x = p^v * u with u a unit known modulo p^k (k = relative precision <= N),
/// or the exact zero.
class PAdicNumber {
 public:
  static PAdicNumber zero(const PAdicContext& ctx);
  static PAdicNumber from_rational(const PAdicContext& ctx, const Rational& x);
  static PAdicNumber from_parts(const PAdicContext& ctx, int64_t v, const Integer& unit,
                                int64_t relative_precision);

  const PAdicContext& context() const { return ctx_; }
  bool is_zero() const { return zero_; }
  int64_t valuation() const;
  const Integer& unit() const { return unit_; }
  int64_t relative_precision() const { return rel_prec_; }
  /// x is known modulo p^(absolute precision).
  int64_t absolute_precision() const;

  PAdicNumber operator-() const;
  friend PAdicNumber operator+(const PAdicNumber& a, const PAdicNumber& b);
  friend PAdicNumber operator-(const PAdicNumber& a, const PAdicNumber& b) { return a + (-b); }
  friend PAdicNumber operator*(const PAdicNumber& a, const PAdicNumber& b);
  friend PAdicNumber operator/(const PAdicNumber& a, const PAdicNumber& b);
  PAdicNumber pow(uint64_t e) const;

  /// Representative of x modulo p^k; requires v >= 0 and k <= absolute precision.
  Integer residue(int64_t k) const;

  /// True iff a and b agree modulo p^k (k at most both absolute precisions).
  friend bool congruent(const PAdicNumber& a, const PAdicNumber& b, int64_t k);

  std::string to_string() const;

 private:
  PAdicNumber(const PAdicContext& ctx) : ctx_(ctx) {}

  PAdicContext ctx_;
  bool zero_ = true;
  int64_t v_ = 0;
  Integer unit_ = 0;
  int64_t rel_prec_ = 0;
};

/// |x|_p^r as an exact value in Q(p^(1/m)), m the denominator of r.
RadicalValue padic_abs(const PAdicNumber& x, const Rational& r);

/// True iff x is a nonzero square in Q_p (even valuation, unit part a QR mod p).
bool is_square(const PAdicNumber& x);

/// Square root by Hensel lifting; the root whose unit part is the least
/// residue mod p is returned. Absent when x is not a square.
std::optional<PAdicNumber> hensel_sqrt(const PAdicNumber& x);

struct BinomialSeries {
  PAdicNumber value;
  /// Every omitted term C(r,j) sigma^j has valuation at least this.
  int64_t tail_valuation;
};

/// Partial sum of (1 + sigma)^r = sum_j C(r,j) sigma^j over j < terms.
BinomialSeries binomial_series(const Rational& r, const PAdicNumber& sigma, int64_t terms);

}  // namespace padiclab
