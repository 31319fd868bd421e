#pragma once

// Exact arithmetic in the real field Q(p^(1/m)).
//
// A value is stored as c_0 + c_1 t + ... + c_{m-1} t^{m-1} with t the positive
// real root of t^m = p. Since t^m - p is irreducible over Q the coefficient
// vector is unique; values are kept at the smallest branch m that represents
// them, so two values are equal iff (p, m, coeffs) agree.

#include "padiclab/rational.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace padiclab {

class RadicalValue {
 public:
  explicit RadicalValue(int64_t p = 3);
  RadicalValue(int64_t p, const Rational& c);

  /// p^e as an exact value, e any rational.
  static RadicalValue prime_power(int64_t p, const Rational& e);

  int64_t prime() const { return p_; }
  int64_t branch() const { return static_cast<int64_t>(coeffs_.size()); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// The same value written over Q(p^(1/m)); m must be a multiple of branch().
  std::vector<Rational> coeffs_at(int64_t m) const;

  bool is_zero() const;
  bool is_rational() const { return coeffs_.size() == 1; }
  int sign() const;

  RadicalValue inverse() const;

  RadicalValue& operator+=(const RadicalValue& o);
  RadicalValue& operator-=(const RadicalValue& o);
  RadicalValue& operator*=(const RadicalValue& o);
  RadicalValue& operator/=(const RadicalValue& o) { return *this *= o.inverse(); }

  friend RadicalValue operator+(RadicalValue a, const RadicalValue& b) { return a += b; }
  friend RadicalValue operator-(RadicalValue a, const RadicalValue& b) { return a -= b; }
  friend RadicalValue operator*(RadicalValue a, const RadicalValue& b) { return a *= b; }
  friend RadicalValue operator/(RadicalValue a, const RadicalValue& b) { return a /= b; }
  RadicalValue operator-() const;

  friend bool operator==(const RadicalValue& a, const RadicalValue& b);
  friend std::strong_ordering operator<=>(const RadicalValue& a, const RadicalValue& b);

  /// Certified rational interval containing the value, each end within 2^-bits
  /// of the real number scaled by the coefficient size.
  std::pair<Rational, Rational> enclosure(unsigned bits) const;

  long double to_long_double() const;
  double to_double() const { return static_cast<double>(to_long_double()); }

  /// Exact form "c0 + c1*t + ..." with t = p^(1/m).
  std::string to_string() const;
  /// "p^(1/m)" describing t, or "1" for rational values.
  std::string generator() const;

 private:
  RadicalValue(int64_t p, std::vector<Rational> coeffs);
  void normalize();
  static void check_same_prime(const RadicalValue& a, const RadicalValue& b);

  int64_t p_;
  std::vector<Rational> coeffs_;
};

RadicalValue max(const RadicalValue& a, const RadicalValue& b);
RadicalValue min(const RadicalValue& a, const RadicalValue& b);

}  // namespace padiclab
