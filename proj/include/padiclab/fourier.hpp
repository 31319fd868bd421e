#pragma once

// Fourier transforms of step functions on Q_p.
//
// The character is e(x) = exp(2 pi i {x}_p) with {x}_p the p-adic fractional
// part, and f^(tau) = integral f(s) e(-s tau) ds for Haar measure with
// mass(Z_p) = 1. Transform values are exact sums of radical coefficients times
// rational phases.

#include "padiclab/radical.hpp"

#include <complex>
#include <map>
#include <vector>

namespace padiclab {

/// {x}_p in [0, 1): the element of Z[1/p] with x - {x}_p in Z_p.
Rational fractional_part(const Rational& x, int64_t p);

/// sum_j c_j exp(2 pi i theta_j), theta_j in [0, 1), coefficients in Q(p^(1/m)).
class PhaseSum {
 public:
  explicit PhaseSum(int64_t p) : p_(p) {}
  static PhaseSum real(const RadicalValue& c);
  /// re + i im.
  static PhaseSum complex(int64_t p, const Rational& re, const Rational& im);

  int64_t prime() const { return p_; }
  const std::map<Rational, RadicalValue>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Rational& phase, const RadicalValue& c);
  PhaseSum& operator+=(const PhaseSum& o);
  friend PhaseSum operator+(PhaseSum a, const PhaseSum& b) { return a += b; }
  PhaseSum operator-() const;
  friend PhaseSum operator-(const PhaseSum& a, const PhaseSum& b) { return a + (-b); }
  /// Multiplies every coefficient by c.
  PhaseSum scaled(const RadicalValue& c) const;
  /// Multiplies by exp(2 pi i theta).
  PhaseSum rotated(const Rational& theta) const;
  friend bool operator==(const PhaseSum&, const PhaseSum&) = default;

  std::complex<long double> value() const;
  /// Bound for the floating-point error of value().
  long double error_bound() const;
  std::string to_string() const;

 private:
  int64_t p_;
  std::map<Rational, RadicalValue> terms_;
};

/// The coset center + p^level Z_p (level may be negative).
struct StepCoset {
  Rational center;
  int64_t level = 0;
  PhaseSum value;
};

/// Representative of center mod p^level in Z[1/p] with 0 <= rep < p^level.
Rational canonical_center(const Rational& center, int64_t level, int64_t p);
bool coset_contains(const Rational& center, int64_t level, const Rational& s, int64_t p);

class StepFunction {
 public:
  explicit StepFunction(int64_t p) : p_(p) {}
  /// Rejects cosets overlapping an existing one; centers are canonicalized.
  void add(const Rational& center, int64_t level, const PhaseSum& value);
  /// As add, for callers that generate disjoint cosets by construction.
  void add_disjoint(const Rational& center, int64_t level, const PhaseSum& value);

  int64_t prime() const { return p_; }
  const std::vector<StepCoset>& cosets() const { return cosets_; }
  PhaseSum evaluate(const Rational& s) const;
  int64_t max_level() const;
  int64_t min_level() const;

 private:
  int64_t p_;
  std::vector<StepCoset> cosets_;
};

/// sum over cosets of value * p^-level * e(sign * center * tau) [|tau| <= p^level].
/// sign = -1 is the transform, +1 its inverse.
PhaseSum fourier_step(const StepFunction& f, const Rational& tau, int sign = -1);

/// The transform as a step function in tau (supported on |tau| <= p^max_level).
StepFunction fourier_as_step(const StepFunction& f, int sign = -1, uint64_t max_cosets = 1u << 20);

/// Largest |g(c) - f(c)| over coset centers c of f, where g is the inverse
/// transform of the transform of f.
long double inversion_error(const StepFunction& f);

/// s -> f(a s + b) for a != 0.
StepFunction pullback_affine(const StepFunction& f, const Rational& a, const Rational& b);
/// s -> f(lambda s) |lambda|_p.
StepFunction dilate(const StepFunction& f, const Rational& lambda);
/// Predicted transform of f(a s + b) at tau: |a|^-1 e(b tau / a) f^(tau / a).
PhaseSum affine_transform_prediction(const StepFunction& f, const Rational& a, const Rational& b,
                                     const Rational& tau);

}  // namespace padiclab
