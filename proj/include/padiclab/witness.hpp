#pragma once

// Compactly supported witness f_0(s) = sum_k a_k |1 + c_k s|_p^r with
// sum_k a_k |c_k|_p^r = 0, and its Fourier transform.

#include "padiclab/fourier.hpp"

#include <optional>
#include <string>
#include <vector>

namespace padiclab {

struct WitnessTerm {
  RadicalValue a;
  Rational c;
};

struct WitnessFunction {
  int64_t p = 3;
  Rational r = 1;
  std::vector<WitnessTerm> terms;
  /// f_0 vanishes for |s|_p > p^radius_exponent.
  int64_t radius_exponent = 0;

  RadicalValue evaluate(const Rational& s) const;
  /// sum_k a_k |c_k|^r.
  RadicalValue constraint() const;
  RadicalValue sum_a() const;
};

/// Support exponent of sum_k a_k |1 + c_k s|^r: the radius
/// max{1, |c_k|, rho * max_k |c_k|^-1} with rho = sup_j |C(r, j)|^{1/j} <= 1.
int64_t support_radius_exponent(int64_t p, const Rational& r, const std::vector<WitnessTerm>& terms);

/// Two-term witness c = (1, p), a = (1, -p^r).
WitnessFunction witness_construct(int64_t p, const Rational& r);

struct WitnessSample {
  Rational s;
  RadicalValue value;
  bool outside = false;
};

struct WitnessReport {
  bool constraint_holds = false;
  bool zero_value_ok = false;  // f_0(0) == sum a_k != 0
  RadicalValue value_at_zero;
  size_t outside_checked = 0;
  size_t outside_failures = 0;
  size_t constancy_checked = 0;
  size_t constancy_failures = 0;
  std::vector<WitnessSample> samples;
  bool ok() const;
};

WitnessReport witness_verify(const WitnessFunction& w, const std::vector<Rational>& samples);

/// f_0 on |s| <= p^radius as a step function at level depth. The cosets holding
/// a zero of some 1 + c_k s carry the exact average there, which leaves the
/// transform unchanged for |tau| <= p^depth.
StepFunction witness_step_function(const WitnessFunction& w, int64_t depth);

struct DilationCheck {
  Rational tau;
  PhaseSum dilated;  // transform of f_0(tau/tau_0 s)|tau/tau_0| at tau
  bool exact = false;
  long double error = 0;
};

struct NonvanishReport {
  std::optional<Rational> tau0;
  PhaseSum value;
  long double magnitude = 0;
  long double error_bound = 0;
  /// Transform at 0, i.e. the integral of f_0.
  PhaseSum at_zero;
  uint64_t scanned = 0;
  std::vector<DilationCheck> dilations;
};

/// Scans tau != 0 over representatives of |tau| <= p^window and returns the
/// first with certified |f_0^(tau)| >= threshold. Requires depth >= window.
NonvanishReport fourier_nonvanish(const WitnessFunction& w, int64_t window, int64_t depth,
                                  long double threshold = 1e-6L);

}  // namespace padiclab
