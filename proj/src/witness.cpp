#include "padiclab/witness.hpp"

#include <algorithm>
#include <limits>

namespace padiclab {

namespace {

RadicalValue abs_power(const Rational& x, int64_t p, const Rational& r) {
  if (x == 0) return RadicalValue(p);
  return RadicalValue::prime_power(p, Rational(-*valuation(x, p)) * r);
}

void check_params(int64_t p, const Rational& r) {
  if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime");
  if (r <= 0) throw DomainError("r must be positive");
  if (mpz_divisible_ui_p(r.get_den_mpz_t(), static_cast<unsigned long>(p))) {
    throw DomainError("denominator of r must be prime to p");
  }
}

}  // namespace

RadicalValue WitnessFunction::evaluate(const Rational& s) const {
  RadicalValue acc(p);
  for (const auto& t : terms) acc += t.a * abs_power(1 + t.c * s, p, r);
  return acc;
}

RadicalValue WitnessFunction::constraint() const {
  RadicalValue acc(p);
  for (const auto& t : terms) acc += t.a * abs_power(t.c, p, r);
  return acc;
}

RadicalValue WitnessFunction::sum_a() const {
  RadicalValue acc(p);
  for (const auto& t : terms) acc += t.a;
  return acc;
}

int64_t support_radius_exponent(int64_t p, const Rational& r, const std::vector<WitnessTerm>& terms) {
  check_params(p, r);
  if (terms.empty()) throw DomainError("witness needs at least one term");
  // C(r, j) is p-integral when p does not divide the denominator of r, so rho <= 1.
  for (uint64_t j = 1; j <= 64; ++j) {
    const auto v = valuation(binomial(r, j), p);
    if (v && *v < 0) throw DomainError("binomial coefficient is not p-integral");
  }
  int64_t e = 0;
  int64_t inv = std::numeric_limits<int64_t>::min();
  for (const auto& t : terms) {
    if (t.c == 0) throw DomainError("witness coefficients c_k must be nonzero");
    const int64_t v = *valuation(t.c, p);
    e = std::max(e, -v);
    inv = std::max(inv, v);
  }
  return std::max(e, inv);
}

WitnessFunction witness_construct(int64_t p, const Rational& r) {
  check_params(p, r);
  WitnessFunction w;
  w.p = p;
  w.r = r;
  w.terms.push_back({RadicalValue(p, 1), Rational(1)});
  w.terms.push_back({-RadicalValue::prime_power(p, r), Rational(p)});
  w.radius_exponent = support_radius_exponent(p, r, w.terms);
  return w;
}

bool WitnessReport::ok() const {
  return constraint_holds && zero_value_ok && outside_failures == 0 && constancy_failures == 0;
}

WitnessReport witness_verify(const WitnessFunction& w, const std::vector<Rational>& samples) {
  const int64_t p = w.p;
  WitnessReport out;
  out.constraint_holds = w.constraint().is_zero();
  out.value_at_zero = w.evaluate(0);
  out.zero_value_ok = out.value_at_zero == w.sum_a() && !out.value_at_zero.is_zero();
  for (const auto& s : samples) {
    WitnessSample ws{s, w.evaluate(s), false};
    const auto vs = valuation(s, p);
    ws.outside = vs && *vs < -w.radius_exponent;
    if (ws.outside) {
      ++out.outside_checked;
      if (!ws.value.is_zero()) ++out.outside_failures;
    } else {
      // Every |1 + c_k s'| is constant on s + p^t Z_p once v(1 + c_k s) < t + v(c_k).
      bool resolved = true;
      int64_t t = 0;
      for (const auto& term : w.terms) {
        const auto v = valuation(1 + term.c * s, p);
        if (!v) {
          resolved = false;
          break;
        }
        t = std::max(t, *v - *valuation(term.c, p) + 1);
      }
      if (resolved) {
        ++out.constancy_checked;
        for (int64_t j = 1; j <= 3; ++j) {
          if (w.evaluate(s + Rational(j) * rpow(p, t)) != ws.value) {
            ++out.constancy_failures;
            break;
          }
        }
      }
    }
    out.samples.push_back(std::move(ws));
  }
  return out;
}

StepFunction witness_step_function(const WitnessFunction& w, int64_t depth) {
  const int64_t p = w.p;
  const int64_t big_r = w.radius_exponent;
  if (depth < -big_r) throw DomainError("depth below the support radius");
  if (depth + big_r > 12) throw DomainError("witness grid too large");
  const int64_t count = ipow(p, static_cast<uint64_t>(depth + big_r)).get_si();
  const Rational unit = rpow(p, -big_r);
  // Average of |y|^r over p^e Z_p is p^{-e r} (1 - 1/p) / (1 - p^{-1-r}).
  const RadicalValue shape = RadicalValue(p, 1 - Rational(1, p)) /
                             (RadicalValue(p, 1) - RadicalValue::prime_power(p, -1 - w.r));
  StepFunction f(p);
  for (int64_t j = 0; j < count; ++j) {
    const Rational s = Rational(j) * unit;
    RadicalValue v(p);
    for (const auto& t : w.terms) {
      const Rational zero = -1 / t.c;
      if (coset_contains(s, depth, zero, p)) {
        const int64_t e = depth + *valuation(t.c, p);
        v += t.a * RadicalValue::prime_power(p, Rational(-e) * w.r) * shape;
      } else {
        v += t.a * abs_power(1 + t.c * s, p, w.r);
      }
    }
    if (!v.is_zero()) f.add_disjoint(s, depth, PhaseSum::real(v));
  }
  return f;
}

NonvanishReport fourier_nonvanish(const WitnessFunction& w, int64_t window, int64_t depth,
                                  long double threshold) {
  if (depth < window) throw DomainError("depth must be at least the window");
  if (window < 0) throw DomainError("window must be non-negative");
  const int64_t p = w.p;
  const StepFunction f = witness_step_function(w, depth);
  NonvanishReport out{std::nullopt, PhaseSum(p), 0, 0, fourier_step(f, 0), 0, {}};
  // The transform only depends on tau modulo p^radius.
  const int64_t count = ipow(p, static_cast<uint64_t>(window + w.radius_exponent)).get_si();
  const Rational unit = rpow(p, -window);
  for (int64_t j = 1; j < count; ++j) {
    const Rational tau = Rational(j) * unit;
    ++out.scanned;
    PhaseSum v = fourier_step(f, tau);
    const long double mag = std::abs(v.value());
    const long double err = v.error_bound();
    if (mag - err >= threshold) {
      out.tau0 = tau;
      out.value = std::move(v);
      out.magnitude = mag;
      out.error_bound = err;
      break;
    }
  }
  if (!out.tau0) return out;
  const Rational tau0 = *out.tau0;
  for (const Rational& tau : std::vector<Rational>{tau0 * p, tau0 / p, tau0 * 2}) {
    const StepFunction g = dilate(f, tau / tau0);
    DilationCheck d{tau, fourier_step(g, tau), false, 0};
    d.exact = d.dilated == out.value;
    d.error = std::abs(d.dilated.value() - out.value.value());
    out.dilations.push_back(std::move(d));
  }
  return out;
}

}  // namespace padiclab
