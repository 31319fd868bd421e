#include "padiclab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace padiclab {

namespace {

Rational mod_one(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

long double abs_value(const RadicalValue& c) { return std::fabs(c.to_long_double()); }

}  // namespace

Rational fractional_part(const Rational& x, int64_t p) {
  if (x == 0) return 0;
  const Integer den = x.get_den();
  const int64_t k = valuation(den, p);
  if (k == 0) return 0;
  const Integer pk = ipow(p, static_cast<uint64_t>(k));
  const Integer rest = den / pk;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), pk.get_mpz_t());
  Integer n = (Integer(x.get_num()) * inv) % pk;
  if (n < 0) n += pk;
  Rational out(n, pk);
  out.canonicalize();
  return out;
}

PhaseSum PhaseSum::real(const RadicalValue& c) {
  PhaseSum s(c.prime());
  s.add(0, c);
  return s;
}

PhaseSum PhaseSum::complex(int64_t p, const Rational& re, const Rational& im) {
  PhaseSum s(p);
  s.add(0, RadicalValue(p, re));
  s.add(Rational(1, 4), RadicalValue(p, im));
  return s;
}

void PhaseSum::add(const Rational& phase, const RadicalValue& c) {
  if (c.prime() != p_) throw DomainError("phase sum coefficients must share p");
  if (c.is_zero()) return;
  const Rational th = mod_one(phase);
  auto [it, fresh] = terms_.try_emplace(th, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PhaseSum& PhaseSum::operator+=(const PhaseSum& o) {
  for (const auto& [th, c] : o.terms_) add(th, c);
  return *this;
}

PhaseSum PhaseSum::operator-() const {
  PhaseSum s(p_);
  for (const auto& [th, c] : terms_) s.terms_.emplace(th, -c);
  return s;
}

PhaseSum PhaseSum::scaled(const RadicalValue& c) const {
  PhaseSum s(p_);
  if (c.is_zero()) return s;
  for (const auto& [th, x] : terms_) s.terms_.emplace(th, x * c);
  return s;
}

PhaseSum PhaseSum::rotated(const Rational& theta) const {
  PhaseSum s(p_);
  for (const auto& [th, x] : terms_) s.add(th + theta, x);
  return s;
}

std::complex<long double> PhaseSum::value() const {
  std::complex<long double> acc = 0;
  for (const auto& [th, c] : terms_) {
    const long double angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(to_double(th));
    acc += std::polar(c.to_long_double(), angle);
  }
  return acc;
}

long double PhaseSum::error_bound() const {
  long double s = 0;
  for (const auto& [th, c] : terms_) s += abs_value(c);
  return 1e-13L * s + 1e-300L;
}

std::string PhaseSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [th, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")";
    if (th != 0) out << "*e(" << th.get_str() << ")";
  }
  return out.str();
}

Rational canonical_center(const Rational& center, int64_t level, int64_t p) {
  const auto v = valuation(center, p);
  if (!v || *v >= level) return 0;
  const int64_t j = std::max<int64_t>(0, -*v);
  const Integer r = residue(center * rpow(p, j), p, static_cast<uint64_t>(j + level));
  return Rational(r) * rpow(p, -j);
}

bool coset_contains(const Rational& center, int64_t level, const Rational& s, int64_t p) {
  const auto v = valuation(s - center, p);
  return !v || *v >= level;
}

void StepFunction::add(const Rational& center, int64_t level, const PhaseSum& value) {
  if (value.prime() != p_) throw DomainError("step value has the wrong prime");
  const Rational c = canonical_center(center, level, p_);
  for (const auto& o : cosets_) {
    if (coset_contains(o.center, std::min(o.level, level), c, p_)) {
      throw DomainError("step function cosets overlap");
    }
  }
  cosets_.push_back({c, level, value});
}

void StepFunction::add_disjoint(const Rational& center, int64_t level, const PhaseSum& value) {
  if (value.prime() != p_) throw DomainError("step value has the wrong prime");
  cosets_.push_back({canonical_center(center, level, p_), level, value});
}

PhaseSum StepFunction::evaluate(const Rational& s) const {
  for (const auto& c : cosets_) {
    if (coset_contains(c.center, c.level, s, p_)) return c.value;
  }
  return PhaseSum(p_);
}

int64_t StepFunction::max_level() const {
  if (cosets_.empty()) throw DomainError("empty step function");
  int64_t m = cosets_[0].level;
  for (const auto& c : cosets_) m = std::max(m, c.level);
  return m;
}

int64_t StepFunction::min_level() const {
  if (cosets_.empty()) throw DomainError("empty step function");
  int64_t m = cosets_[0].level;
  for (const auto& c : cosets_) m = std::min(m, c.level);
  return m;
}

PhaseSum fourier_step(const StepFunction& f, const Rational& tau, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
  const int64_t p = f.prime();
  const auto vt = valuation(tau, p);
  PhaseSum out(p);
  for (const auto& c : f.cosets()) {
    if (vt && *vt < -c.level) continue;
    const Rational phase = fractional_part(c.center * tau, p);
    out += c.value.scaled(RadicalValue::prime_power(p, Rational(-c.level))).rotated(sign * phase);
  }
  return out;
}

StepFunction fourier_as_step(const StepFunction& f, int sign, uint64_t max_cosets) {
  const int64_t p = f.prime();
  StepFunction out(p);
  if (f.cosets().empty()) return out;
  const int64_t kmax = f.max_level();
  int64_t level = -kmax;
  for (const auto& c : f.cosets()) {
    level = std::max(level, -c.level);
    if (c.center != 0) level = std::max(level, -*valuation(c.center, p));
  }
  const int64_t span = level + kmax;
  if (span > 60 || ipow(p, static_cast<uint64_t>(span)) > Integer(max_cosets)) {
    throw DomainError("transform grid too large");
  }
  const int64_t count = ipow(p, static_cast<uint64_t>(span)).get_si();
  const Rational step = rpow(p, -kmax);
  for (int64_t j = 0; j < count; ++j) {
    const Rational tau = Rational(j) * step;
    PhaseSum v = fourier_step(f, tau, sign);
    if (!v.is_zero()) out.add_disjoint(tau, level, v);
  }
  return out;
}

long double inversion_error(const StepFunction& f) {
  const StepFunction hat = fourier_as_step(f, -1);
  long double worst = 0;
  for (const auto& c : f.cosets()) {
    const auto back = fourier_step(hat, c.center, 1).value();
    worst = std::max(worst, std::abs(back - c.value.value()));
  }
  return worst;
}

StepFunction pullback_affine(const StepFunction& f, const Rational& a, const Rational& b) {
  if (a == 0) throw DomainError("affine map needs a != 0");
  const int64_t p = f.prime();
  const int64_t va = *valuation(a, p);
  StepFunction out(p);
  for (const auto& c : f.cosets()) out.add_disjoint((c.center - b) / a, c.level - va, c.value);
  return out;
}

StepFunction dilate(const StepFunction& f, const Rational& lambda) {
  if (lambda == 0) throw DomainError("dilation needs lambda != 0");
  const int64_t p = f.prime();
  const RadicalValue norm(p, rpow(p, -*valuation(lambda, p)));
  const StepFunction pulled = pullback_affine(f, lambda, 0);
  StepFunction out(p);
  for (const auto& c : pulled.cosets()) {
    out.add_disjoint(c.center, c.level, c.value.scaled(norm));
  }
  return out;
}

PhaseSum affine_transform_prediction(const StepFunction& f, const Rational& a, const Rational& b,
                                     const Rational& tau) {
  if (a == 0) throw DomainError("affine map needs a != 0");
  const int64_t p = f.prime();
  const RadicalValue inv_norm(p, rpow(p, *valuation(a, p)));
  return fourier_step(f, tau / a).rotated(fractional_part(b * tau / a, p)).scaled(inv_norm);
}

}  // namespace padiclab
