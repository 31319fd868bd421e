#include "padiclab/padic.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace padiclab {

namespace {

Integer inverse_mod(const Integer& a, const Integer& mod) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw DomainError("inverse_mod: not invertible");
  }
  return inv;
}

Integer mod_pos(const Integer& a, const Integer& mod) {
  Integer r = a % mod;
  if (r < 0) r += mod;
  return r;
}

void check_exponent(int64_t p, const Rational& r) {
  if (mpz_divisible_ui_p(r.get_den_mpz_t(), static_cast<unsigned long>(p))) {
    throw DomainError("unsupported exponent " + r.get_str() + ": denominator divisible by p");
  }
}

}  // namespace

PAdicContext::PAdicContext(int64_t p, int64_t precision) : p_(p), precision_(precision) {
  if (p < 3 || !is_prime(p)) throw DomainError("p must be an odd prime, got " + std::to_string(p));
  if (precision < 1) throw DomainError("precision must be positive");
}

PAdicNumber PAdicNumber::zero(const PAdicContext& ctx) { return PAdicNumber(ctx); }

PAdicNumber PAdicNumber::from_rational(const PAdicContext& ctx, const Rational& x) {
  PAdicNumber r(ctx);
  if (x == 0) return r;
  const int64_t p = ctx.prime();
  const Integer num = x.get_num();
  const Integer den = x.get_den();
  r.zero_ = false;
  r.v_ = padiclab::valuation(num, p) - padiclab::valuation(den, p);
  r.rel_prec_ = ctx.precision();
  const Integer mod = ipow(p, static_cast<uint64_t>(r.rel_prec_));
  r.unit_ = mod_pos(strip(num, p) * inverse_mod(strip(den, p), mod), mod);
  return r;
}

PAdicNumber PAdicNumber::from_parts(const PAdicContext& ctx, int64_t v, const Integer& unit,
                                    int64_t relative_precision) {
  if (relative_precision < 1) throw PrecisionExhausted("from_parts: no known digits");
  if (unit % ctx.prime() == 0) throw DomainError("from_parts: unit divisible by p");
  PAdicNumber r(ctx);
  r.zero_ = false;
  r.v_ = v;
  r.rel_prec_ = std::min(relative_precision, ctx.precision());
  r.unit_ = mod_pos(unit, ipow(ctx.prime(), static_cast<uint64_t>(r.rel_prec_)));
  return r;
}

int64_t PAdicNumber::valuation() const {
  if (zero_) throw DomainError("valuation of the zero p-adic number");
  return v_;
}

int64_t PAdicNumber::absolute_precision() const {
  if (zero_) return std::numeric_limits<int64_t>::max();
  return v_ + rel_prec_;
}

PAdicNumber PAdicNumber::operator-() const {
  if (zero_) return *this;
  PAdicNumber r = *this;
  r.unit_ = ipow(ctx_.prime(), static_cast<uint64_t>(rel_prec_)) - unit_;
  return r;
}

PAdicNumber operator+(const PAdicNumber& a, const PAdicNumber& b) {
  if (!(a.ctx_ == b.ctx_)) throw DomainError("p-adic numbers from different contexts");
  if (a.zero_) return b;
  if (b.zero_) return a;
  const int64_t p = a.ctx_.prime();
  const int64_t abs_prec = std::min(a.absolute_precision(), b.absolute_precision());
  const int64_t vmin = std::min(a.v_, b.v_);
  const Integer mod = ipow(p, static_cast<uint64_t>(abs_prec - vmin));
  const Integer s = mod_pos(a.unit_ * ipow(p, static_cast<uint64_t>(a.v_ - vmin)) +
                                b.unit_ * ipow(p, static_cast<uint64_t>(b.v_ - vmin)),
                            mod);
  if (s == 0) {
    throw PrecisionExhausted("addition cancelled all " + std::to_string(abs_prec - vmin) +
                             " known digits");
  }
  const int64_t k = padiclab::valuation(s, p);
  return PAdicNumber::from_parts(a.ctx_, vmin + k, strip(s, p), abs_prec - vmin - k);
}

PAdicNumber operator*(const PAdicNumber& a, const PAdicNumber& b) {
  if (!(a.ctx_ == b.ctx_)) throw DomainError("p-adic numbers from different contexts");
  if (a.zero_) return a;
  if (b.zero_) return b;
  const int64_t prec = std::min(a.rel_prec_, b.rel_prec_);
  return PAdicNumber::from_parts(a.ctx_, a.v_ + b.v_, a.unit_ * b.unit_, prec);
}

PAdicNumber operator/(const PAdicNumber& a, const PAdicNumber& b) {
  if (b.zero_) throw DomainError("division by the zero p-adic number");
  if (a.zero_) return a;
  const int64_t prec = std::min(a.rel_prec_, b.rel_prec_);
  const Integer mod = ipow(a.ctx_.prime(), static_cast<uint64_t>(prec));
  return PAdicNumber::from_parts(a.ctx_, a.v_ - b.v_, a.unit_ * inverse_mod(b.unit_, mod), prec);
}

PAdicNumber PAdicNumber::pow(uint64_t e) const {
  PAdicNumber r = from_rational(ctx_, 1);
  for (uint64_t i = 0; i < e; ++i) r = r * *this;
  return r;
}

Integer PAdicNumber::residue(int64_t k) const {
  if (k <= 0) return 0;
  if (zero_) return 0;
  if (v_ < 0) throw DomainError("residue of a non-integral p-adic number");
  if (k > absolute_precision()) throw PrecisionExhausted("residue beyond known digits");
  if (v_ >= k) return 0;
  const int64_t p = ctx_.prime();
  return mod_pos(unit_ * ipow(p, static_cast<uint64_t>(v_)), ipow(p, static_cast<uint64_t>(k)));
}

bool congruent(const PAdicNumber& a, const PAdicNumber& b, int64_t k) {
  if (k > a.absolute_precision() || k > b.absolute_precision()) {
    throw PrecisionExhausted("congruence beyond known digits");
  }
  if (a.zero_) return b.zero_ || b.v_ >= k;
  if (b.zero_) return a.v_ >= k;
  const int64_t vmin = std::min(a.v_, b.v_);
  if (k <= vmin) return true;
  const int64_t p = a.ctx_.prime();
  const Integer mod = ipow(p, static_cast<uint64_t>(k - vmin));
  const Integer d = a.unit_ * ipow(p, static_cast<uint64_t>(a.v_ - vmin)) -
                    b.unit_ * ipow(p, static_cast<uint64_t>(b.v_ - vmin));
  return mod_pos(d, mod) == 0;
}

std::string PAdicNumber::to_string() const {
  if (zero_) return "0";
  std::ostringstream out;
  out << ctx_.prime() << "^" << v_ << " * " << unit_.get_str() << " + O(" << ctx_.prime() << "^"
      << absolute_precision() << ")";
  return out.str();
}

RadicalValue padic_abs(const PAdicNumber& x, const Rational& r) {
  const int64_t p = x.context().prime();
  if (r <= 0) throw DomainError("padic_abs: exponent must be positive");
  check_exponent(p, r);
  if (x.is_zero()) return RadicalValue(p);
  return RadicalValue::prime_power(p, Rational(-x.valuation()) * r);
}

bool is_square(const PAdicNumber& x) {
  if (x.is_zero()) return false;
  if (x.valuation() % 2 != 0) return false;
  return legendre(x.unit(), x.context().prime()) == 1;
}

std::optional<PAdicNumber> hensel_sqrt(const PAdicNumber& x) {
  if (x.is_zero()) throw DomainError("hensel_sqrt: argument must be nonzero");
  if (!is_square(x)) return std::nullopt;
  const int64_t p = x.context().prime();
  const Integer u0 = x.unit() % p;
  Integer y = 0;
  for (int64_t c = 1; c < p; ++c) {
    if ((Integer(c) * c - u0) % p == 0) {
      y = c;
      break;
    }
  }
  const int64_t target = x.relative_precision();
  int64_t known = 1;
  while (known < target) {
    known = std::min(2 * known, target);
    const Integer mod = ipow(p, static_cast<uint64_t>(known));
    const Integer f = y * y - x.unit();
    y = mod_pos(y - f * inverse_mod(mod_pos(2 * y, mod), mod), mod);
  }
  return PAdicNumber::from_parts(x.context(), x.valuation() / 2, y, target);
}

BinomialSeries binomial_series(const Rational& r, const PAdicNumber& sigma, int64_t terms) {
  const PAdicContext& ctx = sigma.context();
  check_exponent(ctx.prime(), r);
  if (terms < 1) throw DomainError("binomial_series: need at least one term");
  if (!sigma.is_zero() && sigma.valuation() < 1) {
    throw DomainError("binomial_series: |sigma|_p must be < 1");
  }
  PAdicNumber sum = PAdicNumber::from_rational(ctx, 1);
  if (sigma.is_zero()) return {sum, std::numeric_limits<int64_t>::max()};
  PAdicNumber power = sigma;
  for (int64_t j = 1; j < terms; ++j) {
    const Rational c = binomial(r, static_cast<uint64_t>(j));
    if (c != 0) sum = sum + PAdicNumber::from_rational(ctx, c) * power;
    power = power * sigma;
  }
  return {sum, terms * sigma.valuation()};
}

}  // namespace padiclab
