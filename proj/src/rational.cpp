#include "padiclab/rational.hpp"

#include <numeric>

namespace padiclab {

int64_t valuation(const Integer& n, int64_t p) {
  if (n == 0) throw DomainError("valuation of zero integer");
  Integer m = n;
  int64_t v = 0;
  const Integer pp = p;
  while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
    ++v;
  }
  return v;
}

std::optional<int64_t> valuation(const Rational& x, int64_t p) {
  if (x == 0) return std::nullopt;
  return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

Integer ipow(int64_t p, uint64_t e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
  return r;
}

Rational rpow(int64_t p, int64_t e) {
  if (e >= 0) return Rational(ipow(p, static_cast<uint64_t>(e)));
  return Rational(Integer(1), ipow(p, static_cast<uint64_t>(-e)));
}

Rational rpow(const Rational& base, uint64_t e) {
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Integer strip(const Integer& n, int64_t p) {
  Integer m = n;
  const Integer pp = p;
  while (m != 0 && mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
  }
  return m;
}

Integer residue(const Rational& x, int64_t p, uint64_t k) {
  const Integer mod = ipow(p, k);
  Rational y = x;
  y.canonicalize();
  Integer num = y.get_num();
  Integer den = y.get_den();
  if (k == 0) return 0;
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw DomainError("residue: rational is not p-integral");
  }
  Integer r = (num * inv) % mod;
  if (r < 0) r += mod;
  return r;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

int legendre(const Integer& a, int64_t p) {
  const Integer pp = p;
  return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) throw DomainError("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw DomainError("malformed rational literal '" + s + "'");
  if (r.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

double to_double(const Rational& x) { return x.get_d(); }

Rational binomial(const Rational& r, uint64_t j) {
  Rational c = 1;
  for (uint64_t i = 0; i < j; ++i) {
    c *= (r - Rational(static_cast<long>(i)));
    c /= Rational(static_cast<long>(i + 1));
  }
  return c;
}

int64_t lcm64(int64_t a, int64_t b) { return std::lcm(a, b); }

}  // namespace padiclab
