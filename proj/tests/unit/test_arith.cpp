#include "padiclab/padic.hpp"

#include "support/reference.hpp"

#include <doctest.h>

#include <random>

using namespace padiclab;

TEST_CASE("valuations and residues") {
  CHECK(valuation(Integer(18), 3) == 2);
  CHECK(*valuation(Rational(5, 27), 3) == -3);
  CHECK_FALSE(valuation(Rational(0), 5).has_value());
  CHECK(strip(Integer(-250), 5) == -2);
  CHECK(residue(Rational(1, 2), 3, 2) == 5);
  CHECK_THROWS_AS(residue(Rational(1, 3), 3, 1), DomainError);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const int64_t p = std::vector<int64_t>{3, 5, 7, 11}[rng() % 4];
    const Rational x(static_cast<long>(rng() % 2000) - 1000, static_cast<unsigned long>(rng() % 500 + 1));
    Rational y = x;
    y.canonicalize();
    if (y == 0) continue;
    CHECK(*valuation(y, p) == ref::val(y, p));
    if (ref::val(Integer(y.get_den()), p) == 0) {
      const Integer r = residue(y, p, 3);
      const Integer m = ref::pw(p, 3);
      CHECK((r * y.get_den() - y.get_num()) % m == 0);
      CHECK(r >= 0);
      CHECK(r < m);
    }
  }
}

TEST_CASE("primes, Legendre symbols, binomials") {
  for (int64_t n = -3; n < 400; ++n) CHECK(is_prime(n) == ref::is_prime(n));
  for (int64_t p : {3, 5, 7, 11, 13}) {
    for (int64_t a = -20; a < 40; ++a) CHECK(legendre(Integer(a), p) == ref::legendre(a, p));
  }
  CHECK(binomial(Rational(1, 2), 0) == 1);
  CHECK(binomial(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(binomial(Rational(5), 2) == 10);
  CHECK(binomial(Rational(3), 5) == 0);
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("x"), DomainError);
}

TEST_CASE("radical values are exact in Q(p^(1/m))") {
  const RadicalValue t = RadicalValue::prime_power(3, Rational(1, 2));
  CHECK(t * t == RadicalValue(3, Rational(3)));
  CHECK(t.branch() == 2);
  CHECK((t * t).branch() == 1);
  CHECK(t.generator() == "3^(1/2)");
  const RadicalValue c = RadicalValue::prime_power(5, Rational(1, 3));
  CHECK(c * c * c == RadicalValue(5, Rational(5)));
  CHECK(RadicalValue::prime_power(5, Rational(-2, 3)) * c * c == RadicalValue(5, Rational(1)));

  const RadicalValue one(3, Rational(1));
  const RadicalValue a = one - t / RadicalValue(3, Rational(2));  // 1 - sqrt(3)/2 > 0
  CHECK(a.sign() == 1);
  CHECK((a * a.inverse()) == one);
  CHECK(a < one);
  CHECK(max(a, one) == one);
  const auto [lo, hi] = a.enclosure(60);
  CHECK(lo <= hi);
  CHECK(to_double(lo) == doctest::Approx(1 - std::sqrt(3.0) / 2).epsilon(1e-12));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const int64_t p = 3 + 2 * static_cast<int64_t>(rng() % 2);
    auto draw = [&] {
      const Rational e(static_cast<long>(rng() % 13) - 6, static_cast<unsigned long>(rng() % 4 + 1));
      Rational ee = e;
      ee.canonicalize();
      return RadicalValue::prime_power(p, ee) * RadicalValue(p, Rational(static_cast<long>(rng() % 9) - 4));
    };
    const RadicalValue x = draw(), y = draw(), z = draw();
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x - y) + y == x);
    const auto cmp = x <=> y;
    const long double dx = x.to_long_double(), dy = y.to_long_double();
    if (std::abs(dx - dy) > 1e-9L) CHECK((cmp == std::strong_ordering::less) == (dx < dy));
    if (!y.is_zero()) CHECK((x / y) * y == x);
  }
}

TEST_CASE("p-adic arithmetic tracks precision") {
  const PAdicContext ctx(5, 10);
  const auto a = PAdicNumber::from_rational(ctx, Rational(50, 3));
  CHECK(a.valuation() == 2);
  CHECK(a.relative_precision() == 10);
  const auto b = PAdicNumber::from_rational(ctx, Rational(1, 25));
  CHECK((a * b).valuation() == 0);
  CHECK(congruent(a * b, PAdicNumber::from_rational(ctx, Rational(2, 3)), 10));
  const auto c = PAdicNumber::from_rational(ctx, Rational(50, 3));
  CHECK(congruent(a, c, 12));
  CHECK_THROWS_AS(a - c, PrecisionExhausted);
  CHECK_THROWS(PAdicContext(4, 10));
  CHECK_THROWS(PAdicContext(2, 10));
  CHECK(padic_abs(PAdicNumber::from_rational(PAdicContext(3, 8), Rational(9)), Rational(1, 2)) ==
        RadicalValue(3, Rational(1, 3)));
}

TEST_CASE("Hensel square roots match brute force") {
  for (int64_t p : {3, 5, 7, 11}) {
    const PAdicContext ctx(p, 12);
    for (int64_t a = 1; a < 60; ++a) {
      const auto x = PAdicNumber::from_rational(ctx, Rational(a));
      const int64_t v = ref::val(mpz_class(a), p);
      const int64_t unit = a / ref::pw(p, v).get_si();
      const bool square = v % 2 == 0 && ref::legendre(unit, p) == 1;
      CHECK(is_square(x) == square);
      const auto root = hensel_sqrt(x);
      CHECK(root.has_value() == square);
      if (!root) continue;
      CHECK(congruent(*root * *root, x, 10));
      if (v == 0) {
        const auto roots = ref::sqrt_mod(a, p, 3);
        const int64_t got = root->residue(3).get_si();
        CHECK(std::find(roots.begin(), roots.end(), got) != roots.end());
        CHECK(got % p == std::min(roots[0] % p, p - roots[0] % p));
      }
    }
  }
}

TEST_CASE("binomial series squares back") {
  for (int64_t p : {3, 5, 7}) {
    const PAdicContext ctx(p, 20);
    const auto sigma = PAdicNumber::from_rational(ctx, Rational(p));
    const auto s = binomial_series(Rational(1, 2), sigma, 30);
    CHECK(s.tail_valuation >= 15);
    const auto lhs = s.value * s.value;
    const auto rhs = PAdicNumber::from_rational(ctx, Rational(1 + p));
    CHECK(congruent(lhs, rhs, std::min<int64_t>(s.tail_valuation, 15)));
  }
}
