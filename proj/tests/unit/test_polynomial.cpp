#include "padiclab/polynomial.hpp"

#include "support/reference.hpp"

#include <doctest.h>

#include <random>

using namespace padiclab;

namespace {

SparsePolynomial P(const char* s, size_t n = 1) { return SparsePolynomial::parse(s, n); }

ref::Dense dense(const SparsePolynomial& f) {
  const auto c = f.univariate_coeffs();
  return ref::Dense(c.begin(), c.end());
}

SparsePolynomial random_univariate(std::mt19937_64& rng, int max_deg) {
  std::vector<Rational> c(static_cast<size_t>(rng() % static_cast<uint64_t>(max_deg + 1) + 1));
  for (auto& x : c) x = Rational(static_cast<long>(rng() % 11) - 5, static_cast<unsigned long>(rng() % 3 + 1));
  for (auto& x : c) x.canonicalize();
  return SparsePolynomial::univariate(c);
}

}  // namespace

TEST_CASE("parsing and printing") {
  const auto f = P("3*x0^2*x1 - x1 + 1/2", 2);
  CHECK(f.nvars() == 2);
  CHECK(f.degree() == 3);
  CHECK(f.degree_in(0) == 2);
  CHECK(SparsePolynomial::parse(f.to_string(), 2) == f);
  CHECK(P("x*y - z").nvars() == 3);
  CHECK(P("x^2 + 2*x + 1") == P("x0^2 + 2*x0 + 1"));
  CHECK_THROWS_AS(P("2x"), DomainError);
  CHECK(P("0").is_zero());
  CHECK(P("x^2 - x^2").is_zero());
  CHECK(P("x*y + y^2", 2).is_homogeneous());
  CHECK_FALSE(P("x + 1").is_homogeneous());
  CHECK_THROWS_AS(P("x^"), DomainError);
  CHECK_THROWS_AS(P("x0 + *"), DomainError);
  CHECK_THROWS_AS(P("q^2"), DomainError);
}

TEST_CASE("ring operations agree with dense arithmetic") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_univariate(rng, 5), g = random_univariate(rng, 5);
    const auto prod = dense(f * g);
    const auto want = ref::mul(dense(f), dense(g));
    const mpq_class x(static_cast<long>(rng() % 21) - 10, 7);
    CHECK(ref::eval(prod, x) == ref::eval(want, x));
    const std::vector<Rational> pt = {x};
    CHECK((f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt));
    CHECK((f - g).evaluate(pt) == f.evaluate(pt) - g.evaluate(pt));
    CHECK(f.pow(3).evaluate(pt) == f.evaluate(pt) * f.evaluate(pt) * f.evaluate(pt));
    // d/dx (fg) = f'g + fg'
    CHECK((f * g).derivative(0) == f.derivative(0) * g + f * g.derivative(0));
  }
}

TEST_CASE("composition, widening and reversal") {
  const auto f = P("x0^2 - x1", 2);
  const std::vector<SparsePolynomial> subs = {P("x0 + 1", 2), P("2*x1", 2)};
  CHECK(f.compose(subs) == P("x0^2 + 2*x0 + 1 - 2*x1", 2));
  CHECK(P("x0 + 1").widen(3).nvars() == 3);
  CHECK(reverse(P("x^5 - 1"), 6) == P("x - x^6"));
  CHECK(reverse(P("2*x^2 + 3"), 2) == P("3*x^2 + 2"));
  CHECK(*P("9*x + 27").content_valuation(3) == 2);
  CHECK(*P("1/3*x + 1").content_valuation(3) == -1);
  CHECK_FALSE(P("0").content_valuation(3).has_value());
}

TEST_CASE("gcd, resultant and discriminant") {
  CHECK(univariate_gcd(P("x^2 - 1"), P("x^2 + 2*x + 1")) == P("x + 1"));
  CHECK(univariate_gcd(P("x^2 + 1"), P("x - 3")) == P("1"));
  CHECK(resultant(P("x - 5"), P("x^2 - 3*x + 2")) == (5 - 1) * (5 - 2));
  CHECK(resultant(P("x^2 + 1"), P("x^2 - 1")) == 4);
  for (long a = -3; a <= 3; ++a) {
    for (long b = -3; b <= 3; ++b) {
      if (a == 0) continue;
      for (long c = -3; c <= 3; ++c) {
        const SparsePolynomial q = SparsePolynomial::univariate(std::vector<Rational>{c, b, a});
        CHECK(discriminant(q) == Rational(b * b - 4 * a * c));
        const SparsePolynomial cubic = SparsePolynomial::univariate(std::vector<Rational>{c, b, 0, 1});
        CHECK(discriminant(cubic) == Rational(-4 * b * b * b - 27 * c * c));
      }
    }
  }
  CHECK(discriminant(P("x^5 - 1")) == 3125);
  CHECK(discriminant(P("x^5 - x + 1")) == 2869);
  CHECK(discriminant(P("x^2 - 2*x + 1")) == 0);
}
