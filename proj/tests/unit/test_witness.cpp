#include "padiclab/witness.hpp"

#include "oracles.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <random>

using namespace padiclab;

namespace {

std::vector<std::pair<RadicalValue, Rational>> oracle_terms(const WitnessFunction& w) {
  std::vector<std::pair<RadicalValue, Rational>> out;
  for (const auto& t : w.terms) out.emplace_back(t.a, t.c);
  return out;
}

}  // namespace

TEST_CASE("construction satisfies the constraint") {
  for (int64_t p : {3, 5, 7}) {
    for (const Rational& r : {Rational(1), Rational(1, 2), Rational(2)}) {
      const auto w = witness_construct(p, r);
      REQUIRE(w.terms.size() == 2);
      CHECK(w.terms[0].c == 1);
      CHECK(w.terms[1].c == p);
      CHECK(w.terms[1].a == -RadicalValue::prime_power(p, r));
      CHECK(w.constraint().is_zero());
      CHECK(w.sum_a() == RadicalValue(p, 1) - RadicalValue::prime_power(p, r));
      CHECK(w.radius_exponent >= 0);
      CHECK(w.radius_exponent == support_radius_exponent(p, r, w.terms));
    }
  }
}

TEST_CASE("values match term-by-term evaluation and vanish outside the radius") {
  std::mt19937_64 rng(41);
  for (int64_t p : {3, 5}) {
    for (const Rational& r : {Rational(1), Rational(1, 2)}) {
      const auto w = witness_construct(p, r);
      const auto terms = oracle_terms(w);
      for (int i = 0; i < 80; ++i) {
        const int64_t k = static_cast<int64_t>(rng() % 7) - 2;
        Rational s = Rational(static_cast<long>(rng() % 200) + 1) * ref::qpow(p, -k);
        s.canonicalize();
        const auto got = w.evaluate(s);
        CHECK(got == oracle::witness_value(p, r, terms, s));
        if (-oracle::val(s, p) > w.radius_exponent) CHECK(got.is_zero());
      }
      // just outside the radius for every unit class
      for (int64_t u = 1; u < p; ++u) {
        Rational s = Rational(u) * ref::qpow(p, -(w.radius_exponent + 1));
        s.canonicalize();
        CHECK(oracle::witness_value(p, r, terms, s).is_zero());
      }
    }
  }
}

TEST_CASE("verification report") {
  const auto w = witness_construct(3, 1);
  std::vector<Rational> samples;
  for (int64_t k = -4; k <= 3; ++k) {
    Rational s = ref::qpow(3, k) * 2;
    s.canonicalize();
    samples.push_back(s);
  }
  const auto rep = witness_verify(w, samples);
  CHECK(rep.ok());
  CHECK(rep.constraint_holds);
  CHECK(rep.zero_value_ok);
  CHECK(rep.value_at_zero == RadicalValue(3, -2));
  CHECK(rep.outside_failures == 0);
  CHECK(rep.outside_checked > 0);
  CHECK(rep.samples.size() == samples.size());

  WitnessFunction bad = w;
  bad.terms[1].a = RadicalValue(3, -1);
  CHECK_FALSE(witness_verify(bad, samples).ok());
}

TEST_CASE("step function and transform") {
  for (int64_t p : {3, 5}) {
    for (const Rational& r : {Rational(1), Rational(1, 2)}) {
      CAPTURE(p);
      const auto w = witness_construct(p, r);
      const auto f = witness_step_function(w, 3);
      for (const auto& c : f.cosets()) {
        if (c.level != 3) continue;
        // centers away from the zeros of 1 + c_k s carry the exact value
        const Rational s = c.center;
        bool near_zero = false;
        for (const auto& t : w.terms) {
          const Rational z = 1 + t.c * s;
          if (z == 0 || oracle::val(z, p) >= 3 + oracle::val(t.c, p)) near_zero = true;
        }
        if (!near_zero) CHECK(c.value == PhaseSum::real(w.evaluate(s)));
      }
      const auto rep = fourier_nonvanish(w, 2, 2);
      REQUIRE(rep.tau0);
      CHECK(*rep.tau0 != 0);
      CHECK(rep.magnitude >= 1e-6L);
      const auto want = oracle::witness_transform(p, r, oracle_terms(w), w.radius_exponent, 4, *rep.tau0);
      CHECK(std::abs(rep.value.value() - want) <= 1e-9L);
      const auto at0 = oracle::witness_transform(p, r, oracle_terms(w), w.radius_exponent, 4, 0);
      CHECK(std::abs(rep.at_zero.value() - at0) <= 1e-9L);
      for (const auto& d : rep.dilations) CHECK(d.error <= 1e-9L);
    }
  }
  CHECK_THROWS_AS(fourier_nonvanish(witness_construct(3, 1), 3, 2), DomainError);
}
