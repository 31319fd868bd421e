#include "padiclab/curve.hpp"

#include "support/reference.hpp"

#include <doctest.h>

using namespace padiclab;

namespace {

SparsePolynomial P(const char* s) { return SparsePolynomial::parse(s, 1); }

HyperellipticCurve curve(int64_t p, const char* h) { return HyperellipticCurve(PAdicContext(p, 20), P(h)); }

/// Good reduction, genus 2, form dx/y: the finite chart over Z_p counts
/// residue points with mass 1/p each, and the rest is the disc around infinity.
Rational good_reduction_norm(const std::vector<int64_t>& h, int64_t p) {
  const Rational n_aff(ref::hyperelliptic_affine_count(h, p), p);
  const mpq_class p3 = ref::qpow(p, -3);
  Rational out = n_aff + Rational(p - 1, p) * p3 / (1 - p3);
  out.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("curve invariants") {
  const auto c = curve(7, "x^5 - 1");
  CHECK(c.genus() == 2);
  CHECK(c.discriminant() == 3125);
  CHECK(c.disc_valuation() == 0);
  CHECK(curve(5, "x^5 - 1").disc_valuation() == 5);
  CHECK(curve(3, "x^3 + x + 1").genus() == 1);
  CHECK_THROWS_AS(curve(7, "x^4 - 1"), DomainError);
  CHECK_THROWS_AS(curve(7, "x^5 - 2*x^4 + x^3"), DomainError);
}

TEST_CASE("pseudonorm of dx/y on good-reduction curves") {
  struct Case {
    int64_t p;
    const char* h;
    std::vector<int64_t> coeffs;
  };
  for (const auto& c : std::vector<Case>{{7, "x^5 - 1", {-1, 0, 0, 0, 0, 1}},
                                         {7, "x^5 - x + 1", {1, -1, 0, 0, 0, 1}},
                                         {11, "x^5 - 1", {-1, 0, 0, 0, 0, 1}},
                                         {13, "x^5 + 2*x + 3", {3, 2, 0, 0, 0, 1}}}) {
    CAPTURE(c.h);
    CAPTURE(c.p);
    const auto X = curve(c.p, c.h);
    const Rational want = good_reduction_norm(c.coeffs, c.p);
    const auto res = pseudonorm(X, PluricanonicalForm{}, 6);
    REQUIRE(res.bounded());
    CHECK(res.exact());
    CHECK(res.lower == RadicalValue(c.p, want));
  }
  CHECK(good_reduction_norm({-1, 0, 0, 0, 0, 1}, 7) == Rational(400, 399));
  CHECK(good_reduction_norm({1, -1, 0, 0, 0, 1}, 7) == Rational(49, 57));
}

TEST_CASE("pseudonorm scales by |c|^(1/m)") {
  const auto X = curve(7, "x^5 - 1");
  for (int64_t m : {1, 2}) {
    const PluricanonicalForm base{m, P("1")};
    const auto b = pseudonorm(X, base, 5);
    for (const char* c : {"7", "1/7", "2", "49"}) {
      CAPTURE(c);
      PluricanonicalForm scaled{m, P(c)};
      const auto s = pseudonorm(X, scaled, 5);
      const auto factor = padic_abs(PAdicNumber::from_rational(X.context(), parse_rational(c)), Rational(1, m));
      CHECK(s.lower == factor * b.lower);
      REQUIRE(s.bounded());
      CHECK(*s.upper == factor * *b.upper);
    }
  }
}

TEST_CASE("regularity of forms") {
  const auto X = curve(7, "x^5 - 1");
  CHECK(validate_form(X, {1, P("1")}).regular);
  CHECK(validate_form(X, {1, P("x")}).regular);
  CHECK_FALSE(validate_form(X, {1, P("x^2")}).regular);
  CHECK(validate_form(X, {2, P("x^2")}).regular);
  CHECK_FALSE(validate_form(X, {2, P("x^3")}).regular);
  CHECK(validate_form(X, {1, P("0")}).reason == "zero form");
  CHECK_FALSE(validate_form(X, {1, P("x^2")}).reason.empty());
  CHECK_THROWS_AS(pseudonorm(X, {1, P("x^2")}, 3), DomainError);
}

TEST_CASE("charts and branch counts") {
  const auto X = curve(7, "x^5 - 1");
  const auto charts = build_charts(X, {}, 0);
  REQUIRE(charts.size() == 2);
  Rational mass = 0;
  for (const auto& ch : charts) {
    for (const auto& c : ch.domain) mass += c.mass(7);
  }
  CHECK(mass == Rational(1) + Rational(1, 7));
  // brute square-root counts of x^5 - 1 at each residue
  for (int64_t x = 0; x < 7; ++x) {
    const int64_t v = ((x * x * x * x * x - 1) % 7 + 7) % 7;
    if (v == 0) continue;
    CHECK(branch_count(X, Coset{1, {Integer(x)}}) == (ref::legendre(v, 7) == 1 ? 2 : 0));
  }
  const auto wide = pseudonorm(X, {}, 5, 1);
  const auto narrow = pseudonorm(X, {}, 5, 0);
  CHECK(intersects(wide, narrow));
}

TEST_CASE("pullback along affine substitutions") {
  const auto X = curve(7, "x^5 - 1");
  for (const AffineSubstitution s : {AffineSubstitution{1, 1}, AffineSubstitution{1, 2}, AffineSubstitution{3, 0},
                                     AffineSubstitution{-1, 3}}) {
    for (const PluricanonicalForm& f : {PluricanonicalForm{1, P("1")}, PluricanonicalForm{1, P("x")},
                                        PluricanonicalForm{2, P("x^2")}}) {
      const auto rep = pullback_isometry_check(X, f, s, 4);
      CHECK(rep.intersect);
    }
  }
  const auto Y = pullback_curve(X, {2, 1});
  CHECK(Y.h() == P("x^5 - 1").compose(std::vector<SparsePolynomial>{P("2*x + 1")}));
  CHECK(pullback_form({2, P("x")}, {2, 1}).numerator == P("8*x + 4"));
}

TEST_CASE("linear combinations agree along both routes") {
  const auto X = curve(7, "x^5 - 1");
  const std::vector<PluricanonicalForm> forms = {{1, P("1")}, {1, P("x")}};
  for (const auto& v : {Rational(0), Rational(1), Rational(7), Rational(1, 7), Rational(-3)}) {
    CAPTURE(v.get_str());
    const auto rep = linear_combination_pseudonorm(X, forms, {v}, 4);
    CHECK(rep.agree);
    CHECK(intersects(rep.direct, rep.factored));
    CHECK(same_enclosure(rep.direct, combination_pseudonorm(X, forms, {v}, 4)));
  }
  CHECK_THROWS_AS(linear_combination_pseudonorm(X, forms, {1, 2}, 3), DomainError);
  CHECK_THROWS_AS(linear_combination_pseudonorm(X, {{1, P("1")}, {2, P("1")}}, {1}, 3), DomainError);
}
