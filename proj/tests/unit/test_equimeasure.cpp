#include "padiclab/equimeasure.hpp"

#include "support/reference.hpp"

#include <doctest.h>

using namespace padiclab;

namespace {

SparsePolynomial P(const char* s) { return SparsePolynomial::parse(s, 1); }

CurveSetup setup(const char* h, std::vector<PluricanonicalForm> forms) {
  return CurveSetup{HyperellipticCurve(PAdicContext(7, 20), P(h)), std::move(forms)};
}

RadicalValue sum_upper(const MassEnclosure& e) {
  REQUIRE(e.upper);
  return *e.upper;
}

}  // namespace

TEST_CASE("setup validation") {
  CHECK_NOTHROW(validate_setup(setup("x^5 - 1", {{1, P("1")}, {1, P("x")}})));
  CHECK_THROWS_AS(validate_setup(setup("x^5 - 1", {{1, P("1")}, {2, P("x")}})), DomainError);
  CHECK_THROWS_AS(validate_setup(setup("x^5 - 1", {{1, P("0")}, {1, P("x")}})), DomainError);
  CHECK_THROWS_AS(validate_setup(setup("x^5 - 1", {{1, P("1")}, {1, P("x^3")}})), DomainError);
  CHECK_THROWS_AS(validate_setup(setup("x^5 - 1", {})), DomainError);
}

TEST_CASE("pushforward of x conserves the pseudonorm") {
  const auto s = setup("x^5 - 1", {{1, P("1")}, {1, P("x")}});
  const auto mu = pushforward(s, 2, 1);
  CHECK(mu.dim() == 1);
  CHECK(mu.depth() == 2);
  CHECK(mu.window() == 1);
  const auto total = mu.total();
  const auto norm = pseudonorm(s.curve, s.forms[0], 8);
  CHECK(total.intersects(MassEnclosure{norm.lower, norm.upper}));
  RadicalValue assigned(7);
  for (const auto& [k, m] : mu.assigned()) assigned += m;
  CHECK(assigned <= sum_upper(total));
  CHECK(assigned + mu.outside() <= sum_upper(total));

  // a unit u with x^5 - 1 a unit at u: the fiber is 2 points or none and
  // |dx/y| = |dx|, so the coset u + 7^2 Z_7 carries 2/49 or 0
  for (int64_t u = 0; u < 49; ++u) {
    const int64_t hu = ((u * u % 7 * u % 7 * u % 7 * u - 1) % 7 + 7) % 7;
    if (hu == 0) continue;
    const StepMeasure::Key k = {Integer(u * 7)};
    const auto e = mu.enclosure(k);
    CAPTURE(u);
    CHECK(mu.center(k)[0] == Rational(u));
    const Rational want = ref::legendre(hu, 7) == 1 ? Rational(2, 49) : Rational(0);
    CHECK(e.exact());
    CHECK(e.lower == RadicalValue(7, want));
  }
}

TEST_CASE("equimeasurable comparison") {
  const auto a = setup("x^5 - 1", {{1, P("1")}, {1, P("x")}});
  const auto mu = pushforward(a, 1, 1);
  const auto self = equimeasurable_compare(mu, mu);
  CHECK(self.equal);
  CHECK(self.gap == RadicalValue(7));
  CHECK_FALSE(self.witness);

  const auto broken = setup("x^5 - 1", {{1, P("1")}, {1, P("7*x")}});
  const auto nu = pushforward(broken, 1, 1);
  const auto cmp = equimeasurable_compare(mu, nu);
  CHECK_FALSE(cmp.equal);
  CHECK(cmp.gap > RadicalValue(7));
  CHECK((cmp.witness.has_value() || cmp.overflow_witness));

  // x -> x + 1 on the model y^2 = (x + 1)^5 - 1 is an isomorphism onto a; the
  // ratio x + 1 there matches x on a
  const auto shifted = setup("x^5 + 5*x^4 + 10*x^3 + 10*x^2 + 5*x", {{1, P("1")}, {1, P("x + 1")}});
  CHECK(equimeasurable_compare(mu, pushforward(shifted, 1, 1)).equal);
}

TEST_CASE("isometry grid and scan") {
  CHECK(isometry_grid(3, 1, 1).size() == 9);
  CHECK(isometry_grid(3, 2, 1).size() == 81);
  CHECK(isometry_grid(5, 1, 0).size() == 1);
  const auto g = isometry_grid(7, 1, 1);
  CHECK(g[8][0] == Rational(8, 7));
  const auto a = setup("x^5 - 1", {{1, P("1")}, {1, P("x")}});
  const auto shifted = setup("x^5 + 5*x^4 + 10*x^3 + 10*x^2 + 5*x", {{1, P("1")}, {1, P("x + 1")}});
  const std::vector<std::vector<Rational>> v = {{0}, {1}, {Rational(1, 7)}, {-2}};
  const auto rep = isometry_scan(a, shifted, v, 3);
  CHECK(rep.routes_agree);
  CHECK(rep.consistent());
  CHECK(rep.disjoint_count() == 0);
  const auto broken = setup("x^5 - 1", {{1, P("1")}, {1, P("7*x")}});
  CHECK(isometry_scan(a, broken, v, 3).disjoint_count() > 0);
}
