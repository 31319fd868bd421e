#include "padiclab/io.hpp"

#include <doctest.h>

#include <fstream>

using namespace padiclab;

TEST_CASE("rationals and radicals") {
  CHECK(rational_from_json(Json(3)) == 3);
  CHECK(rational_from_json(Json("-6/4")) == Rational(-3, 2));
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), DomainError);
  CHECK_THROWS_AS(rational_from_json(Json::array()), DomainError);
  CHECK(to_json(Rational(-3, 2))["exact"] == "-3/2");
  CHECK(rational_from_json(to_json(Rational(22, 7))) == Rational(22, 7));
  const auto j = to_json(RadicalValue::prime_power(3, Rational(1, 2)));
  CHECK(j["generator"] == "3^(1/2)");
  CHECK(j["decimal"].get<double>() == doctest::Approx(std::sqrt(3.0)));
  CHECK(j.contains("exact"));
}

TEST_CASE("polynomials") {
  CHECK(univariate_from_json(Json("x^2 - 1")) == SparsePolynomial::parse("x^2 - 1"));
  CHECK(univariate_from_json(Json::parse(R"([-1, 0, "1/2"])")) == SparsePolynomial::parse("1/2*x^2 - 1"));
  CHECK_THROWS_AS(univariate_from_json(Json(1)), DomainError);
  CHECK(polynomial_from_text("x0*x1 + x2\n", 3) == SparsePolynomial::parse("x0*x1 + x2", 3));
  const auto f = polynomial_from_text(R"({"poly": "x0^2 - x1^2", "nvars": 4})");
  CHECK(f.nvars() == 4);
  CHECK_THROWS_AS(read_file("/nonexistent/padiclab"), DomainError);
  const std::string path = "test_io_poly.txt";
  std::ofstream(path) << "x^3 + 1\n";
  CHECK(polynomial_from_text(read_file(path)) == SparsePolynomial::parse("x^3 + 1"));
  std::remove(path.c_str());
}

TEST_CASE("curve setups") {
  const auto s = curve_setup_from_json(Json::parse(
      R"({"p": 7, "h": "x^5 - 1", "forms": [{"m": 1, "numerator": "1"}, {"numerator": [0, 1]}]})"));
  CHECK(s.curve.prime() == 7);
  CHECK(s.curve.context().precision() == 20);
  REQUIRE(s.forms.size() == 2);
  CHECK(s.forms[1].m == 1);
  CHECK(s.forms[1].numerator == SparsePolynomial::parse("x"));
  CHECK_THROWS(curve_setup_from_json(Json::parse(R"({"h": "x^5 - 1", "forms": []})")));
  CHECK_THROWS(curve_setup_from_json(Json::parse(R"({"p": 6, "h": "x^5 - 1", "forms": []})")));
}

TEST_CASE("step functions") {
  const auto f = step_function_from_json(Json::parse(
      R"({"p": 3, "cosets": [{"center": "1/3", "level": 0, "value": 2},
                             {"center": 0, "level": 1, "value": {"re": 1, "im": "-1/2"}}]})"));
  CHECK(f.prime() == 3);
  REQUIRE(f.cosets().size() == 2);
  CHECK(f.evaluate(Rational(1, 3)) == PhaseSum::real(RadicalValue(3, 2)));
  CHECK(f.evaluate(3) == PhaseSum::complex(3, 1, Rational(-1, 2)));
  const auto j = to_json(f);
  CHECK(j["cosets"].size() == 2);
  CHECK_THROWS_AS(step_function_from_json(Json::parse(
                      R"({"p": 3, "cosets": [{"center": 0, "level": 0, "value": 1},
                                             {"center": 0, "level": 1, "value": 1}]})")),
                  DomainError);
}

TEST_CASE("result serialization") {
  Integrand f(3, 1);
  f.add_factor(SparsePolynomial::parse("x"), 1);
  const std::vector<Coset> region = {Coset::whole(1)};
  const auto j = to_json(integrate(f, region, 3));
  for (const char* key : {"lower", "upper", "exact", "bounded", "width", "resolved_sum", "unresolved_mass", "depth"})
    CHECK(j.contains(key));
  CHECK(j["bounded"] == true);
  CHECK(j["depth"] == 3);
  const auto w = to_json(witness_construct(3, 1));
  CHECK(w["terms"].size() == 2);
  const FqField k(5);
  const auto s = to_json(is_smooth(HomogeneousPoly::from_sparse(SparsePolynomial::parse("x0^2*x1", 3), k), k));
  CHECK(s["verdict"] == "singular");
  CHECK(s["witness"] == "(0:1:0)");
}
