#include "padiclab/bounds.hpp"
#include "padiclab/fq.hpp"

#include "oracles.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <random>

using namespace padiclab;

namespace {

HomogeneousPoly H(const char* s, size_t n, const FqField& k) {
  return HomogeneousPoly::from_sparse(SparsePolynomial::parse(s, n), k);
}

int64_t eval_mod(const std::vector<int64_t>& c, int64_t x, int64_t p) {
  int64_t v = 0;
  for (size_t i = c.size(); i-- > 0;) v = (v * x + c[i]) % p;
  return v;
}

/// Brute singular points over the prime field.
bool has_prime_field_singularity(const HomogeneousPoly& f, const FqField& k) {
  const size_t n = f.nvars;
  std::vector<HomogeneousPoly> parts;
  for (size_t i = 0; i < n; ++i) parts.push_back(f.derivative(i, k));
  uint64_t total = 1;
  for (size_t i = 0; i < n; ++i) total *= static_cast<uint64_t>(k.p());
  std::vector<FqField::Elem> x(n);
  for (uint64_t idx = 1; idx < total; ++idx) {
    uint64_t rem = idx;
    for (size_t i = 0; i < n; ++i) {
      x[i] = static_cast<FqField::Elem>(rem % static_cast<uint64_t>(k.p()));
      rem /= static_cast<uint64_t>(k.p());
    }
    bool sing = f.evaluate(x, k) == 0;
    for (const auto& d : parts) sing = sing && (d.is_zero() || d.evaluate(x, k) == 0);
    if (sing) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("field arithmetic against schoolbook reduction") {
  for (const auto [p, e] : std::vector<std::pair<int64_t, int64_t>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}, {7, 2}, {2, 5}, {3, 3}, {7, 1}}) {
    const FqField k(p, e);
    CAPTURE(k.q());
    for (int64_t a = 0; a < k.q(); ++a) {
      for (int64_t b = 0; b < k.q(); ++b) {
        const auto A = static_cast<FqField::Elem>(a), B = static_cast<FqField::Elem>(b);
        CHECK(k.mul(A, B) == static_cast<FqField::Elem>(ref::fq_mul(a, b, p, k.modulus())));
        // digitwise addition
        int64_t s = 0, place = 1, x = a, y = b;
        for (int64_t i = 0; i < e; ++i) {
          s += ((x % p + y % p) % p) * place;
          x /= p;
          y /= p;
          place *= p;
        }
        CHECK(k.add(A, B) == static_cast<FqField::Elem>(s));
        CHECK(k.sub(k.add(A, B), B) == A);
      }
      if (a != 0) {
        const auto A = static_cast<FqField::Elem>(a);
        CHECK(k.mul(A, k.inv(A)) == 1);
        CHECK(k.pow(A, static_cast<uint64_t>(k.q() - 1)) == 1);
      }
    }
    CHECK_THROWS_AS(k.inv(0), DomainError);
  }
}

TEST_CASE("moduli are the first irreducible in lex order") {
  CHECK(FqField(7, 2).modulus() == std::vector<int64_t>{1, 0, 1});
  CHECK(FqField(2, 3).modulus() == std::vector<int64_t>{1, 1, 0, 1});
  CHECK(FqField(3, 2).modulus() == std::vector<int64_t>{1, 0, 1});
  for (const auto [p, e] : std::vector<std::pair<int64_t, int64_t>>{{2, 2}, {3, 2}, {5, 2}, {7, 2}, {11, 2}, {2, 3}, {3, 3}, {5, 3}}) {
    const auto m = first_irreducible(p, e);
    int64_t index = 0;
    for (int64_t i = e; i-- > 0;) index = index * p + m[static_cast<size_t>(i)];
    // degree <= 3: irreducible iff rootless
    auto rootless = [&](const std::vector<int64_t>& c) {
      for (int64_t x = 0; x < p; ++x) {
        if (eval_mod(c, x, p) == 0) return false;
      }
      return true;
    };
    CHECK(rootless(m));
    for (int64_t j = 0; j < index; ++j) {
      std::vector<int64_t> c(static_cast<size_t>(e + 1), 0);
      int64_t rem = j;
      for (int64_t i = 0; i < e; ++i) {
        c[static_cast<size_t>(i)] = rem % p;
        rem /= p;
      }
      c[static_cast<size_t>(e)] = 1;
      CHECK_FALSE(rootless(c));
    }
  }
  CHECK(FqField::parse("49").q() == 49);
  CHECK(FqField::parse("3^4").e() == 4);
  CHECK_THROWS_AS(FqField::parse("12"), DomainError);
  CHECK_THROWS_AS(FqField(9, 1), DomainError);
}

TEST_CASE("point counts") {
  for (const int64_t q : {2, 3, 4, 5, 7, 8, 9, 25}) {
    const auto k = FqField::parse(std::to_string(q));
    const auto uq = static_cast<uint64_t>(q);
    CHECK(count_points(H("x0 + x1 + x2", 3, k), k) == uq + 1);
    CHECK(count_points(H("x0*x1", 3, k), k) == 2 * uq + 1);
    CHECK(count_points(H("x0", 4, k), k) == uq * uq + uq + 1);
    if (q % 2 == 1) CHECK(count_points(H("x0^2 + x1^2 - x2^2", 3, k), k) == uq + 1);
  }
  const FqField f5(5);
  const auto e = H("x1^2*x2 - x0^3 - x0*x2^2", 3, f5);
  CHECK(count_points(e, f5) == 4);
  CHECK(count_points(e, f5) == oracle::projective_count(e, 5));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const int64_t p = std::vector<int64_t>{3, 5, 7}[rng() % 3];
    const FqField k(p);
    const size_t n = 3 + rng() % 2;
    const auto f = random_homogeneous(n, 2 + static_cast<int>(rng() % 3), k, rng);
    if (f.is_zero()) continue;
    CHECK(count_points(f, k) == oracle::projective_count(f, p));
  }
}

TEST_CASE("smoothness verdicts") {
  const FqField f7(7);
  CHECK(is_smooth(H("x0^3 + x1^3 + x2^3", 3, f7), f7).verdict == Smoothness::kSmooth);
  CHECK(is_smooth(H("x0^4 + x1^4 + x2^4 + x3^4", 4, f7), f7).verdict == Smoothness::kSmooth);
  CHECK(is_smooth(H("x0^7 + x1^7 + x2^7", 3, f7), f7).verdict == Smoothness::kSingular);
  const FqField f5(5);
  for (const char* s : {"x0^2*x1", "x0^2 - x1^2", "x1^2*x2 - x0^3", "x0*x1*x2"}) {
    CAPTURE(s);
    const auto f = H(s, 3, f5);
    const auto res = is_smooth(f, f5);
    REQUIRE(res.verdict == Smoothness::kSingular);
    REQUIRE(res.witness);
    CHECK(res.witness_degree == 1);
    CHECK(f.evaluate(*res.witness, f5) == 0);
    for (size_t i = 0; i < 3; ++i) {
      const auto d = f.derivative(i, f5);
      if (!d.is_zero()) CHECK(d.evaluate(*res.witness, f5) == 0);
    }
  }
  // singular exactly where x^2 = 2 y^2, z = 0, which needs F_25
  const auto f = H("x0^4 - 4*x0^2*x1^2 + 4*x1^4 + x2^4", 3, f5);
  CHECK(is_smooth(f, f5, 1).verdict != Smoothness::kSmooth);
  const auto deep = is_smooth(f, f5, 2);
  CHECK(deep.verdict == Smoothness::kSingular);
  CHECK(deep.witness_degree == 2);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 40; ++i) {
    const int64_t p = std::vector<int64_t>{5, 7}[rng() % 2];
    const FqField k(p);
    const auto g = random_homogeneous(3, 3, k, rng);
    if (g.is_zero()) continue;
    const auto res = is_smooth(g, k);
    if (has_prime_field_singularity(g, k)) CHECK(res.verdict == Smoothness::kSingular);
    if (res.verdict == Smoothness::kSmooth) {
      CHECK_FALSE(has_prime_field_singularity(g, k));
      CHECK(res.macaulay_rank == res.macaulay_columns);
    }
  }
}

TEST_CASE("hyperplane restriction and sections") {
  std::mt19937_64 rng(13);
  const FqField k(7);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_homogeneous(4, 3, k, rng);
    if (f.is_zero()) continue;
    std::vector<FqField::Elem> a(4);
    for (auto& x : a) x = static_cast<FqField::Elem>(rng() % 7);
    if (a == std::vector<FqField::Elem>(4, 0)) a[0] = 1;
    std::vector<uint32_t> au(a.begin(), a.end());
    const auto want = oracle::projective_count_on_hyperplane(f, au, 7);
    const auto g = restrict_to_hyperplane(f, a, k);
    if (g.is_zero()) {
      CHECK(want == 7 * 7 + 7 + 1);
    } else {
      CHECK(count_points(g, k) == want);
    }
  }
  CHECK_THROWS_AS(restrict_to_hyperplane(H("x0", 3, k), {0, 0, 0}, k), DomainError);
  const FqField f13(13);
  const auto s = smooth_section_search(H("x0^4 + x1^4 + x2^4 + x3^4", 4, f13), f13);
  REQUIRE(s.hyperplane);
  REQUIRE(s.section_smoothness);
  CHECK(s.section_smoothness->verdict == Smoothness::kSmooth);
  CHECK(s.section->nvars == 3);
}

TEST_CASE("Hasse-Weil on smooth plane curves") {
  std::mt19937_64 rng(29);
  int smooth_seen = 0;
  for (const int64_t q : {5, 7, 11, 13}) {
    const FqField k(q);
    for (int d = 3; d <= 4; ++d) {
      for (int i = 0; i < 8; ++i) {
        const auto f = random_homogeneous(3, d, k, rng);
        if (f.is_zero() || is_smooth(f, k).verdict != Smoothness::kSmooth) continue;
        ++smooth_seen;
        const Integer g = (d - 1) * (d - 2) / 2;
        const auto n = count_points(f, k);
        CHECK(oracle::hasse_weil(Integer(static_cast<unsigned long>(n)), g, q));
        CHECK(hasse_weil_check(Integer(static_cast<unsigned long>(n)), g, q).pass);
      }
    }
  }
  CHECK(smooth_seen > 20);
}
