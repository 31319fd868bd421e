#pragma once

// Brute-force reference computations for the unit tests. Nothing here calls
// the code under test except the plain GMP wrappers.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace ref {

inline int64_t val(mpz_class n, int64_t p) {
  int64_t v = 0;
  if (n == 0) return 1 << 30;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline int64_t val(const mpq_class& x, int64_t p) {
  return val(mpz_class(x.get_num()), p) - val(mpz_class(x.get_den()), p);
}

inline mpz_class pw(int64_t p, int64_t e) {
  mpz_class r = 1;
  for (int64_t i = 0; i < e; ++i) r *= p;
  return r;
}

inline mpq_class qpow(int64_t p, int64_t e) {
  return e >= 0 ? mpq_class(pw(p, e)) : mpq_class(1, pw(p, -e));
}

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Euler-free Legendre symbol: does a square to a mod p.
inline int legendre(int64_t a, int64_t p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  for (int64_t x = 1; x < p; ++x) {
    if (x * x % p == a) return 1;
  }
  return -1;
}

/// All x mod p^k with x^2 = a mod p^k.
inline std::vector<int64_t> sqrt_mod(int64_t a, int64_t p, int k) {
  const int64_t m = pw(p, k).get_si();
  a = ((a % m) + m) % m;
  std::vector<int64_t> out;
  for (int64_t x = 0; x < m; ++x) {
    if (x * x % m == a) out.push_back(x);
  }
  return out;
}

/// Dense univariate polynomial with rational coefficients, lowest first.
using Dense = std::vector<mpq_class>;

inline Dense mul(const Dense& a, const Dense& b) {
  if (a.empty() || b.empty()) return {};
  Dense r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

inline mpq_class eval(const Dense& a, const mpq_class& x) {
  mpq_class acc = 0;
  for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

/// Multiplication in F_p[t]/(modulus) by schoolbook product and reduction;
/// elements are base-p digit integers.
inline int64_t fq_mul(int64_t a, int64_t b, int64_t p, const std::vector<int64_t>& modulus) {
  const size_t e = modulus.size() - 1;
  std::vector<int64_t> da(e), db(e), prod(2 * e, 0);
  for (size_t i = 0; i < e; ++i) {
    da[i] = a % p;
    a /= p;
    db[i] = b % p;
    b /= p;
  }
  for (size_t i = 0; i < e; ++i) {
    for (size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  }
  for (size_t k = 2 * e - 1; k >= e; --k) {
    const int64_t c = prod[k];
    if (c == 0) continue;
    for (size_t i = 0; i <= e; ++i) prod[k - e + i] = ((prod[k - e + i] - c * modulus[i]) % p + p) % p;
  }
  int64_t out = 0, place = 1;
  for (size_t i = 0; i < e; ++i) {
    out += prod[i] * place;
    place *= p;
  }
  return out;
}

/// Projective zeros over F_p of a polynomial given as exponent-vector -> residue,
/// counted by enumerating all nonzero affine vectors and dividing by p - 1.
inline uint64_t affine_cone_count(const std::map<std::vector<uint32_t>, int64_t>& f, size_t n, int64_t p) {
  uint64_t total = 1;
  for (size_t i = 0; i < n; ++i) total *= static_cast<uint64_t>(p);
  uint64_t zeros = 0;
  std::vector<int64_t> x(n);
  for (uint64_t idx = 1; idx < total; ++idx) {
    uint64_t rem = idx;
    for (size_t i = 0; i < n; ++i) {
      x[i] = static_cast<int64_t>(rem % static_cast<uint64_t>(p));
      rem /= static_cast<uint64_t>(p);
    }
    int64_t acc = 0;
    for (const auto& [e, c] : f) {
      int64_t t = c % p;
      for (size_t i = 0; i < n; ++i) {
        for (uint32_t k = 0; k < e[i]; ++k) t = t * x[i] % p;
      }
      acc = (acc + t) % p;
    }
    if (acc == 0) ++zeros;
  }
  return zeros / static_cast<uint64_t>(p - 1);
}

/// Affine count of y^2 = h(x) over F_p.
inline int64_t hyperelliptic_affine_count(const std::vector<int64_t>& h, int64_t p) {
  int64_t n = 0;
  for (int64_t x = 0; x < p; ++x) {
    int64_t v = 0;
    for (size_t i = h.size(); i-- > 0;) v = ((v * x + h[i]) % p + p) % p;
    for (int64_t y = 0; y < p; ++y) {
      if (y * y % p == v) ++n;
    }
  }
  return n;
}

}  // namespace ref
