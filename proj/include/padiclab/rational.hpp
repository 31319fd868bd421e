#pragma once

// Exact integer / rational helpers on top of GMP.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace padiclab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an input violates a documented precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a p-adic operation cancels every known digit.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// p-adic valuation of a nonzero integer.
int64_t valuation(const Integer& n, int64_t p);

/// p-adic valuation of a rational; std::nullopt for zero.
std::optional<int64_t> valuation(const Rational& x, int64_t p);

/// p^e for e >= 0.
Integer ipow(int64_t p, uint64_t e);

/// p^e as an exact rational; e may be negative.
Rational rpow(int64_t p, int64_t e);

Rational rpow(const Rational& base, uint64_t e);

/// Removes every factor p from n (n != 0).
Integer strip(const Integer& n, int64_t p);

/// Residue of a p-integral rational modulo p^k, in [0, p^k).
Integer residue(const Rational& x, int64_t p, uint64_t k);

/// Floor division that rounds toward -infinity for int64.
inline int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool is_prime(int64_t n);

/// Legendre symbol (a/p) for odd prime p; 0 when p | a.
int legendre(const Integer& a, int64_t p);

/// Parses "a", "-a", "a/b" into a canonical rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& x);

/// Decimal approximation of a rational.
double to_double(const Rational& x);

/// Binomial coefficient C(r, j) for rational r.
Rational binomial(const Rational& r, uint64_t j);

int64_t lcm64(int64_t a, int64_t b);

}  // namespace padiclab
