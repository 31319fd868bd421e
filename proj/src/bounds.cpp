#include "padiclab/bounds.hpp"

#include <algorithm>

namespace padiclab {

namespace {

Integer power(const Integer& b, int64_t e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

void validate_profile(const IntersectionProfile& p) {
  if (p.n < 1) throw DomainError("dimension n must be at least 1");
  if (p.hn < 1) throw DomainError("H^n must be at least 1");
}

Integer adjunction_genus(const IntersectionProfile& p) {
  validate_profile(p);
  const Integer rhs = p.khn1 + (p.n - 1) * p.hn;  // 2g - 2
  if (rhs < -2) throw DomainError("K.H^{n-1} + (n-1)H^n must be at least -2");
  if (rhs % 2 != 0) throw DomainError("K.H^{n-1} + (n-1)H^n must be even");
  return (rhs + 2) / 2;
}

Integer theorem_threshold(const IntersectionProfile& p) {
  validate_profile(p);
  const Integer first = p.hn * power(p.hn - 1, p.n);
  const Integer s = p.khn1 + (p.n - 1) * p.hn + 2;
  return std::max(first, Integer(s * s));
}

Integer surface_threshold(const Integer& k_squared) {
  if (k_squared < 1) throw DomainError("K^2 must be positive for a surface of general type");
  const Integer a = 25 * k_squared;
  const Integer b = 30 * k_squared + 2;
  return std::max(Integer(a * (a - 1) * (a - 1)), Integer(b * b));
}

Integer hasse_weil_threshold(const Integer& genus) {
  if (genus < 0) throw DomainError("genus must be non-negative");
  return 4 * genus * genus;
}

Integer complete_intersection_threshold(const std::vector<Integer>& degrees) {
  if (degrees.empty()) throw DomainError("need at least one degree");
  Integer s = 2, prod = 1;
  for (const auto& d : degrees) {
    if (d < 1) throw DomainError("degrees must be positive");
    s += d - 1;
    prod *= d;
  }
  return 2 * s * s * prod * prod;
}

HasseWeilCheck hasse_weil_check(const Integer& count, const Integer& genus, const Integer& q) {
  if (genus < 0) throw DomainError("genus must be non-negative");
  if (q < 2) throw DomainError("q must be at least 2");
  if (count < 0) throw DomainError("count must be non-negative");
  HasseWeilCheck out;
  const Integer t = 1 + q - count;
  out.lhs = t * t;
  out.rhs = 4 * genus * genus * q;
  out.pass = out.lhs <= out.rhs;
  return out;
}

}  // namespace padiclab
