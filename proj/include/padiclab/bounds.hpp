#pragma once

// Thresholds on q that force rational points, the adjunction genus of a
// hyperplane section, and the Hasse-Weil inequality.

#include "padiclab/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace padiclab {

/// H^n and K.H^{n-1} for an n-dimensional W with very ample H.
struct IntersectionProfile {
  int64_t n = 1;
  Integer hn = 1;
  Integer khn1 = 0;
};

void validate_profile(const IntersectionProfile& p);

/// g of a curve cut by n-1 general members of |H|: (K.H^{n-1} + (n-1)H^n + 2) / 2.
Integer adjunction_genus(const IntersectionProfile& p);

/// max{H^n (H^n - 1)^n, (K.H^{n-1} + (n-1)H^n + 2)^2}; points exist for q above it.
Integer theorem_threshold(const IntersectionProfile& p);
/// max{25K^2 (25K^2 - 1)^2, (30K^2 + 2)^2} for a minimal surface of general type.
Integer surface_threshold(const Integer& k_squared);
/// 4 g^2.
Integer hasse_weil_threshold(const Integer& genus);
/// 2 (2 + sum (d_j - 1))^2 (prod d_j)^2 for a complete intersection of the given degrees.
Integer complete_intersection_threshold(const std::vector<Integer>& degrees);

struct HasseWeilCheck {
  Integer lhs;  // (1 + q - count)^2
  Integer rhs;  // 4 g^2 q
  bool pass = false;
  Integer margin() const { return rhs - lhs; }
};

HasseWeilCheck hasse_weil_check(const Integer& count, const Integer& genus, const Integer& q);

}  // namespace padiclab
