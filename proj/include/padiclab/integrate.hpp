#pragma once

// Certified p-adic integration of products prod_i |F_i(x)|_p^{r_i} over finite
// unions of residue classes a + p^t Z_p^n, by recursive subdivision.
//
// Haar measure is normalized so Z_p^n has mass 1. A coset a + p^t Z_p^n is
// resolved for F when v_p(F(a)) < t, and |F| is then constant on it:
// F(a + p^t y) = F(a) mod p^t for p-integral F.

#include "padiclab/polynomial.hpp"
#include "padiclab/radical.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace padiclab {

/// The residue class center + p^level Z_p^n, center reduced mod p^level.
struct Coset {
  int64_t level = 0;
  std::vector<Integer> center;

  size_t dim() const { return center.size(); }
  static Coset whole(size_t n) { return Coset{0, std::vector<Integer>(n, Integer(0))}; }
  /// Haar mass p^{-n level}.
  Rational mass(int64_t p) const;
  bool contains(const Coset& other, int64_t p) const;
  friend bool operator==(const Coset&, const Coset&) = default;
};

/// Cosets with reduced centers; rejects centers outside [0, p^level).
void validate_coset(const Coset& c, int64_t p);
bool disjoint(const Coset& a, const Coset& b, int64_t p);

struct Factor {
  SparsePolynomial poly;
  Rational exponent;
};

/// constant * prod_i |F_i|^{r_i}, optionally weighted by the number of square
/// roots (0 or 2) of a branch polynomial B(x), i.e. the fiber size of y^2 = B(x).
class Integrand {
 public:
  Integrand(int64_t p, size_t nvars);

  /// Adds |poly|^exponent. The polynomial is rescaled to unit content and the
  /// scalar is absorbed into the constant; constant polynomials fold entirely.
  void add_factor(const SparsePolynomial& poly, const Rational& exponent);
  /// Multiplies the constant by a positive value.
  void scale(const RadicalValue& c);
  /// Univariate only. Rescaled by an even power of p so square classes survive.
  void set_branch_polynomial(const SparsePolynomial& b);

  int64_t prime() const { return p_; }
  size_t nvars() const { return nvars_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const RadicalValue& constant() const { return constant_; }
  const std::optional<SparsePolynomial>& branch_polynomial() const { return branch_; }
  bool has_negative_exponent() const;
  /// Sum of exponents.
  Rational exponent_sum() const;

  /// Same integrand with every polynomial composed with subs (new variable count
  /// taken from subs).
  Integrand compose(std::span<const SparsePolynomial> subs) const;

  std::string describe() const;

 private:
  int64_t p_;
  size_t nvars_;
  std::vector<Factor> factors_;
  RadicalValue constant_;
  std::optional<SparsePolynomial> branch_;
};

struct IntegralResult {
  RadicalValue lower;
  /// nullopt means the upper end is +infinity.
  std::optional<RadicalValue> upper;
  /// Exact sum over cosets resolved by the v_p(F(a)) < level rule.
  RadicalValue resolved_sum;
  /// Haar mass of cosets whose contribution is only bounded, not known.
  Rational unresolved_mass = 0;
  int64_t depth = 0;
  uint64_t resolved_cosets = 0;
  /// Cap cosets whose contribution was evaluated exactly by the root-tail rule.
  uint64_t tail_cosets = 0;
  uint64_t capped_cosets = 0;

  bool bounded() const { return upper.has_value(); }
  bool exact() const { return upper && *upper == lower; }
  bool contains(const RadicalValue& x) const;
  RadicalValue width() const;  // requires bounded()
};

bool intersects(const IntegralResult& a, const IntegralResult& b);
/// Identical enclosures (both ends, including unbounded flags).
bool same_enclosure(const IntegralResult& a, const IntegralResult& b);
IntegralResult operator+(const IntegralResult& a, const IntegralResult& b);

struct IntegrateOptions {
  /// Apply the exact root-tail rule at the cap. Defaults to on exactly when the
  /// integrand has a negative exponent.
  std::optional<bool> exact_tails;
};

IntegralResult integrate(const Integrand& integrand, std::span<const Coset> region, int64_t depth,
                         const IntegrateOptions& options = {});

/// Upper bound for the Haar mass of the zero locus: total mass of level-depth
/// cosets on which v_p(poly(center)) >= depth.
Rational zero_locus_mass(const SparsePolynomial& poly, int64_t p, int64_t depth);

/// Determinant of the Jacobian matrix of a polynomial map.
SparsePolynomial jacobian_determinant(std::span<const SparsePolynomial> map);

struct ChangeOfVariablesReport {
  IntegralResult image_side;    // integral of h over V = phi(U)
  IntegralResult pullback_side; // integral of (h o phi) |det phi'| over U
  std::vector<Coset> image;
  bool affine = false;
  bool unimodular = false;
  bool intersect = false;
  bool exact_equal = false;
};

/// Both sides of the change of variables formula for phi on region U.
ChangeOfVariablesReport change_of_variables_check(std::span<const SparsePolynomial> map,
                                                  const Coset& region, const Integrand& integrand,
                                                  int64_t depth);

}  // namespace padiclab
