#pragma once

// Finite fields F_q, homogeneous polynomials over them, point counts and
// smoothness certificates for projective hypersurfaces.

#include "padiclab/polynomial.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace padiclab {

/// F_{p^e} = F_p[t]/(modulus). An element is the integer whose base-p digits are
/// its coefficients in 1, t, ..., t^{e-1}; the prime field is 0..p-1.
class FqField {
 public:
  using Elem = uint32_t;

  FqField(int64_t p, int64_t e = 1);
  /// Parses "q", "p" or "p^e".
  static FqField parse(const std::string& text);

  int64_t p() const { return p_; }
  int64_t e() const { return e_; }
  int64_t q() const { return q_; }
  /// Monic modulus coefficients, lowest degree first (size e + 1).
  const std::vector<int64_t>& modulus() const { return modulus_; }
  Elem generator() const { return exp_[1 % exp_.size()]; }

  Elem from_int(int64_t c) const;
  Elem from_rational(const Rational& c) const;
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, uint64_t k) const;
  std::string to_string(Elem a) const;

 private:
  Elem mul_slow(Elem a, Elem b) const;

  int64_t p_;
  int64_t e_;
  int64_t q_;
  std::vector<int64_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<uint32_t> log_;
};

/// Monic irreducible polynomials of degree e over F_p are tried in increasing
/// order of the integer sum c_i p^i (i < e); the first one is used.
std::vector<int64_t> first_irreducible(int64_t p, int64_t e);

struct HomogeneousPoly {
  using Exponents = std::vector<uint32_t>;

  size_t nvars = 0;
  int degree = 0;
  std::map<Exponents, FqField::Elem> terms;

  static HomogeneousPoly from_sparse(const SparsePolynomial& f, const FqField& k);
  bool is_zero() const { return terms.empty(); }
  bool prime_field_coefficients(const FqField& k) const;
  FqField::Elem evaluate(const std::vector<FqField::Elem>& x, const FqField& k) const;
  HomogeneousPoly derivative(size_t var, const FqField& k) const;
  std::string to_string(const FqField& k) const;
};

/// Random homogeneous polynomial of the given degree with uniform coefficients.
HomogeneousPoly random_homogeneous(size_t nvars, int degree, const FqField& k, std::mt19937_64& rng);

/// Number of projective zeros over F_q.
uint64_t count_points(const HomogeneousPoly& f, const FqField& k);

enum class Smoothness { kSmooth, kSingular, kInconclusive };
std::string to_string(Smoothness s);

struct SmoothnessResult {
  Smoothness verdict = Smoothness::kInconclusive;
  /// Singular point over F_{q^witness_degree}, in that field's encoding.
  std::optional<std::vector<FqField::Elem>> witness;
  int64_t witness_degree = 0;
  /// Extension degrees searched for singular points.
  int64_t searched_degree = 0;
  /// Rank of the Macaulay matrix of the partials in degree (N+1)(d-2)+1, and
  /// the number of monomials of that degree; equality certifies smoothness.
  size_t macaulay_rank = 0;
  size_t macaulay_columns = 0;
  std::string method;
};

/// Jacobian criterion. Singular points are searched over F_{q^s} for s <= S
/// while the projective space has at most search_limit points.
SmoothnessResult is_smooth(const HomogeneousPoly& f, const FqField& k, int64_t search_degree = 1,
                           uint64_t search_limit = 2'000'000);

/// Substitutes x_i -> -sum_{j > i} a_j x_j where i is the first index with
/// a_i != 0 (a normalized with a_i = 1); the result omits x_i.
HomogeneousPoly restrict_to_hyperplane(const HomogeneousPoly& f, const std::vector<FqField::Elem>& a,
                                       const FqField& k);

struct SectionSearch {
  std::optional<std::vector<FqField::Elem>> hyperplane;
  std::optional<HomogeneousPoly> section;
  std::optional<SmoothnessResult> section_smoothness;
  uint64_t tried = 0;
  /// Hyperplanes whose section smoothness stayed undecided.
  uint64_t inconclusive = 0;
};

SectionSearch smooth_section_search(const HomogeneousPoly& f, const FqField& k, int64_t search_degree = 1);

}  // namespace padiclab
