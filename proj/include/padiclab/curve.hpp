#pragma once

// Pseudonorms of pluricanonical forms P(x) (dx/y)^m on odd-degree hyperelliptic
// curves y^2 = h(x) over Q_p.
//
// The integral over the Q_p-points is pushed forward to the x-line: the finite
// chart covers x in p^-cut Z_p, the chart at infinity u = 1/x covers
// u in p^(cut+1) Z_p, and every x carries weight #{y : y^2 = h(x)}.

#include "padiclab/integrate.hpp"
#include "padiclab/padic.hpp"

#include <string>
#include <vector>

namespace padiclab {

class HyperellipticCurve {
 public:
  HyperellipticCurve(PAdicContext ctx, SparsePolynomial h);

  const PAdicContext& context() const { return ctx_; }
  int64_t prime() const { return ctx_.prime(); }
  const SparsePolynomial& h() const { return h_; }
  int genus() const { return genus_; }
  const Rational& discriminant() const { return disc_; }
  int64_t disc_valuation() const { return disc_valuation_; }

 private:
  PAdicContext ctx_;
  SparsePolynomial h_;
  int genus_;
  Rational disc_;
  int64_t disc_valuation_;
};

/// omega = numerator(x) (dx/y)^{tensor m}.
struct PluricanonicalForm {
  int64_t m = 1;
  SparsePolynomial numerator = SparsePolynomial::constant(1, Rational(1));
};

struct FormValidation {
  bool regular = false;
  /// Order of vanishing at the point at infinity (in a local parameter there).
  int64_t order_at_infinity = 0;
  /// Smallest order at a finite Weierstrass point.
  int64_t min_order_at_weierstrass = 0;
  std::string reason;
};

FormValidation validate_form(const HyperellipticCurve& curve, const PluricanonicalForm& form);

struct Chart {
  std::string name;
  std::vector<Coset> domain;
  Integrand integrand;
};

/// Finite chart and chart at infinity; cut moves the boundary to |x| <= p^cut.
std::vector<Chart> build_charts(const HyperellipticCurve& curve, const PluricanonicalForm& form,
                                int64_t cut = 0);

/// Number of points (x, y) over a coset of x resolved for h: 0 or 2.
int branch_count(const HyperellipticCurve& curve, const Coset& x_coset);

IntegralResult pseudonorm(const HyperellipticCurve& curve, const PluricanonicalForm& form,
                          int64_t depth, int64_t cut = 0);

struct LinearCombinationReport {
  IntegralResult direct;
  IntegralResult factored;
  bool agree = false;
};

/// Pseudonorm of eta_0 + sum_i v_i eta_i along two routes: the combined form
/// directly, and |1 + sum v_i eta_i/eta_0|^{1/m} against the eta_0 measure.
LinearCombinationReport linear_combination_pseudonorm(const HyperellipticCurve& curve,
                                                      const std::vector<PluricanonicalForm>& forms,
                                                      const std::vector<Rational>& v, int64_t depth);

/// Only the direct route (cheaper; used by scans).
IntegralResult combination_pseudonorm(const HyperellipticCurve& curve,
                                      const std::vector<PluricanonicalForm>& forms,
                                      const std::vector<Rational>& v, int64_t depth);

/// The model y^2 = h(a x + b) and the map f(x, y) = (a x + b, y) onto the input curve.
struct AffineSubstitution {
  Rational a = 1;
  Rational b = 0;
};

HyperellipticCurve pullback_curve(const HyperellipticCurve& curve, const AffineSubstitution& s);
/// f^* of P(x)(dx/y)^m is a^m P(a x + b) (dx/y)^m.
PluricanonicalForm pullback_form(const PluricanonicalForm& form, const AffineSubstitution& s);

struct PullbackReport {
  IntegralResult original;
  IntegralResult pulled_back;
  bool intersect = false;
  bool exact_equal = false;
};

PullbackReport pullback_isometry_check(const HyperellipticCurve& curve, const PluricanonicalForm& form,
                                       const AffineSubstitution& s, int64_t depth);

}  // namespace padiclab
