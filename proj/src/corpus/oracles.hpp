#pragma once

// Reference computations for the acceptance suites. These avoid
// the integration, Fourier and finite-field engines: each one enumerates or
// substitutes directly with GMP integers.

#include "padiclab/fourier.hpp"
#include "padiclab/fq.hpp"
#include "padiclab/polynomial.hpp"
#include "padiclab/radical.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace padiclab::oracle {

int64_t val(const Integer& n, int64_t p);
/// Valuation of a nonzero rational.
int64_t val(const Rational& x, int64_t p);

/// (1 - 1/p) / (1 - p^-(r+1)), the integral of |x|^r over Z_p.
RadicalValue abs_power_integral(int64_t p, const Rational& r);

struct Enclosure {
  RadicalValue lower;
  std::optional<RadicalValue> upper;
};

struct Term {
  SparsePolynomial poly;  // integer coefficients, unit content
  Rational exponent;
};

/// Integral of prod |F_i|^{r_i} over Z_p^n from all residues mod p^depth: a
/// residue class where every F_i(a) has valuation < depth contributes exactly,
/// the rest contribute between 0 and the sup bound (+inf for negative exponents).
Enclosure residue_enumeration(int64_t p, size_t n, int64_t depth, const std::vector<Term>& terms);

/// {x}_p in [0, 1).
Rational frac(const Rational& x, int64_t p);

/// Transform of the indicator of c + p^k Z_p at tau.
PhaseSum indicator_transform(int64_t p, const Rational& c, int64_t k, const Rational& tau);

/// f_0(s) = sum a_k |1 + c_k s|^r evaluated term by term.
RadicalValue witness_value(int64_t p, const Rational& r, const std::vector<std::pair<RadicalValue, Rational>>& terms,
                           const Rational& s);

/// Transform of f_0 at tau by a level-L Riemann sum over |s| <= p^R; the classes
/// holding a zero of 1 + c_k s carry the averaged term, summed as a series.
std::complex<long double> witness_transform(int64_t p, const Rational& r,
                                            const std::vector<std::pair<RadicalValue, Rational>>& terms,
                                            int64_t radius, int64_t level, const Rational& tau);

/// Projective zeros over the prime field F_p (coefficients read as residues).
uint64_t projective_count(const HomogeneousPoly& f, int64_t p);
/// Projective zeros of f on the hyperplane sum a_i x_i = 0 over F_p.
uint64_t projective_count_on_hyperplane(const HomogeneousPoly& f, const std::vector<uint32_t>& a, int64_t p);

/// |1 + q - n| <= floor(2 g sqrt q).
bool hasse_weil(const Integer& n, const Integer& g, const Integer& q);

Integer theorem_bound(int64_t n, const Integer& hn, const Integer& khn1);
Integer surface_bound(const Integer& ksq);
Integer ci_bound(const std::vector<Integer>& d);

}  // namespace padiclab::oracle
