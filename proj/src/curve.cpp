#include "padiclab/curve.hpp"

#include <algorithm>

namespace padiclab {

namespace {

SparsePolynomial scaled_argument(const SparsePolynomial& f, int64_t p, int64_t cut) {
  // f(s p^-cut)
  const SparsePolynomial s = SparsePolynomial::monomial(rpow(p, -cut), {1});
  const SparsePolynomial subs[] = {s};
  return f.compose(subs);
}

// Largest k with h^k | f; for squarefree h this is the least order of f at a root of h.
int power_dividing(const SparsePolynomial& h, const SparsePolynomial& f) {
  int k = 0;
  while (univariate_gcd(h.pow(static_cast<uint32_t>(k + 1)), f).degree() == (k + 1) * h.degree()) ++k;
  return k;
}

bool zero_form(const PluricanonicalForm& f) { return f.numerator.is_zero(); }

IntegralResult exact_zero(int64_t p, int64_t depth) {
  IntegralResult r;
  r.lower = RadicalValue(p);
  r.upper = RadicalValue(p);
  r.resolved_sum = RadicalValue(p);
  r.depth = depth;
  return r;
}

SparsePolynomial combine(const std::vector<PluricanonicalForm>& forms, const std::vector<Rational>& v) {
  if (forms.empty()) throw DomainError("need at least eta_0");
  if (v.size() + 1 != forms.size()) throw DomainError("coefficient vector must have one entry per eta_i, i >= 1");
  SparsePolynomial q = forms[0].numerator;
  for (size_t i = 1; i < forms.size(); ++i) {
    if (forms[i].m != forms[0].m) throw DomainError("forms must share the tensor power m");
    q += forms[i].numerator * v[i - 1];
  }
  return q;
}

}  // namespace

HyperellipticCurve::HyperellipticCurve(PAdicContext ctx, SparsePolynomial h)
    : ctx_(ctx), h_(std::move(h)), genus_(0), disc_(0), disc_valuation_(0) {
  if (h_.nvars() != 1) throw DomainError("h must be univariate");
  const int d = h_.degree();
  if (d < 3 || d % 2 == 0) throw DomainError("h must have odd degree 2g+1 >= 3");
  genus_ = (d - 1) / 2;
  disc_ = padiclab::discriminant(h_);
  if (disc_ == 0) throw DomainError("h is not squarefree (zero discriminant)");
  disc_valuation_ = *valuation(disc_, ctx_.prime());
}

FormValidation validate_form(const HyperellipticCurve& curve, const PluricanonicalForm& form) {
  FormValidation out;
  if (form.m < 1) {
    out.reason = "tensor power m must be positive";
    return out;
  }
  if (form.numerator.nvars() != 1) {
    out.reason = "numerator must be univariate";
    return out;
  }
  if (zero_form(form)) {
    out.regular = true;
    out.reason = "zero form";
    return out;
  }
  // In the parameter t at infinity, u = t^2 * unit and du/w is a unit times dt,
  // so u^E (du/w)^m has order 2E.
  const int64_t e = form.m * (curve.genus() - 1) - form.numerator.degree();
  out.order_at_infinity = 2 * e;
  // At a finite Weierstrass point y is a parameter, dx/y is regular and
  // nonvanishing, and x - alpha has order 2.
  out.min_order_at_weierstrass = 2 * power_dividing(curve.h(), form.numerator);
  if (out.order_at_infinity < 0) {
    out.reason = "pole of order " + std::to_string(-out.order_at_infinity) + " at infinity";
    return out;
  }
  out.regular = true;
  return out;
}

std::vector<Chart> build_charts(const HyperellipticCurve& curve, const PluricanonicalForm& form,
                                int64_t cut) {
  const auto check = validate_form(curve, form);
  if (!check.regular) throw DomainError("form is not regular: " + check.reason);
  if (zero_form(form)) throw DomainError("zero form has no charts");
  if (cut < 0) throw DomainError("chart cut must be non-negative");
  const int64_t p = curve.prime();
  const int g = curve.genus();
  const Rational inv_m(1, form.m);
  std::vector<Chart> charts;

  Chart finite{"finite", {Coset::whole(1)}, Integrand(p, 1)};
  finite.integrand.add_factor(scaled_argument(form.numerator, p, cut), inv_m);
  const SparsePolynomial hs = scaled_argument(curve.h(), p, cut);
  finite.integrand.add_factor(hs, Rational(-1, 2));
  finite.integrand.set_branch_polynomial(hs);
  finite.integrand.scale(RadicalValue::prime_power(p, Rational(cut)));  // |dx| = p^cut |ds|
  charts.push_back(std::move(finite));

  Chart infinite{"infinity", {Coset{cut + 1, {Integer(0)}}}, Integrand(p, 1)};
  const int64_t e = form.m * (g - 1) - form.numerator.degree();
  if (e > 0) infinite.integrand.add_factor(SparsePolynomial::variable(1, 0), Rational(e, form.m));
  infinite.integrand.add_factor(reverse(form.numerator, form.numerator.degree()), inv_m);
  const SparsePolynomial ht = reverse(curve.h(), 2 * g + 2);
  infinite.integrand.add_factor(ht, Rational(-1, 2));
  infinite.integrand.set_branch_polynomial(ht);
  charts.push_back(std::move(infinite));
  return charts;
}

int branch_count(const HyperellipticCurve& curve, const Coset& x_coset) {
  const int64_t p = curve.prime();
  if (x_coset.dim() != 1) throw DomainError("branch_count expects a coset of the x-line");
  validate_coset(x_coset, p);
  const Rational hv = curve.h().evaluate(std::span<const Integer>(x_coset.center));
  const auto v = valuation(hv, p);
  const int64_t cv = *curve.h().content_valuation(p);
  if (cv < 0) throw DomainError("branch_count needs p-integral h");
  if (!v || *v >= x_coset.level) {
    throw DomainError("coset is not resolved for h; subdivide further");
  }
  if (*v % 2 != 0) return 0;
  const Integer num = strip(Integer(hv.get_num()), p);
  const Integer den = strip(Integer(hv.get_den()), p);
  return legendre(num * den, p) == 1 ? 2 : 0;
}

IntegralResult pseudonorm(const HyperellipticCurve& curve, const PluricanonicalForm& form, int64_t depth,
                          int64_t cut) {
  if (zero_form(form)) {
    const auto check = validate_form(curve, form);
    if (!check.regular) throw DomainError(check.reason);
    return exact_zero(curve.prime(), depth);
  }
  if (depth < cut + 1) throw DomainError("depth must be at least cut + 1");
  const auto charts = build_charts(curve, form, cut);
  std::optional<IntegralResult> total;
  for (const auto& chart : charts) {
    auto r = integrate(chart.integrand, chart.domain, depth);
    total = total ? *total + r : r;
  }
  return *total;
}

IntegralResult combination_pseudonorm(const HyperellipticCurve& curve,
                                      const std::vector<PluricanonicalForm>& forms,
                                      const std::vector<Rational>& v, int64_t depth) {
  const SparsePolynomial q = combine(forms, v);
  return pseudonorm(curve, PluricanonicalForm{forms[0].m, q}, depth);
}

LinearCombinationReport linear_combination_pseudonorm(const HyperellipticCurve& curve,
                                                      const std::vector<PluricanonicalForm>& forms,
                                                      const std::vector<Rational>& v, int64_t depth) {
  LinearCombinationReport out;
  const SparsePolynomial q = combine(forms, v);
  const PluricanonicalForm& eta0 = forms[0];
  if (zero_form(eta0)) throw DomainError("eta_0 must not vanish identically");
  for (const auto& f : forms) {
    const auto check = validate_form(curve, f);
    if (!check.regular) throw DomainError("form is not regular: " + check.reason);
  }
  out.direct = pseudonorm(curve, PluricanonicalForm{eta0.m, q}, depth);
  if (q.is_zero()) {
    out.factored = exact_zero(curve.prime(), depth);
    out.agree = true;
    return out;
  }
  const Rational inv_m(1, eta0.m);
  auto charts = build_charts(curve, eta0, 0);
  // Finite chart: ratio q / P_0 in x.
  charts[0].integrand.add_factor(q, inv_m);
  charts[0].integrand.add_factor(eta0.numerator, -inv_m);
  // Chart at infinity: q(1/u) / P_0(1/u) = rev_d(q) / rev_d(P_0).
  const int d = std::max(q.degree(), eta0.numerator.degree());
  charts[1].integrand.add_factor(reverse(q, d), inv_m);
  charts[1].integrand.add_factor(reverse(eta0.numerator, d), -inv_m);
  std::optional<IntegralResult> total;
  for (const auto& chart : charts) {
    auto r = integrate(chart.integrand, chart.domain, depth);
    total = total ? *total + r : r;
  }
  out.factored = *total;
  out.agree = intersects(out.direct, out.factored);
  return out;
}

HyperellipticCurve pullback_curve(const HyperellipticCurve& curve, const AffineSubstitution& s) {
  if (s.a == 0) throw DomainError("substitution needs a != 0");
  SparsePolynomial lin(1);
  lin.add_term({1}, s.a);
  lin.add_term({0}, s.b);
  const SparsePolynomial subs[] = {lin};
  return HyperellipticCurve(curve.context(), curve.h().compose(subs));
}

PluricanonicalForm pullback_form(const PluricanonicalForm& form, const AffineSubstitution& s) {
  if (s.a == 0) throw DomainError("substitution needs a != 0");
  SparsePolynomial lin(1);
  lin.add_term({1}, s.a);
  lin.add_term({0}, s.b);
  const SparsePolynomial subs[] = {lin};
  return PluricanonicalForm{form.m, form.numerator.compose(subs) * rpow(s.a, static_cast<uint64_t>(form.m))};
}

PullbackReport pullback_isometry_check(const HyperellipticCurve& curve, const PluricanonicalForm& form,
                                       const AffineSubstitution& s, int64_t depth) {
  PullbackReport out;
  const HyperellipticCurve other = pullback_curve(curve, s);
  out.original = pseudonorm(curve, form, depth);
  out.pulled_back = pseudonorm(other, pullback_form(form, s), depth);
  out.intersect = intersects(out.original, out.pulled_back);
  out.exact_equal = same_enclosure(out.original, out.pulled_back);
  return out;
}

}  // namespace padiclab
