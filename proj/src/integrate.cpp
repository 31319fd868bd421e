#include "padiclab/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace padiclab {

namespace {

constexpr int64_t kInfinite = std::numeric_limits<int64_t>::max();

int64_t remove_p(Integer& n, const Integer& p) {
  return static_cast<int64_t>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

// F = N(x) / L with integer coefficients in N and p not dividing L.
class PolyEval {
 public:
  PolyEval(const SparsePolynomial& f, int64_t p) : p_(p) {
    Integer l = 1;
    for (const auto& [e, c] : f.terms()) l = lcm(l, Integer(c.get_den()));
    if (mpz_divisible_ui_p(l.get_mpz_t(), static_cast<unsigned long>(p))) {
      throw DomainError("polynomial is not p-integral: " + f.to_string());
    }
    den_ = l;
    for (const auto& [e, c] : f.terms()) {
      terms_.emplace_back(Integer(c * Rational(l)), e);
      for (size_t i = 0; i < e.size(); ++i) max_deg_ = std::max(max_deg_, e[i]);
    }
  }

  uint32_t max_degree() const { return max_deg_; }

  Integer numerator(const std::vector<std::vector<Integer>>& powers) const {
    Integer acc = 0, t;
    for (const auto& [c, e] : terms_) {
      t = c;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0) t *= powers[i][e[i]];
      }
      acc += t;
    }
    return acc;
  }

  struct Value {
    int64_t v = kInfinite;
    int legendre = 0;  // Legendre symbol of the unit part; 0 when v infinite
  };

  Value value(const std::vector<std::vector<Integer>>& powers) const {
    Integer n = numerator(powers);
    Value out;
    if (n == 0) return out;
    const Integer pp = p_;
    out.v = remove_p(n, pp);
    out.legendre = mpz_legendre(Integer(n * den_).get_mpz_t(), pp.get_mpz_t());
    return out;
  }

 private:
  int64_t p_;
  Integer den_ = 1;
  uint32_t max_deg_ = 0;
  std::vector<std::pair<Integer, SparsePolynomial::Exponents>> terms_;
};

std::vector<std::vector<Integer>> power_table(const std::vector<Integer>& center, uint32_t max_deg) {
  std::vector<std::vector<Integer>> pw(center.size());
  for (size_t i = 0; i < center.size(); ++i) {
    pw[i].resize(max_deg + 1);
    pw[i][0] = 1;
    for (uint32_t k = 1; k <= max_deg; ++k) pw[i][k] = pw[i][k - 1] * center[i];
  }
  return pw;
}

// Sum of count * p^E, kept symbolic until the end.
class PowerSum {
 public:
  void add(const Rational& e, const Integer& count) { terms_[e] += count; }
  RadicalValue value(int64_t p) const {
    RadicalValue acc(p);
    for (const auto& [e, c] : terms_) {
      if (c != 0) acc += RadicalValue::prime_power(p, e) * RadicalValue(p, Rational(c));
    }
    return acc;
  }
  bool empty() const { return terms_.empty(); }

 private:
  std::map<Rational, Integer> terms_;
};

enum class Kind { Constant, Root, Unknown };

struct Classified {
  Kind kind = Kind::Unknown;
  int64_t v = 0;      // valuation of F on the coset when Constant
  int64_t delta = 0;  // v_p(F'(root)) when Root
  int legendre = 0;
};

// Univariate classification on a cap coset a + p^D Z_p.
//   Constant: |F| and the square class of F are constant on the coset.
//   Root: the coset holds exactly one root alpha of F, simple, with
//         v(F(x)) = delta + v(x - alpha) throughout.
Classified classify(const PolyEval& f, const PolyEval& df, const Integer& a, int64_t depth) {
  const auto pw_f = power_table({a}, std::max(f.max_degree(), df.max_degree()));
  const auto fv = f.value(pw_f);
  Classified c;
  if (fv.v < depth) {
    c.kind = Kind::Constant;
    c.v = fv.v;
    c.legendre = fv.legendre;
    return c;
  }
  const auto dv = df.value(pw_f);
  if (dv.v >= depth) return c;  // Unknown
  if (fv.v < depth + dv.v) {
    // F(x) - F(a) has valuation >= depth + delta > v(F(a)).
    c.kind = Kind::Constant;
    c.v = fv.v;
    c.legendre = fv.legendre;
    return c;
  }
  c.kind = Kind::Root;
  c.delta = dv.v;
  return c;
}

SparsePolynomial integral_unit_content(const SparsePolynomial& f, int64_t p) {
  const auto c = f.content_valuation(p);
  if (!c) return f;
  return f * rpow(p, -*c);
}

struct PreparedFactor {
  PolyEval eval;
  std::optional<PolyEval> deriv;
  Rational exponent;
  const SparsePolynomial* poly;
};

}  // namespace

Rational Coset::mass(int64_t p) const {
  return rpow(p, -level * static_cast<int64_t>(center.size()));
}

bool Coset::contains(const Coset& other, int64_t p) const {
  if (other.dim() != dim() || other.level < level) return false;
  const Integer mod = ipow(p, static_cast<uint64_t>(level));
  for (size_t i = 0; i < dim(); ++i) {
    Integer d = other.center[i] - center[i];
    if (d % mod != 0) return false;
  }
  return true;
}

void validate_coset(const Coset& c, int64_t p) {
  if (c.level < 0) throw DomainError("coset level must be non-negative");
  const Integer mod = ipow(p, static_cast<uint64_t>(c.level));
  for (const auto& x : c.center) {
    if (x < 0 || x >= mod) throw DomainError("coset center not reduced mod p^level");
  }
}

bool disjoint(const Coset& a, const Coset& b, int64_t p) {
  return !(a.level <= b.level ? a.contains(b, p) : b.contains(a, p));
}

Integrand::Integrand(int64_t p, size_t nvars) : p_(p), nvars_(nvars), constant_(p, Rational(1)) {}

void Integrand::add_factor(const SparsePolynomial& poly, const Rational& exponent) {
  if (poly.nvars() != nvars_) throw DomainError("factor has the wrong number of variables");
  if (poly.is_zero()) throw DomainError("factor polynomial is identically zero");
  if (exponent == 0) return;
  if (mpz_divisible_ui_p(exponent.get_den_mpz_t(), static_cast<unsigned long>(p_))) {
    throw DomainError("unsupported exponent " + exponent.get_str() + ": denominator divisible by p");
  }
  const int64_t c = *poly.content_valuation(p_);
  constant_ *= RadicalValue::prime_power(p_, Rational(-c) * exponent);
  SparsePolynomial normalized = poly * rpow(p_, -c);
  if (normalized.degree() == 0) return;  // |unit constant| = 1
  factors_.push_back(Factor{std::move(normalized), exponent});
}

void Integrand::scale(const RadicalValue& c) {
  if (c.sign() <= 0) throw DomainError("integrand constant must stay positive");
  constant_ *= c;
}

void Integrand::set_branch_polynomial(const SparsePolynomial& b) {
  if (nvars_ != 1 || b.nvars() != 1) throw DomainError("branch polynomial must be univariate");
  if (b.is_zero()) throw DomainError("branch polynomial is identically zero");
  const int64_t c = *b.content_valuation(p_);
  branch_ = b * rpow(p_, -2 * floor_div(c, 2));
}

bool Integrand::has_negative_exponent() const {
  return std::any_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.exponent < 0; });
}

Rational Integrand::exponent_sum() const {
  Rational s = 0;
  for (const auto& f : factors_) s += f.exponent;
  return s;
}

Integrand Integrand::compose(std::span<const SparsePolynomial> subs) const {
  const size_t out_vars = subs.empty() ? nvars_ : subs[0].nvars();
  Integrand r(p_, out_vars);
  r.constant_ = constant_;
  for (const auto& f : factors_) r.add_factor(f.poly.compose(subs), f.exponent);
  if (branch_) r.set_branch_polynomial(branch_->compose(subs));
  return r;
}

std::string Integrand::describe() const {
  std::ostringstream out;
  out << constant_.to_string();
  for (const auto& f : factors_) out << " * |" << f.poly.to_string() << "|^(" << f.exponent.get_str() << ")";
  if (branch_) out << " * #sqrt(" << branch_->to_string() << ")";
  return out.str();
}

bool IntegralResult::contains(const RadicalValue& x) const {
  if (x < lower) return false;
  return !upper || x <= *upper;
}

RadicalValue IntegralResult::width() const {
  if (!upper) throw DomainError("width of an unbounded enclosure");
  return *upper - lower;
}

bool intersects(const IntegralResult& a, const IntegralResult& b) {
  if (a.upper && *a.upper < b.lower) return false;
  if (b.upper && *b.upper < a.lower) return false;
  return true;
}

bool same_enclosure(const IntegralResult& a, const IntegralResult& b) {
  if (!(a.lower == b.lower)) return false;
  if (a.upper.has_value() != b.upper.has_value()) return false;
  return !a.upper || *a.upper == *b.upper;
}

IntegralResult operator+(const IntegralResult& a, const IntegralResult& b) {
  IntegralResult r;
  r.lower = a.lower + b.lower;
  if (a.upper && b.upper) r.upper = *a.upper + *b.upper;
  r.resolved_sum = a.resolved_sum + b.resolved_sum;
  r.unresolved_mass = a.unresolved_mass + b.unresolved_mass;
  r.depth = std::max(a.depth, b.depth);
  r.resolved_cosets = a.resolved_cosets + b.resolved_cosets;
  r.tail_cosets = a.tail_cosets + b.tail_cosets;
  r.capped_cosets = a.capped_cosets + b.capped_cosets;
  return r;
}

IntegralResult integrate(const Integrand& integrand, std::span<const Coset> region, int64_t depth,
                         const IntegrateOptions& options) {
  const int64_t p = integrand.prime();
  const size_t n = integrand.nvars();
  for (size_t i = 0; i < region.size(); ++i) {
    if (region[i].dim() != n) throw DomainError("region coset has the wrong dimension");
    validate_coset(region[i], p);
    if (region[i].level > depth) throw DomainError("depth is below a region coset level");
    for (size_t j = 0; j < i; ++j) {
      if (!disjoint(region[i], region[j], p)) throw DomainError("region cosets overlap");
    }
  }
  const bool tails = options.exact_tails.value_or(integrand.has_negative_exponent());

  std::vector<PreparedFactor> factors;
  uint32_t max_deg = 0;
  for (const auto& f : integrand.factors()) {
    PreparedFactor pf{PolyEval(f.poly, p), std::nullopt, f.exponent, &f.poly};
    if (n == 1) pf.deriv.emplace(f.poly.derivative(0), p);
    max_deg = std::max(max_deg, pf.eval.max_degree());
    factors.push_back(std::move(pf));
  }
  std::optional<PolyEval> branch, branch_deriv;
  if (integrand.branch_polynomial()) {
    branch.emplace(*integrand.branch_polynomial(), p);
    branch_deriv.emplace(integrand.branch_polynomial()->derivative(0), p);
    max_deg = std::max(max_deg, branch->max_degree());
  }

  IntegralResult result;
  result.depth = depth;
  result.lower = RadicalValue(p);
  result.resolved_sum = RadicalValue(p);
  PowerSum resolved, capped;
  RadicalValue tail_sum(p);
  bool unbounded = false;
  const Integer pz = p;
  const auto nn = static_cast<int64_t>(n);

  std::vector<Coset> stack(region.rbegin(), region.rend());
  std::vector<PolyEval::Value> vals(factors.size());
  while (!stack.empty()) {
    Coset c = std::move(stack.back());
    stack.pop_back();
    const auto pw = power_table(c.center, max_deg);
    bool all_resolved = true;
    for (size_t i = 0; i < factors.size(); ++i) {
      vals[i] = factors[i].eval.value(pw);
      if (vals[i].v >= c.level) all_resolved = false;
    }
    PolyEval::Value bval;
    if (branch) {
      bval = branch->value(pw);
      if (bval.v >= c.level) all_resolved = false;
    }
    if (all_resolved) {
      int weight = 1;
      if (branch) weight = (bval.v % 2 == 0 && bval.legendre == 1) ? 2 : 0;
      ++result.resolved_cosets;
      if (weight == 0) continue;
      Rational e = Rational(-c.level * nn);
      for (size_t i = 0; i < factors.size(); ++i) e -= Rational(vals[i].v) * factors[i].exponent;
      resolved.add(e, weight);
      continue;
    }
    if (c.level < depth) {
      const Integer step = ipow(p, static_cast<uint64_t>(c.level));
      const auto children = static_cast<int64_t>(std::pow(static_cast<double>(p), static_cast<double>(n)) + 0.5);
      for (int64_t idx = children - 1; idx >= 0; --idx) {
        Coset child{c.level + 1, c.center};
        int64_t rem = idx;
        for (size_t k = n; k-- > 0;) {
          child.center[k] += step * (rem % p);
          rem /= p;
        }
        stack.push_back(std::move(child));
      }
      continue;
    }

    // Cap coset at level == depth.
    ++result.capped_cosets;
    if (tails && n == 1) {
      const Integer& a = c.center[0];
      std::vector<Classified> cls(factors.size());
      bool unknown = false;
      std::vector<size_t> roots;
      for (size_t i = 0; i < factors.size(); ++i) {
        cls[i] = classify(factors[i].eval, *factors[i].deriv, a, depth);
        if (cls[i].kind == Kind::Unknown) unknown = true;
        if (cls[i].kind == Kind::Root) roots.push_back(i);
      }
      Classified bcls;
      if (branch) {
        bcls = classify(*branch, *branch_deriv, a, depth);
        if (bcls.kind == Kind::Unknown) unknown = true;
      }
      bool shared = !unknown;
      const size_t root_count = roots.size() + ((branch && bcls.kind == Kind::Root) ? 1 : 0);
      if (shared && root_count > 1) {
        SparsePolynomial g(1);
        bool first = true;
        for (size_t i : roots) {
          g = first ? *factors[i].poly : univariate_gcd(g, *factors[i].poly);
          first = false;
        }
        if (branch && bcls.kind == Kind::Root) {
          g = first ? *integrand.branch_polynomial() : univariate_gcd(g, *integrand.branch_polynomial());
        }
        if (g.degree() < 1) {
          shared = false;
        } else {
          const SparsePolynomial gn = integral_unit_content(g, p);
          shared = classify(PolyEval(gn, p), PolyEval(gn.derivative(0), p), a, depth).kind == Kind::Root;
        }
      }
      if (shared) {
        // Exact contribution: const * prod_const |F|^r * sum over strata v(x-alpha)=k >= depth.
        Rational base_e = 0;     // exponent contributed by constant factors and deltas
        Rational root_sum = 0;   // sum of exponents of root factors
        for (size_t i = 0; i < factors.size(); ++i) {
          if (cls[i].kind == Kind::Constant) {
            base_e -= Rational(cls[i].v) * factors[i].exponent;
          } else {
            base_e -= Rational(cls[i].delta) * factors[i].exponent;
            root_sum += factors[i].exponent;
          }
        }
        int weight = 1;
        bool parity = false;
        int64_t parity_delta = 0;
        if (branch) {
          if (bcls.kind == Kind::Constant) {
            weight = (bcls.v % 2 == 0 && bcls.legendre == 1) ? 2 : 0;
          } else {
            parity = true;  // weight 2 on half the units of even strata
            parity_delta = bcls.delta;
          }
        }
        ++result.tail_cosets;
        if (weight == 0) continue;
        if (root_count == 0) {
          const Rational e = base_e - Rational(depth);
          tail_sum += RadicalValue::prime_power(p, e) * RadicalValue(p, Rational(weight));
          continue;
        }
        const Rational s = 1 + root_sum;
        if (s <= 0) {
          unbounded = true;  // the integral genuinely diverges near the root
          continue;
        }
        const RadicalValue one(p, Rational(1));
        RadicalValue series(p);
        if (parity) {
          const int64_t k0 = ((depth - parity_delta) % 2 == 0) ? depth : depth + 1;
          series = RadicalValue::prime_power(p, -Rational(k0) * s) /
                   (one - RadicalValue::prime_power(p, -2 * s));
        } else {
          series = RadicalValue::prime_power(p, -Rational(depth) * s) /
                   (one - RadicalValue::prime_power(p, -s));
        }
        const Rational stratum_factor = 1 - Rational(1, p);
        tail_sum += RadicalValue::prime_power(p, base_e) * series *
                    RadicalValue(p, stratum_factor * weight);
        continue;
      }
    }
    // Bounded cap rule: only positive exponents may be unresolved.
    result.unresolved_mass += c.mass(p);
    Rational e = Rational(-depth * nn);
    for (size_t i = 0; i < factors.size(); ++i) {
      if (vals[i].v < c.level) {
        e -= Rational(vals[i].v) * factors[i].exponent;
      } else if (factors[i].exponent > 0) {
        e -= Rational(depth) * factors[i].exponent;
      } else {
        unbounded = true;
      }
    }
    int weight = 1;
    if (branch) weight = (bval.v < c.level) ? ((bval.v % 2 == 0 && bval.legendre == 1) ? 2 : 0) : 2;
    if (weight > 0) capped.add(e, weight);
  }

  const RadicalValue& k = integrand.constant();
  result.resolved_sum = k * resolved.value(p);
  result.lower = result.resolved_sum + k * tail_sum;
  if (!unbounded) result.upper = result.lower + k * capped.value(p);
  return result;
}

Rational zero_locus_mass(const SparsePolynomial& poly, int64_t p, int64_t depth) {
  if (poly.is_zero()) throw DomainError("zero_locus_mass: polynomial is identically zero");
  const SparsePolynomial f = integral_unit_content(poly, p);
  const PolyEval eval(f, p);
  const size_t n = f.nvars();
  Integer count = 0;
  std::vector<Coset> stack{Coset::whole(n)};
  while (!stack.empty()) {
    Coset c = std::move(stack.back());
    stack.pop_back();
    const auto v = eval.value(power_table(c.center, eval.max_degree())).v;
    if (v < c.level) continue;
    if (c.level == depth) {
      ++count;
      continue;
    }
    const Integer step = ipow(p, static_cast<uint64_t>(c.level));
    const auto children = static_cast<int64_t>(std::pow(static_cast<double>(p), static_cast<double>(n)) + 0.5);
    for (int64_t idx = 0; idx < children; ++idx) {
      Coset child{c.level + 1, c.center};
      int64_t rem = idx;
      for (size_t k = n; k-- > 0;) {
        child.center[k] += step * (rem % p);
        rem /= p;
      }
      stack.push_back(std::move(child));
    }
  }
  return Rational(count) * rpow(p, -depth * static_cast<int64_t>(n));
}

SparsePolynomial jacobian_determinant(std::span<const SparsePolynomial> map) {
  const size_t n = map.size();
  if (n == 0) throw DomainError("empty map");
  const size_t vars = map[0].nvars();
  if (vars != n) throw DomainError("map must send n variables to n coordinates");
  std::vector<std::vector<SparsePolynomial>> j(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < n; ++k) j[i].push_back(map[i].derivative(k));
  }
  // Leibniz expansion; n is small in practice.
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  SparsePolynomial det(vars);
  do {
    int sign = 1;
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = a + 1; b < n; ++b) {
        if (perm[a] > perm[b]) sign = -sign;
      }
    }
    SparsePolynomial term = SparsePolynomial::constant(vars, sign);
    for (size_t i = 0; i < n; ++i) term = term * j[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

namespace {

Integer mod_reduce(const Rational& x, int64_t p, int64_t level) { return residue(x, p, static_cast<uint64_t>(level)); }

std::vector<Coset> subdivide(const Coset& c, int64_t p, int64_t level) {
  std::vector<Coset> out{c};
  while (out.front().level < level) {
    std::vector<Coset> next;
    for (const auto& x : out) {
      const Integer step = ipow(p, static_cast<uint64_t>(x.level));
      const size_t n = x.dim();
      const auto children = static_cast<int64_t>(std::pow(static_cast<double>(p), static_cast<double>(n)) + 0.5);
      for (int64_t idx = 0; idx < children; ++idx) {
        Coset child{x.level + 1, x.center};
        int64_t rem = idx;
        for (size_t k = n; k-- > 0;) {
          child.center[k] += step * (rem % p);
          rem /= p;
        }
        next.push_back(std::move(child));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

ChangeOfVariablesReport change_of_variables_check(std::span<const SparsePolynomial> map,
                                                  const Coset& region, const Integrand& integrand,
                                                  int64_t depth) {
  const int64_t p = integrand.prime();
  const size_t n = map.size();
  if (n != integrand.nvars() || region.dim() != n) throw DomainError("map, region and integrand dimensions differ");
  for (const auto& f : map) {
    const auto cv = f.content_valuation(p);
    if (cv && *cv < 0) throw DomainError("map coordinates must have p-integral coefficients");
  }
  validate_coset(region, p);
  ChangeOfVariablesReport report;
  const SparsePolynomial det = jacobian_determinant(map);
  if (det.is_zero()) throw DomainError("Jacobian determinant vanishes identically");

  report.affine = std::all_of(map.begin(), map.end(), [](const SparsePolynomial& f) { return f.degree() <= 1; });
  int64_t image_shift = 0;  // image of a level-t coset is a level-(t + shift) coset
  if (report.affine) {
    // J = p^k U with U unimodular.
    int64_t k = std::numeric_limits<int64_t>::max();
    std::vector<std::vector<Rational>> jm(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        const auto d = map[i].derivative(j);
        jm[i][j] = d.is_zero() ? Rational(0) : d.terms().begin()->second;
        if (jm[i][j] != 0) k = std::min(k, *valuation(jm[i][j], p));
      }
    }
    const Rational dv = det.terms().begin()->second;
    if (*valuation(dv, p) != k * static_cast<int64_t>(n)) {
      throw DomainError("affine map is not a p-power times a unimodular matrix");
    }
    image_shift = k;
    report.unimodular = (k == 0);
  }

  const int64_t t = std::max<int64_t>(region.level, 1);
  if (t > depth) throw DomainError("depth too small for the change of variables region");
  const auto pieces = subdivide(region, p, t);
  const PolyEval det_eval(integral_unit_content(det, p), p);
  const auto det_c = *det.content_valuation(p);
  for (const auto& piece : pieces) {
    if (!report.affine) {
      const auto pw = power_table(piece.center, det_eval.max_degree());
      const int64_t v = det_eval.value(pw).v + det_c;
      if (v != 0) throw DomainError("Jacobian is not a unit on the region; cannot certify the image");
    }
    std::vector<Rational> pt(piece.center.begin(), piece.center.end());
    Coset img{piece.level + image_shift, {}};
    for (const auto& f : map) img.center.push_back(mod_reduce(f.evaluate(std::span<const Rational>(pt)), p, img.level));
    report.image.push_back(std::move(img));
  }
  for (size_t i = 0; i < report.image.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (!disjoint(report.image[i], report.image[j], p)) {
        throw DomainError("map is not injective on the region");
      }
    }
  }
  std::sort(report.image.begin(), report.image.end(), [](const Coset& a, const Coset& b) {
    return a.level != b.level ? a.level < b.level : a.center < b.center;
  });

  int64_t image_depth = depth;
  for (const auto& c : report.image) image_depth = std::max(image_depth, c.level);
  report.image_side = integrate(integrand, report.image, image_depth);

  Integrand pulled = integrand.compose(map);
  if (det.degree() == 0) {
    pulled.scale(RadicalValue::prime_power(p, Rational(-*valuation(det.terms().begin()->second, p))));
  } else {
    pulled.add_factor(det, 1);
  }
  const Coset whole_region = region;
  report.pullback_side = integrate(pulled, std::span<const Coset>(&whole_region, 1), depth);
  report.intersect = intersects(report.image_side, report.pullback_side);
  report.exact_equal = same_enclosure(report.image_side, report.pullback_side);
  return report;
}

}  // namespace padiclab
