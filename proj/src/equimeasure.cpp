#include "padiclab/equimeasure.hpp"

#include <algorithm>
#include <limits>

namespace padiclab {

namespace {

constexpr int64_t kNone = std::numeric_limits<int64_t>::max();

int64_t val(const Rational& x, int64_t p) {
  const auto v = valuation(x, p);
  return v ? *v : kNone;
}

// Integer-coefficient numerators and a shared denominator polynomial for one chart.
struct ChartMap {
  std::vector<SparsePolynomial> num;
  SparsePolynomial den{1};
};

ChartMap clear_denominators(std::vector<SparsePolynomial> num, SparsePolynomial den) {
  Integer l = 1;
  auto absorb = [&l](const SparsePolynomial& f) {
    for (const auto& [e, c] : f.terms()) l = lcm(l, Integer(c.get_den()));
  };
  for (const auto& f : num) absorb(f);
  absorb(den);
  for (auto& f : num) f *= Rational(l);
  den *= Rational(l);
  return {std::move(num), std::move(den)};
}

bool branch_zero(const SparsePolynomial& b, const Coset& c, int64_t p) {
  const Rational bv = b.evaluate(std::span<const Integer>(c.center));
  const int64_t v = val(bv, p);
  if (v >= c.level) return false;
  if (v % 2 != 0) return true;
  const Integer u = strip(Integer(bv.get_num()), p) * strip(Integer(bv.get_den()), p);
  return legendre(u, p) != 1;
}

class Pusher {
 public:
  Pusher(const Integrand& integrand, ChartMap map, StepMeasure& out, int64_t cap)
      : integrand_(integrand), map_(std::move(map)), out_(out), cap_(cap), p_(out.prime()) {}

  void run(const Coset& root) {
    std::vector<Coset> stack{root};
    while (!stack.empty()) {
      Coset c = std::move(stack.back());
      stack.pop_back();
      ++out_.source_cosets;
      visit(c, stack);
    }
  }

 private:
  IntegralResult mass(const Coset& c) const {
    const Coset region[] = {c};
    return integrate(integrand_, region, std::max(c.level, cap_) + 2);
  }

  void add_mass(const Coset& c, const StepMeasure::Key* key) {
    const IntegralResult r = mass(c);
    if (key) {
      out_.add_assigned(*key, r.lower);
    } else {
      out_.add_outside(r.lower);
    }
    if (!r.exact()) out_.add_undetermined(r.upper ? std::optional(*r.upper - r.lower) : std::nullopt);
  }

  void visit(const Coset& c, std::vector<Coset>& stack) {
    const int64_t t = c.level;
    if (integrand_.branch_polynomial() && branch_zero(*integrand_.branch_polynomial(), c, p_)) return;
    const std::span<const Integer> at(c.center);
    const Rational dval = map_.den.evaluate(at);
    const int64_t dv = val(dval, p_);
    const int64_t a = out_.window();
    const int64_t d = out_.depth();
    std::vector<Rational> values;
    bool outside = false;
    for (const auto& f : map_.num) {
      const Rational nval = f.evaluate(at);
      const int64_t nv = val(nval, p_);
      if (nv < t && nv - std::min(dv, t) < -a) outside = true;
      if (dv < t) values.push_back(nval / dval);
    }
    if (outside) {
      add_mass(c, nullptr);
      return;
    }
    if (dv < t && t - 2 * dv >= d) {
      StepMeasure::Key key;
      key.reserve(values.size());
      for (const auto& f : values) {
        key.push_back(residue(f * rpow(p_, a), p_, static_cast<uint64_t>(a + d)));
      }
      add_mass(c, &key);
      return;
    }
    if (t >= cap_) {
      const IntegralResult r = mass(c);
      out_.add_undetermined(r.upper);
      return;
    }
    const Integer step = ipow(p_, static_cast<uint64_t>(t));
    for (int64_t j = p_ - 1; j >= 0; --j) {
      stack.push_back(Coset{t + 1, {c.center[0] + j * step}});
    }
  }

  const Integrand& integrand_;
  ChartMap map_;
  StepMeasure& out_;
  int64_t cap_;
  int64_t p_;
};

}  // namespace

bool MassEnclosure::intersects(const MassEnclosure& o) const {
  if (upper && *upper < o.lower) return false;
  if (o.upper && *o.upper < lower) return false;
  return true;
}

void validate_setup(const CurveSetup& setup) {
  if (setup.forms.empty()) throw DomainError("setup needs at least eta_0");
  if (setup.forms[0].numerator.is_zero()) throw DomainError("eta_0 must not vanish identically");
  for (const auto& f : setup.forms) {
    if (f.m != setup.forms[0].m) throw DomainError("forms must share the tensor power m");
    const auto check = validate_form(setup.curve, f);
    if (!check.regular) throw DomainError("form is not regular: " + check.reason);
  }
}

StepMeasure::StepMeasure(int64_t p, size_t dim, int64_t depth, int64_t window)
    : p_(p), dim_(dim), depth_(depth), window_(window), outside_(p), undetermined_(RadicalValue(p)) {
  if (depth < 0) throw DomainError("target depth must be non-negative");
  if (window < 0) throw DomainError("window must be non-negative");
}

MassEnclosure StepMeasure::enclosure(const Key& k) const {
  const auto it = assigned_.find(k);
  const RadicalValue lo = it == assigned_.end() ? RadicalValue(p_) : it->second;
  return {lo, undetermined_ ? std::optional(lo + *undetermined_) : std::nullopt};
}

MassEnclosure StepMeasure::overflow() const {
  return {outside_, undetermined_ ? std::optional(outside_ + *undetermined_) : std::nullopt};
}

MassEnclosure StepMeasure::total() const {
  RadicalValue s = outside_;
  for (const auto& [k, m] : assigned_) s += m;
  return {s, undetermined_ ? std::optional(s + *undetermined_) : std::nullopt};
}

std::vector<Rational> StepMeasure::center(const Key& k) const {
  std::vector<Rational> out;
  for (const auto& x : k) out.push_back(Rational(x) * rpow(p_, -window_));
  return out;
}

void StepMeasure::add_assigned(const Key& k, const RadicalValue& mass) {
  if (k.size() != dim_) throw DomainError("key has the wrong dimension");
  if (mass.is_zero()) return;
  auto [it, fresh] = assigned_.try_emplace(k, mass);
  if (!fresh) it->second += mass;
}

void StepMeasure::add_outside(const RadicalValue& mass) { outside_ += mass; }

void StepMeasure::add_undetermined(const std::optional<RadicalValue>& mass) {
  if (!mass) {
    undetermined_.reset();
  } else if (undetermined_) {
    *undetermined_ += *mass;
  }
}

StepMeasure pushforward(const CurveSetup& setup, int64_t depth, int64_t window,
                        const PushforwardOptions& options) {
  validate_setup(setup);
  const int64_t p = setup.curve.prime();
  const size_t n = setup.forms.size() - 1;
  StepMeasure out(p, n, depth, window);
  const int64_t cap = options.source_depth.value_or(depth + 2 * window + 2);
  if (cap < 1) throw DomainError("source depth must be positive");

  const auto charts = build_charts(setup.curve, setup.forms[0], 0);
  int dmax = 0;
  for (const auto& f : setup.forms) dmax = std::max(dmax, f.numerator.degree());

  for (const auto& chart : charts) {
    std::vector<SparsePolynomial> num;
    SparsePolynomial den(1);
    if (chart.name == "finite") {
      for (size_t i = 1; i <= n; ++i) num.push_back(setup.forms[i].numerator);
      den = setup.forms[0].numerator;
    } else {
      for (size_t i = 1; i <= n; ++i) {
        const auto& f = setup.forms[i].numerator;
        num.push_back(f.is_zero() ? f : reverse(f, dmax));
      }
      den = reverse(setup.forms[0].numerator, dmax);
    }
    Pusher pusher(chart.integrand, clear_denominators(std::move(num), std::move(den)), out, cap);
    for (const auto& c : chart.domain) pusher.run(c);
  }
  return out;
}

bool IsometryReport::consistent() const {
  return std::all_of(samples.begin(), samples.end(), [](const IsometrySample& s) { return s.intersect; });
}

size_t IsometryReport::disjoint_count() const {
  return static_cast<size_t>(
      std::count_if(samples.begin(), samples.end(), [](const IsometrySample& s) { return !s.intersect; }));
}

std::vector<std::vector<Rational>> isometry_grid(int64_t p, size_t n, int64_t m) {
  if (m < 0) throw DomainError("grid exponent must be non-negative");
  const int64_t per = ipow(p, static_cast<uint64_t>(2 * m)).get_si();
  const Rational scale = rpow(p, -m);
  std::vector<std::vector<Rational>> out;
  std::vector<int64_t> idx(n, 0);
  while (true) {
    std::vector<Rational> v;
    for (auto j : idx) v.push_back(Rational(j) * scale);
    out.push_back(std::move(v));
    size_t i = 0;
    while (i < n && ++idx[i] == per) idx[i++] = 0;
    if (i == n) break;
  }
  return out;
}

IsometryReport isometry_scan(const CurveSetup& left, const CurveSetup& right,
                             const std::vector<std::vector<Rational>>& v_samples, int64_t depth) {
  validate_setup(left);
  validate_setup(right);
  if (left.forms.size() != right.forms.size()) throw DomainError("setups must share N");
  if (left.forms[0].m != right.forms[0].m) throw DomainError("setups must share m");
  if (left.curve.prime() != right.curve.prime()) throw DomainError("setups must share p");
  IsometryReport out;
  for (const auto& v : v_samples) {
    const auto l = linear_combination_pseudonorm(left.curve, left.forms, v, depth);
    const auto r = linear_combination_pseudonorm(right.curve, right.forms, v, depth);
    out.routes_agree = out.routes_agree && l.agree && r.agree;
    IsometrySample s{v, l.direct, r.direct, intersects(l.direct, r.direct),
                     same_enclosure(l.direct, r.direct) && l.direct.exact()};
    out.samples.push_back(std::move(s));
  }
  return out;
}

CompareReport equimeasurable_compare(const StepMeasure& a, const StepMeasure& b) {
  if (a.prime() != b.prime() || a.dim() != b.dim() || a.depth() != b.depth() || a.window() != b.window()) {
    throw DomainError("step measures have different resolution");
  }
  CompareReport out;
  out.gap = RadicalValue(a.prime());
  out.max_difference = RadicalValue(a.prime());
  // Returns the certified separation of two disjoint enclosures, zero otherwise.
  auto separation = [&out](const MassEnclosure& x, const MassEnclosure& y) {
    if (x.upper && y.upper) {
      const RadicalValue d = max(*x.upper - y.lower, *y.upper - x.lower);
      if (out.max_difference) out.max_difference = max(*out.max_difference, d);
    } else {
      out.max_difference.reset();
    }
    if (x.intersects(y)) return RadicalValue(x.lower.prime());
    return x.upper && *x.upper < y.lower ? y.lower - *x.upper : x.lower - *y.upper;
  };
  std::vector<StepMeasure::Key> keys;
  for (const auto& [k, m] : a.assigned()) keys.push_back(k);
  for (const auto& [k, m] : b.assigned()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (const auto& k : keys) {
    const RadicalValue g = separation(a.enclosure(k), b.enclosure(k));
    if (g > out.gap) {
      out.gap = g;
      out.witness = k;
    }
  }
  const RadicalValue g = separation(a.overflow(), b.overflow());
  if (g > out.gap) {
    out.gap = g;
    out.witness.reset();
    out.overflow_witness = true;
  }
  out.equal = out.gap.is_zero();
  return out;
}

}  // namespace padiclab
