#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace padiclab::oracle {

namespace {

Integer int_pow(const Integer& b, uint64_t e) {
  Integer r = 1;
  for (uint64_t i = 0; i < e; ++i) r *= b;
  return r;
}

RadicalValue p_power(int64_t p, const Rational& e) { return RadicalValue::prime_power(p, e); }

Integer eval_at(const SparsePolynomial& f, const std::vector<Integer>& x) {
  Integer acc = 0;
  for (const auto& [exps, c] : f.terms()) {
    Integer t = c.get_num();
    for (size_t i = 0; i < exps.size(); ++i) t *= int_pow(x[i], exps[i]);
    acc += t;
  }
  return acc;
}

int64_t eval_mod(const HomogeneousPoly& f, const std::vector<int64_t>& x, int64_t p) {
  int64_t acc = 0;
  for (const auto& [exps, c] : f.terms) {
    int64_t t = static_cast<int64_t>(c) % p;
    for (size_t i = 0; i < exps.size(); ++i) {
      for (uint32_t e = 0; e < exps[i]; ++e) t = t * x[i] % p;
    }
    acc = (acc + t) % p;
  }
  return acc;
}

// Calls visit on one representative per projective point of P^{n-1}(F_p).
template <class Visit>
void projective_points(size_t n, int64_t p, Visit&& visit) {
  std::vector<int64_t> x(n);
  for (size_t lead = 0; lead < n; ++lead) {
    std::fill(x.begin(), x.end(), 0);
    x[lead] = 1;
    const size_t free = n - lead - 1;
    uint64_t total = 1;
    for (size_t i = 0; i < free; ++i) total *= static_cast<uint64_t>(p);
    for (uint64_t idx = 0; idx < total; ++idx) {
      uint64_t rem = idx;
      for (size_t i = lead + 1; i < n; ++i) {
        x[i] = static_cast<int64_t>(rem % static_cast<uint64_t>(p));
        rem /= static_cast<uint64_t>(p);
      }
      visit(x);
    }
  }
}

}  // namespace

int64_t val(const Integer& n, int64_t p) {
  if (n == 0) throw DomainError("valuation of zero");
  Integer m = abs(n);
  int64_t v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int64_t val(const Rational& x, int64_t p) { return val(Integer(x.get_num()), p) - val(Integer(x.get_den()), p); }

RadicalValue abs_power_integral(int64_t p, const Rational& r) {
  const RadicalValue one(p, Rational(1));
  return RadicalValue(p, 1 - Rational(1, p)) / (one - p_power(p, -(r + 1)));
}

Enclosure residue_enumeration(int64_t p, size_t n, int64_t depth, const std::vector<Term>& terms) {
  const Integer modulus = int_pow(Integer(p), static_cast<uint64_t>(depth));
  const auto count = modulus.get_ui();
  uint64_t total = 1;
  for (size_t i = 0; i < n; ++i) total *= count;
  // Exponent of p -> multiplicity, for exactly known and capped classes.
  std::map<Rational, Integer> exact, capped;
  bool unbounded = false;
  std::vector<Integer> a(n);
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t rem = idx;
    for (size_t i = 0; i < n; ++i) {
      a[i] = static_cast<unsigned long>(rem % count);
      rem /= count;
    }
    Rational e = -Rational(depth * static_cast<int64_t>(n));
    bool resolved = true;
    for (const auto& t : terms) {
      const Integer value = eval_at(t.poly, a);
      const int64_t v = value == 0 ? depth : std::min(val(value, p), depth);
      if (v < depth) {
        e -= v * t.exponent;
        continue;
      }
      resolved = false;
      if (t.exponent < 0) unbounded = true;
      e -= depth * t.exponent;
    }
    (resolved ? exact : capped)[e] += 1;
  }
  Enclosure out{RadicalValue(p), std::nullopt};
  for (const auto& [e, m] : exact) out.lower += p_power(p, e) * RadicalValue(p, Rational(m));
  if (!unbounded) {
    RadicalValue up = out.lower;
    for (const auto& [e, m] : capped) up += p_power(p, e) * RadicalValue(p, Rational(m));
    out.upper = up;
  }
  return out;
}

Rational frac(const Rational& x, int64_t p) {
  if (x == 0) return 0;
  Integer den = x.get_den();
  int64_t k = 0;
  while (den % p == 0) {
    den /= p;
    ++k;
  }
  if (k == 0) return 0;
  // Digits of y = num / den in Z_p, y mod p^k.
  int64_t den_inv = 1;
  const int64_t dm = Integer(den % p).get_si();
  while ((den_inv * (dm < 0 ? dm + p : dm)) % p != 1) ++den_inv;
  Integer rem = x.get_num();
  Integer y = 0, place = 1;
  for (int64_t i = 0; i < k; ++i) {
    Integer d = (rem * den_inv) % p;
    if (d < 0) d += p;
    y += d * place;
    place *= p;
    rem = (rem - d * den) / p;
  }
  Rational out(y, place);
  out.canonicalize();
  return out;
}

PhaseSum indicator_transform(int64_t p, const Rational& c, int64_t k, const Rational& tau) {
  PhaseSum out(p);
  if (tau != 0 && val(tau, p) < -k) return out;
  out.add(frac(-c * tau, p), p_power(p, Rational(-k)));
  return out;
}

RadicalValue witness_value(int64_t p, const Rational& r, const std::vector<std::pair<RadicalValue, Rational>>& terms,
                           const Rational& s) {
  RadicalValue acc(p);
  for (const auto& [a, c] : terms) {
    const Rational x = 1 + c * s;
    if (x == 0) continue;
    acc += a * p_power(p, -r * val(x, p));
  }
  return acc;
}

std::complex<long double> witness_transform(int64_t p, const Rational& r,
                                            const std::vector<std::pair<RadicalValue, Rational>>& terms,
                                            int64_t radius, int64_t level, const Rational& tau) {
  const long double pl = static_cast<long double>(p);
  const long double rr = static_cast<long double>(to_double(r));
  // Average of |y|^r over Z_p: sum_k (1 - 1/p) p^-k p^-kr.
  long double avg = 0;
  for (int k = 0; k < 400; ++k) avg += (1 - 1 / pl) * std::pow(pl, -static_cast<long double>(k) * (1 + rr));
  const Integer grid = int_pow(Integer(p), static_cast<uint64_t>(level + radius));
  const Rational step(1, int_pow(Integer(p), static_cast<uint64_t>(radius)));
  const long double mass = std::pow(pl, -static_cast<long double>(level));
  std::complex<long double> acc = 0;
  for (Integer j = 0; j < grid; ++j) {
    const Rational s = Rational(j) * step;
    long double f = 0;
    for (const auto& [a, c] : terms) {
      const Rational x = 1 + c * s;
      const int64_t vc = val(c, p);
      const long double coeff = a.to_long_double();
      if (x != 0 && val(x, p) < level + vc) {
        f += coeff * std::pow(pl, -rr * static_cast<long double>(val(x, p)));
      } else {
        // 1 + c s' = c (s' + 1/c) runs over p^(level + vc) Z_p.
        f += coeff * std::pow(pl, -rr * static_cast<long double>(level + vc)) * avg;
      }
    }
    const long double phase = 2 * std::numbers::pi_v<long double> * to_double(frac(-s * tau, p));
    acc += mass * f * std::complex<long double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

uint64_t projective_count(const HomogeneousPoly& f, int64_t p) {
  uint64_t n = 0;
  projective_points(f.nvars, p, [&](const std::vector<int64_t>& x) {
    if (eval_mod(f, x, p) == 0) ++n;
  });
  return n;
}

uint64_t projective_count_on_hyperplane(const HomogeneousPoly& f, const std::vector<uint32_t>& a, int64_t p) {
  uint64_t n = 0;
  projective_points(f.nvars, p, [&](const std::vector<int64_t>& x) {
    int64_t h = 0;
    for (size_t i = 0; i < x.size(); ++i) h = (h + static_cast<int64_t>(a[i]) * x[i]) % p;
    if (h == 0 && eval_mod(f, x, p) == 0) ++n;
  });
  return n;
}

bool hasse_weil(const Integer& n, const Integer& g, const Integer& q) {
  const Integer bound = sqrt(Integer(4 * g * g * q));
  return abs(Integer(1 + q - n)) <= bound;
}

Integer theorem_bound(int64_t n, const Integer& hn, const Integer& khn1) {
  const Integer a = hn * int_pow(hn - 1, static_cast<uint64_t>(n));
  const Integer s = khn1 + (n - 1) * hn + 2;
  const Integer b = s * s;
  return a > b ? a : b;
}

Integer surface_bound(const Integer& ksq) {
  const Integer a = 25 * ksq * (25 * ksq - 1) * (25 * ksq - 1);
  const Integer b = (30 * ksq + 2) * (30 * ksq + 2);
  return a > b ? a : b;
}

Integer ci_bound(const std::vector<Integer>& d) {
  Integer s = 2, prod = 1;
  for (const auto& x : d) {
    s += x - 1;
    prod *= x;
  }
  return 2 * s * s * prod * prod;
}

}  // namespace padiclab::oracle
