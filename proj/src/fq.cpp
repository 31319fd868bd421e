#include "padiclab/fq.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace padiclab {

namespace {

constexpr int64_t kMaxTableSize = int64_t{1} << 21;

using Poly = std::vector<int64_t>;  // coefficients mod p, lowest first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, int64_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  const int64_t lead_inv = [&] {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), Integer(m.back()).get_mpz_t(), Integer(p).get_mpz_t());
    return inv.get_si();
  }();
  while (a.size() > dm) {
    const int64_t c = a.back() * lead_inv % p;
    const size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

bool divides_none(const Poly& f, int64_t p) {
  const int64_t e = static_cast<int64_t>(f.size()) - 1;
  for (int64_t d = 1; 2 * d <= e; ++d) {
    int64_t count = 1;
    for (int64_t i = 0; i < d; ++i) count *= p;
    for (int64_t k = 0; k < count; ++k) {
      Poly g(d + 1);
      int64_t x = k;
      for (int64_t i = 0; i < d; ++i) {
        g[i] = x % p;
        x /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<HomogeneousPoly::Exponents> monomials(size_t nvars, int degree) {
  std::vector<HomogeneousPoly::Exponents> out;
  if (degree < 0) return out;
  HomogeneousPoly::Exponents e(nvars, 0);
  // Enumerate compositions of degree into nvars parts.
  std::function<void(size_t, int)> rec = [&](size_t i, int left) {
    if (i + 1 == nvars) {
      e[i] = static_cast<uint32_t>(left);
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = static_cast<uint32_t>(k);
      rec(i + 1, left - k);
    }
  };
  if (nvars == 0) return out;
  rec(0, degree);
  return out;
}

// Rank of a dense matrix over F_q by Gaussian elimination.
size_t rank(std::vector<std::vector<FqField::Elem>> m, const FqField& k) {
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    const FqField::Elem inv = k.inv(m[r][c]);
    for (size_t j = c; j < cols; ++j) m[r][j] = k.mul(m[r][j], inv);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const FqField::Elem f = m[i][c];
      for (size_t j = c; j < cols; ++j) {
        if (m[r][j] != 0) m[i][j] = k.sub(m[i][j], k.mul(f, m[r][j]));
      }
    }
    ++r;
  }
  return r;
}

// Calls visit(x) for normalized representatives of P^{n-1}(F_q); stops when visit returns true.
template <class Visit>
bool for_each_projective_point(size_t n, const FqField& k, Visit&& visit) {
  std::vector<FqField::Elem> x(n, 0);
  const auto q = static_cast<FqField::Elem>(k.q());
  for (size_t lead = 0; lead < n; ++lead) {
    std::fill(x.begin(), x.end(), 0);
    x[lead] = 1;
    while (true) {
      if (visit(x)) return true;
      size_t i = n;
      bool carry = true;
      while (carry && i > lead + 1) {
        --i;
        if (++x[i] < q) {
          carry = false;
        } else {
          x[i] = 0;
        }
      }
      if (carry) break;
    }
  }
  return false;
}

class Evaluator {
 public:
  Evaluator(const HomogeneousPoly& f, const FqField& k) : k_(k), max_(0) {
    for (const auto& [e, c] : f.terms) {
      terms_.emplace_back(c, e);
      for (auto x : e) max_ = std::max(max_, x);
    }
    pw_.assign(f.nvars, std::vector<FqField::Elem>(max_ + 1, 0));
  }

  FqField::Elem operator()(const std::vector<FqField::Elem>& x) {
    for (size_t i = 0; i < x.size(); ++i) {
      pw_[i][0] = 1;
      for (uint32_t j = 1; j <= max_; ++j) pw_[i][j] = k_.mul(pw_[i][j - 1], x[i]);
    }
    FqField::Elem acc = 0;
    for (const auto& [c, e] : terms_) {
      FqField::Elem t = c;
      for (size_t i = 0; i < e.size() && t != 0; ++i) t = k_.mul(t, pw_[i][e[i]]);
      acc = k_.add(acc, t);
    }
    return acc;
  }

 private:
  const FqField& k_;
  uint32_t max_;
  std::vector<std::pair<FqField::Elem, HomogeneousPoly::Exponents>> terms_;
  std::vector<std::vector<FqField::Elem>> pw_;
};

std::optional<std::vector<FqField::Elem>> find_singular_point(const HomogeneousPoly& f, const FqField& k) {
  std::vector<Evaluator> evals;
  evals.emplace_back(f, k);
  for (size_t i = 0; i < f.nvars; ++i) evals.emplace_back(f.derivative(i, k), k);
  std::optional<std::vector<FqField::Elem>> hit;
  for_each_projective_point(f.nvars, k, [&](const std::vector<FqField::Elem>& x) {
    for (auto& ev : evals) {
      if (ev(x) != 0) return false;
    }
    hit = x;
    return true;
  });
  return hit;
}

uint64_t projective_size(int64_t q, size_t n, uint64_t cap) {
  // (q^n - 1)/(q - 1), saturating at cap + 1.
  uint64_t total = 0, pw = 1;
  for (size_t i = 0; i < n; ++i) {
    total += pw;
    if (total > cap) return cap + 1;
    if (pw > cap / static_cast<uint64_t>(q) + 1) pw = cap + 1;
    else pw *= static_cast<uint64_t>(q);
  }
  return total;
}

}  // namespace

std::vector<int64_t> first_irreducible(int64_t p, int64_t e) {
  if (e < 1) throw DomainError("extension degree must be positive");
  int64_t count = 1;
  for (int64_t i = 0; i < e; ++i) {
    if (count > kMaxTableSize) throw DomainError("field too large");
    count *= p;
  }
  for (int64_t k = 0; k < count; ++k) {
    Poly f(e + 1);
    int64_t x = k;
    for (int64_t i = 0; i < e; ++i) {
      f[i] = x % p;
      x /= p;
    }
    f[e] = 1;
    if (e == 1 || (f[0] != 0 && divides_none(f, p))) return f;
  }
  throw DomainError("no irreducible polynomial found");
}

FqField::FqField(int64_t p, int64_t e) : p_(p), e_(e), q_(1) {
  if (p < 2 || !is_prime(p)) throw DomainError("field characteristic must be prime");
  if (e < 1) throw DomainError("extension degree must be positive");
  for (int64_t i = 0; i < e; ++i) {
    q_ *= p;
    if (q_ > kMaxTableSize) throw DomainError("field too large for table arithmetic");
  }
  modulus_ = first_irreducible(p, e);
  log_.assign(static_cast<size_t>(q_), 0);
  exp_.assign(static_cast<size_t>(q_ - 1), 0);
  for (Elem g = (q_ == 2 ? 1 : 2); g < q_; ++g) {
    Elem x = 1;
    bool primitive = true;
    for (int64_t i = 0; i < q_ - 1; ++i) {
      if (i > 0 && x == 1) {
        primitive = false;
        break;
      }
      exp_[static_cast<size_t>(i)] = x;
      x = mul_slow(x, g);
    }
    if (!primitive) continue;
    for (int64_t i = 0; i < q_ - 1; ++i) log_[exp_[static_cast<size_t>(i)]] = static_cast<uint32_t>(i);
    return;
  }
  throw DomainError("no primitive element found");
}

FqField FqField::parse(const std::string& text) {
  const auto caret = text.find('^');
  if (caret != std::string::npos) {
    return FqField(std::stoll(text.substr(0, caret)), std::stoll(text.substr(caret + 1)));
  }
  const int64_t q = std::stoll(text);
  for (int64_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    int64_t e = 0, r = q;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    if (r != 1) throw DomainError("field size must be a prime power: " + text);
    return FqField(p, e);
  }
  throw DomainError("field size must be a prime power: " + text);
}

FqField::Elem FqField::mul_slow(Elem a, Elem b) const {
  Poly x(e_), y(e_);
  for (int64_t i = 0; i < e_; ++i) {
    x[i] = a % p_;
    a /= static_cast<Elem>(p_);
    y[i] = b % p_;
    b /= static_cast<Elem>(p_);
  }
  Poly z(2 * e_, 0);
  for (int64_t i = 0; i < e_; ++i) {
    for (int64_t j = 0; j < e_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
  }
  z = poly_mod(z, modulus_, p_);
  Elem out = 0;
  for (int64_t i = static_cast<int64_t>(z.size()) - 1; i >= 0; --i) out = out * p_ + z[i];
  return out;
}

FqField::Elem FqField::from_int(int64_t c) const { return static_cast<Elem>(((c % p_) + p_) % p_); }

FqField::Elem FqField::from_rational(const Rational& c) const {
  const Integer pz = p_;
  if (mpz_divisible_p(c.get_den_mpz_t(), pz.get_mpz_t())) {
    throw DomainError("coefficient " + c.get_str() + " is not defined mod " + std::to_string(p_));
  }
  Integer inv;
  mpz_invert(inv.get_mpz_t(), c.get_den_mpz_t(), pz.get_mpz_t());
  Integer r = (Integer(c.get_num()) * inv) % pz;
  if (r < 0) r += pz;
  return static_cast<Elem>(r.get_ui());
}

FqField::Elem FqField::add(Elem a, Elem b) const {
  if (e_ == 1) {
    const Elem s = a + b;
    return s >= q_ ? s - static_cast<Elem>(q_) : s;
  }
  Elem out = 0, scale = 1;
  const auto p = static_cast<Elem>(p_);
  for (int64_t i = 0; i < e_; ++i) {
    out += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return out;
}

FqField::Elem FqField::neg(Elem a) const {
  if (e_ == 1) return a == 0 ? 0 : static_cast<Elem>(q_) - a;
  Elem out = 0, scale = 1;
  const auto p = static_cast<Elem>(p_);
  for (int64_t i = 0; i < e_; ++i) {
    out += ((p - a % p) % p) * scale;
    a /= p;
    scale *= p;
  }
  return out;
}

FqField::Elem FqField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FqField::Elem FqField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (e_ == 1) return static_cast<Elem>(static_cast<uint64_t>(a) * b % static_cast<uint64_t>(q_));
  const uint64_t s = static_cast<uint64_t>(log_[a]) + log_[b];
  return exp_[s % static_cast<uint64_t>(q_ - 1)];
}

FqField::Elem FqField::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero in F_q");
  return exp_[(static_cast<uint64_t>(q_ - 1) - log_[a]) % static_cast<uint64_t>(q_ - 1)];
}

FqField::Elem FqField::pow(Elem a, uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<unsigned __int128>(log_[a]) * k) % static_cast<uint64_t>(q_ - 1)];
}

std::string FqField::to_string(Elem a) const {
  if (e_ == 1) return std::to_string(a);
  std::vector<int64_t> d;
  for (int64_t i = 0; i < e_; ++i) {
    d.push_back(a % p_);
    a /= static_cast<Elem>(p_);
  }
  std::ostringstream out;
  bool first = true;
  for (int64_t i = e_ - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!first) out << "+";
    first = false;
    if (i == 0 || d[i] != 1) out << d[i];
    if (i > 0) out << (d[i] != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return first ? "0" : out.str();
}

HomogeneousPoly HomogeneousPoly::from_sparse(const SparsePolynomial& f, const FqField& k) {
  HomogeneousPoly out;
  out.nvars = f.nvars();
  out.degree = f.degree();
  if (!f.is_homogeneous()) throw DomainError("polynomial is not homogeneous");
  for (const auto& [e, c] : f.terms()) {
    const FqField::Elem x = k.from_rational(c);
    if (x != 0) out.terms[e] = x;
  }
  if (out.terms.empty()) throw DomainError("polynomial vanishes identically over F_q");
  return out;
}

bool HomogeneousPoly::prime_field_coefficients(const FqField& k) const {
  return std::all_of(terms.begin(), terms.end(), [&k](const auto& t) { return t.second < k.p(); });
}

FqField::Elem HomogeneousPoly::evaluate(const std::vector<FqField::Elem>& x, const FqField& k) const {
  FqField::Elem acc = 0;
  for (const auto& [e, c] : terms) {
    FqField::Elem t = c;
    for (size_t i = 0; i < e.size(); ++i) t = k.mul(t, k.pow(x[i], e[i]));
    acc = k.add(acc, t);
  }
  return acc;
}

HomogeneousPoly HomogeneousPoly::derivative(size_t var, const FqField& k) const {
  HomogeneousPoly out;
  out.nvars = nvars;
  out.degree = degree - 1;
  for (const auto& [e, c] : terms) {
    if (e[var] == 0) continue;
    const FqField::Elem m = k.mul(c, k.from_int(e[var]));
    if (m == 0) continue;
    Exponents d = e;
    --d[var];
    out.terms[d] = m;
  }
  return out;
}

std::string HomogeneousPoly::to_string(const FqField& k) const {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    const std::string c = k.to_string(it->second);
    out << (k.e() == 1 ? c : "(" + c + ")");
    for (size_t i = 0; i < it->first.size(); ++i) {
      if (it->first[i] == 0) continue;
      out << "*x" << i;
      if (it->first[i] > 1) out << "^" << it->first[i];
    }
  }
  return out.str();
}

HomogeneousPoly random_homogeneous(size_t nvars, int degree, const FqField& k, std::mt19937_64& rng) {
  HomogeneousPoly out;
  out.nvars = nvars;
  out.degree = degree;
  std::uniform_int_distribution<int64_t> coeff(0, k.q() - 1);
  for (const auto& e : monomials(nvars, degree)) {
    const auto c = static_cast<FqField::Elem>(coeff(rng));
    if (c != 0) out.terms[e] = c;
  }
  return out;
}

uint64_t count_points(const HomogeneousPoly& f, const FqField& k) {
  if (f.is_zero()) throw DomainError("count_points needs a nonzero polynomial");
  Evaluator ev(f, k);
  uint64_t n = 0;
  for_each_projective_point(f.nvars, k, [&](const std::vector<FqField::Elem>& x) {
    if (ev(x) == 0) ++n;
    return false;
  });
  return n;
}

std::string to_string(Smoothness s) {
  switch (s) {
    case Smoothness::kSmooth:
      return "certified-smooth";
    case Smoothness::kSingular:
      return "singular";
    case Smoothness::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

SmoothnessResult is_smooth(const HomogeneousPoly& f, const FqField& k, int64_t search_degree,
                           uint64_t search_limit) {
  if (f.is_zero()) throw DomainError("is_smooth needs a nonzero polynomial");
  if (f.degree < 1) throw DomainError("constant polynomial defines no hypersurface");
  SmoothnessResult out;
  const size_t n = f.nvars;
  const int d = f.degree;
  if (d == 1) {
    out.verdict = Smoothness::kSmooth;
    out.method = "hyperplane";
    return out;
  }

  // Macaulay: the partials have no common zero over the algebraic closure iff
  // they span every monomial of degree n(d-2)+1.
  std::vector<HomogeneousPoly> partials;
  for (size_t i = 0; i < n; ++i) partials.push_back(f.derivative(i, k));
  const int top = static_cast<int>(n) * (d - 2) + 1;
  const auto cols = monomials(n, top);
  std::map<HomogeneousPoly::Exponents, size_t> col_index;
  for (size_t i = 0; i < cols.size(); ++i) col_index[cols[i]] = i;
  std::vector<std::vector<FqField::Elem>> mat;
  for (const auto& g : partials) {
    for (const auto& m : monomials(n, top - (d - 1))) {
      std::vector<FqField::Elem> row(cols.size(), 0);
      for (const auto& [e, c] : g.terms) {
        HomogeneousPoly::Exponents s = e;
        for (size_t i = 0; i < n; ++i) s[i] += m[i];
        row[col_index.at(s)] = c;
      }
      mat.push_back(std::move(row));
    }
  }
  out.macaulay_columns = cols.size();
  out.macaulay_rank = rank(std::move(mat), k);
  const bool partials_independent = out.macaulay_rank == out.macaulay_columns;
  if (partials_independent) {
    out.verdict = Smoothness::kSmooth;
    out.method = "macaulay";
    return out;
  }

  // Look for an explicit singular point, extending the field while feasible.
  const bool liftable = f.prime_field_coefficients(k);
  for (int64_t s = 1; s <= std::max<int64_t>(search_degree, 1); ++s) {
    if (s > 1 && !liftable) break;
    int64_t qs = 1;
    bool too_big = false;
    for (int64_t i = 0; i < s; ++i) {
      if (qs > (int64_t{1} << 21) / k.q()) {
        too_big = true;
        break;
      }
      qs *= k.q();
    }
    if (too_big || projective_size(qs, n, search_limit) > search_limit) break;
    const FqField ext = s == 1 ? k : FqField(k.p(), k.e() * s);
    out.searched_degree = s;
    if (auto w = find_singular_point(f, ext)) {
      out.verdict = Smoothness::kSingular;
      out.witness = std::move(w);
      out.witness_degree = s;
      out.method = "witness";
      return out;
    }
  }
  if (d % k.p() != 0) {
    // Euler: d F = sum x_i dF/dx_i, so a common zero of the partials is singular.
    out.verdict = Smoothness::kSingular;
    out.method = "macaulay";
    return out;
  }
  int64_t bezout = 1;
  for (size_t i = 1; i < n; ++i) bezout *= d - 1;
  if (out.searched_degree >= bezout) {
    out.verdict = Smoothness::kSmooth;
    out.method = "exhaustive";
    return out;
  }
  out.verdict = Smoothness::kInconclusive;
  out.method = "search-exhausted";
  return out;
}

HomogeneousPoly restrict_to_hyperplane(const HomogeneousPoly& f, const std::vector<FqField::Elem>& a,
                                       const FqField& k) {
  const size_t n = f.nvars;
  if (a.size() != n) throw DomainError("hyperplane has the wrong number of coefficients");
  size_t lead = 0;
  while (lead < n && a[lead] == 0) ++lead;
  if (lead == n) throw DomainError("zero hyperplane");
  const FqField::Elem li = k.inv(a[lead]);
  // x_lead = sum_{j > lead} coef[j] x_j, written in the remaining n - 1 variables.
  std::vector<FqField::Elem> coef(n, 0);
  for (size_t j = lead + 1; j < n; ++j) coef[j] = k.neg(k.mul(a[j], li));
  HomogeneousPoly out;
  out.nvars = n - 1;
  out.degree = f.degree;
  auto drop = [lead](const HomogeneousPoly::Exponents& e) {
    HomogeneousPoly::Exponents r;
    for (size_t i = 0; i < e.size(); ++i) {
      if (i != lead) r.push_back(e[i]);
    }
    return r;
  };
  for (const auto& [e, c] : f.terms) {
    // Expand c * x^e with x_lead replaced by the linear form.
    std::map<HomogeneousPoly::Exponents, FqField::Elem> acc;
    HomogeneousPoly::Exponents base = e;
    base[lead] = 0;
    acc[base] = c;
    for (uint32_t t = 0; t < e[lead]; ++t) {
      std::map<HomogeneousPoly::Exponents, FqField::Elem> next;
      for (const auto& [m, v] : acc) {
        for (size_t j = lead + 1; j < n; ++j) {
          if (coef[j] == 0) continue;
          HomogeneousPoly::Exponents mm = m;
          ++mm[j];
          auto& slot = next[mm];
          slot = k.add(slot, k.mul(v, coef[j]));
        }
      }
      acc = std::move(next);
    }
    for (const auto& [m, v] : acc) {
      if (v == 0) continue;
      auto key = drop(m);
      auto& slot = out.terms[key];
      slot = k.add(slot, v);
      if (slot == 0) out.terms.erase(key);
    }
  }
  return out;
}

SectionSearch smooth_section_search(const HomogeneousPoly& f, const FqField& k, int64_t search_degree) {
  SectionSearch out;
  for_each_projective_point(f.nvars, k, [&](const std::vector<FqField::Elem>& a) {
    ++out.tried;
    HomogeneousPoly g = restrict_to_hyperplane(f, a, k);
    if (g.is_zero()) return false;
    SmoothnessResult s = is_smooth(g, k, search_degree);
    if (s.verdict == Smoothness::kInconclusive) ++out.inconclusive;
    if (s.verdict != Smoothness::kSmooth) return false;
    out.hyperplane = a;
    out.section = std::move(g);
    out.section_smoothness = std::move(s);
    return true;
  });
  return out;
}

}  // namespace padiclab
