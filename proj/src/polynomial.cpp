#include "padiclab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace padiclab {

namespace {

using Dense = std::vector<Rational>;

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense dense_rem(Dense a, const Dense& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  Rational det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

size_t parse_var(std::string_view name) {
  if (name.size() == 1) {
    switch (name[0]) {
      case 'x': return 0;
      case 'y': return 1;
      case 'z': return 2;
      case 'w': return 3;
      default: break;
    }
  }
  if (name.size() >= 2 && name[0] == 'x') {
    size_t idx = 0;
    for (char c : name.substr(1)) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw DomainError("bad variable name '" + std::string(name) + "'");
      }
      idx = idx * 10 + static_cast<size_t>(c - '0');
    }
    return idx;
  }
  throw DomainError("bad variable name '" + std::string(name) + "'");
}

}  // namespace

SparsePolynomial::SparsePolynomial(size_t nvars) : nvars_(nvars) {}

SparsePolynomial SparsePolynomial::constant(size_t nvars, const Rational& c) {
  SparsePolynomial f(nvars);
  f.add_term(Exponents(nvars, 0), c);
  return f;
}

SparsePolynomial SparsePolynomial::variable(size_t nvars, size_t index) {
  SparsePolynomial f(nvars);
  Exponents e(nvars, 0);
  e.at(index) = 1;
  f.add_term(e, 1);
  return f;
}

SparsePolynomial SparsePolynomial::monomial(const Rational& c, Exponents exps) {
  SparsePolynomial f(exps.size());
  f.add_term(exps, c);
  return f;
}

SparsePolynomial SparsePolynomial::univariate(std::span<const Rational> coeffs) {
  SparsePolynomial f(1);
  for (size_t i = 0; i < coeffs.size(); ++i) f.add_term({static_cast<uint32_t>(i)}, coeffs[i]);
  return f;
}

void SparsePolynomial::add_term(const Exponents& exps, const Rational& c) {
  if (exps.size() != nvars_) throw DomainError("term arity does not match polynomial");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SparsePolynomial SparsePolynomial::parse(std::string_view text, size_t nvars) {
  struct RawTerm {
    Rational coef;
    std::vector<std::pair<size_t, uint32_t>> powers;
  };
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw DomainError("empty polynomial text");
  std::vector<RawTerm> raw;
  size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!raw.empty()) {
      throw DomainError("expected '+' or '-' at offset " + std::to_string(pos));
    }
    size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') {
      // A '-' directly after '^' would be a negative exponent, which is not allowed.
      ++end;
    }
    const std::string_view term(s.data() + pos, end - pos);
    if (term.empty()) throw DomainError("empty term at offset " + std::to_string(pos));
    RawTerm t{Rational(sign), {}};
    size_t fpos = 0;
    while (fpos <= term.size()) {
      size_t star = term.find('*', fpos);
      if (star == std::string_view::npos) star = term.size();
      const std::string_view factor = term.substr(fpos, star - fpos);
      if (factor.empty()) throw DomainError("empty factor in term '" + std::string(term) + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        t.coef *= parse_rational(factor);
      } else {
        const size_t caret = factor.find('^');
        const size_t var = parse_var(factor.substr(0, caret));
        uint32_t e = 1;
        if (caret != std::string_view::npos) {
          const std::string_view es = factor.substr(caret + 1);
          if (es.empty() || !std::all_of(es.begin(), es.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw DomainError("bad exponent in '" + std::string(factor) + "'");
          }
          e = static_cast<uint32_t>(std::stoul(std::string(es)));
        }
        t.powers.emplace_back(var, e);
        nvars = std::max(nvars, var + 1);
      }
      fpos = star + 1;
    }
    raw.push_back(std::move(t));
    pos = end;
  }
  SparsePolynomial f(nvars);
  for (const auto& t : raw) {
    Exponents e(nvars, 0);
    for (auto [v, k] : t.powers) e[v] += k;
    f.add_term(e, t.coef);
  }
  return f;
}

int SparsePolynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto k : e) s += static_cast<int>(k);
    d = std::max(d, s);
  }
  return d;
}

int SparsePolynomial::degree_in(size_t var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(var)));
  return d;
}

bool SparsePolynomial::is_homogeneous() const {
  const int d = degree();
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto k : e) s += static_cast<int>(k);
    if (s != d) return false;
  }
  return true;
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& o) {
  if (o.nvars_ != nvars_) throw DomainError("polynomials in different numbers of variables");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& o) { return *this += -o; }

SparsePolynomial& SparsePolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

SparsePolynomial SparsePolynomial::operator-() const {
  SparsePolynomial r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
  if (a.nvars_ != b.nvars_) throw DomainError("polynomials in different numbers of variables");
  SparsePolynomial r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      SparsePolynomial::Exponents e(ea);
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

SparsePolynomial SparsePolynomial::pow(uint32_t e) const {
  SparsePolynomial r = constant(nvars_, 1);
  SparsePolynomial base = *this;
  while (e > 0) {
    if (e & 1U) r = r * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return r;
}

Rational SparsePolynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw DomainError("evaluation point has wrong arity");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) t *= rpow(point[i], e[i]);
    }
    acc += t;
  }
  return acc;
}

Rational SparsePolynomial::evaluate(std::span<const Integer> point) const {
  std::vector<Rational> q(point.begin(), point.end());
  return evaluate(std::span<const Rational>(q));
}

SparsePolynomial SparsePolynomial::derivative(size_t var) const {
  SparsePolynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e.at(var) == 0) continue;
    Exponents d(e);
    d[var] -= 1;
    r.add_term(d, c * static_cast<long>(e[var]));
  }
  return r;
}

SparsePolynomial SparsePolynomial::compose(std::span<const SparsePolynomial> subs) const {
  if (subs.size() != nvars_) throw DomainError("compose: wrong number of substitutions");
  const size_t out_vars = subs.empty() ? nvars_ : subs[0].nvars();
  std::vector<std::vector<SparsePolynomial>> powers(nvars_);
  SparsePolynomial r(out_vars);
  for (const auto& [e, c] : terms_) {
    SparsePolynomial t = constant(out_vars, c);
    for (size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(out_vars, 1));
      while (cache.size() <= e[i]) cache.push_back(cache.back() * subs[i]);
      t = t * cache[e[i]];
    }
    r += t;
  }
  return r;
}

SparsePolynomial SparsePolynomial::widen(size_t nvars) const {
  if (nvars < nvars_) throw DomainError("widen: cannot drop variables");
  SparsePolynomial r(nvars);
  for (const auto& [e, c] : terms_) {
    Exponents w(e);
    w.resize(nvars, 0);
    r.add_term(w, c);
  }
  return r;
}

std::vector<Rational> SparsePolynomial::univariate_coeffs() const {
  if (nvars_ != 1) throw DomainError("univariate_coeffs on a multivariate polynomial");
  std::vector<Rational> c(static_cast<size_t>(std::max(degree(), 0)) + 1, Rational(0));
  for (const auto& [e, v] : terms_) c[e[0]] = v;
  return c;
}

std::optional<int64_t> SparsePolynomial::content_valuation(int64_t p) const {
  std::optional<int64_t> best;
  for (const auto& [e, c] : terms_) {
    const int64_t v = *valuation(c, p);
    if (!best || v < *best) best = v;
  }
  return best;
}

std::string SparsePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c;
    if (c < 0) {
      out << (first ? "-" : " - ");
      mag = -c;
    } else if (!first) {
      out << " + ";
    }
    const bool constant = std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
    bool sep = mag != 1 || constant;
    if (sep) out << mag.get_str();
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      out << (sep ? "*x" : "x") << i;
      sep = true;
      if (e[i] > 1) out << "^" << e[i];
    }
    first = false;
  }
  return out.str();
}

SparsePolynomial univariate_gcd(const SparsePolynomial& a, const SparsePolynomial& b) {
  Dense x = a.is_zero() ? Dense{} : a.univariate_coeffs();
  Dense y = b.is_zero() ? Dense{} : b.univariate_coeffs();
  trim(x);
  trim(y);
  while (!y.empty()) {
    Dense r = dense_rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return SparsePolynomial(1);
  const Rational lc = x.back();
  for (auto& c : x) c /= lc;
  return SparsePolynomial::univariate(x);
}

Rational resultant(const SparsePolynomial& a, const SparsePolynomial& b) {
  Dense f = a.univariate_coeffs();
  Dense g = b.univariate_coeffs();
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return 0;
  const size_t m = f.size() - 1;
  const size_t n = g.size() - 1;
  if (m == 0 && n == 0) return 1;
  const size_t size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, Rational(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j <= m; ++j) s[i][i + j] = f[m - j];
  }
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j <= n; ++j) s[n + i][i + j] = g[n - j];
  }
  return determinant(std::move(s));
}

Rational discriminant(const SparsePolynomial& f) {
  const int n = f.degree();
  if (n < 1) throw DomainError("discriminant of a constant");
  const Rational res = resultant(f, f.derivative(0));
  const Rational lc = f.univariate_coeffs().back();
  const long sign = ((n * (n - 1) / 2) % 2 == 0) ? 1 : -1;
  return Rational(sign) * res / lc;
}

SparsePolynomial reverse(const SparsePolynomial& f, int n) {
  if (f.degree() > n) throw DomainError("reverse: degree exceeds n");
  SparsePolynomial r(1);
  for (const auto& [e, c] : f.terms()) r.add_term({static_cast<uint32_t>(n) - e[0]}, c);
  return r;
}

}  // namespace padiclab
