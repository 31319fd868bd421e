#include "padiclab/radical.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace padiclab {

RadicalValue::RadicalValue(int64_t p) : p_(p), coeffs_{Rational(0)} {}

RadicalValue::RadicalValue(int64_t p, const Rational& c) : p_(p), coeffs_{c} { coeffs_[0].canonicalize(); }

RadicalValue::RadicalValue(int64_t p, std::vector<Rational> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
  normalize();
}

RadicalValue RadicalValue::prime_power(int64_t p, const Rational& e) {
  const int64_t m = Integer(e.get_den()).get_si();
  // e = q + j/m with 0 <= j < m.
  const int64_t num = Integer(e.get_num()).get_si();
  const int64_t q = floor_div(num, m);
  const int64_t j = num - q * m;
  std::vector<Rational> c(static_cast<size_t>(m), Rational(0));
  c[static_cast<size_t>(j)] = rpow(p, q);
  return RadicalValue(p, std::move(c));
}

void RadicalValue::normalize() {
  for (auto& c : coeffs_) c.canonicalize();
  const int64_t m = branch();
  int64_t g = m;
  for (int64_t j = 1; j < m; ++j) {
    if (coeffs_[static_cast<size_t>(j)] != 0) g = std::gcd(g, j);
  }
  if (g == m && coeffs_[0] == 0) {
    coeffs_.assign(1, Rational(0));
    return;
  }
  if (g > 1) {
    std::vector<Rational> reduced(static_cast<size_t>(m / g));
    for (int64_t j = 0; j < m; j += g) reduced[static_cast<size_t>(j / g)] = coeffs_[static_cast<size_t>(j)];
    coeffs_ = std::move(reduced);
  }
}

std::vector<Rational> RadicalValue::coeffs_at(int64_t m) const {
  const int64_t b = branch();
  if (m % b != 0) throw DomainError("coeffs_at: target branch is not a multiple");
  std::vector<Rational> out(static_cast<size_t>(m), Rational(0));
  const int64_t step = m / b;
  for (int64_t j = 0; j < b; ++j) out[static_cast<size_t>(j * step)] = coeffs_[static_cast<size_t>(j)];
  return out;
}

void RadicalValue::check_same_prime(const RadicalValue& a, const RadicalValue& b) {
  if (a.p_ != b.p_) throw DomainError("radical values over different primes");
}

bool RadicalValue::is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }

RadicalValue& RadicalValue::operator+=(const RadicalValue& o) {
  check_same_prime(*this, o);
  const int64_t m = std::lcm(branch(), o.branch());
  auto a = coeffs_at(m);
  const auto b = o.coeffs_at(m);
  for (size_t j = 0; j < a.size(); ++j) a[j] += b[j];
  coeffs_ = std::move(a);
  normalize();
  return *this;
}

RadicalValue& RadicalValue::operator-=(const RadicalValue& o) { return *this += -o; }

RadicalValue RadicalValue::operator-() const {
  RadicalValue r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RadicalValue& RadicalValue::operator*=(const RadicalValue& o) {
  check_same_prime(*this, o);
  const int64_t m = std::lcm(branch(), o.branch());
  const auto a = coeffs_at(m);
  const auto b = o.coeffs_at(m);
  std::vector<Rational> c(static_cast<size_t>(m), Rational(0));
  const Rational pr(p_);
  for (int64_t i = 0; i < m; ++i) {
    if (a[static_cast<size_t>(i)] == 0) continue;
    for (int64_t j = 0; j < m; ++j) {
      if (b[static_cast<size_t>(j)] == 0) continue;
      Rational t = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
      int64_t k = i + j;
      if (k >= m) {
        k -= m;
        t *= pr;
      }
      c[static_cast<size_t>(k)] += t;
    }
  }
  coeffs_ = std::move(c);
  normalize();
  return *this;
}

RadicalValue RadicalValue::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero radical value");
  const int64_t m = branch();
  if (m == 1) return RadicalValue(p_, Rational(1) / coeffs_[0]);
  // Solve M x = e_0 where column j of M holds the coefficients of value * t^j.
  const auto n = static_cast<size_t>(m);
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, Rational(0)));
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < n; ++i) {
      size_t k = i + j;
      Rational t = coeffs_[i];
      if (k >= n) {
        k -= n;
        t *= p_;
      }
      a[k][j] += t;
    }
  }
  a[0][n] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<Rational> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return RadicalValue(p_, std::move(x));
}

std::pair<Rational, Rational> RadicalValue::enclosure(unsigned bits) const {
  const int64_t m = branch();
  if (m == 1) return {coeffs_[0], coeffs_[0]};
  // lo <= t < lo + 2^-bits with lo = floor(t 2^bits) / 2^bits.
  Integer scaled = Integer(p_) << static_cast<mp_bitcnt_t>(bits * static_cast<unsigned>(m));
  Integer root;
  mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(m));
  const Rational scale(Integer(1), Integer(1) << bits);
  const Rational tlo = Rational(root) * scale;
  const Rational thi = Rational(root + 1) * scale;
  Rational lo = coeffs_[0], hi = coeffs_[0];
  Rational plo = 1, phi = 1;
  for (int64_t j = 1; j < m; ++j) {
    plo *= tlo;
    phi *= thi;
    const Rational& c = coeffs_[static_cast<size_t>(j)];
    if (c > 0) {
      lo += c * plo;
      hi += c * phi;
    } else if (c < 0) {
      lo += c * phi;
      hi += c * plo;
    }
  }
  return {lo, hi};
}

int RadicalValue::sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(coeffs_[0]);
  // Nonzero by linear independence of 1, t, ..., t^{m-1}; refinement terminates.
  for (unsigned bits = 32;; bits *= 2) {
    const auto [lo, hi] = enclosure(bits);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
}

bool operator==(const RadicalValue& a, const RadicalValue& b) {
  return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
}

std::strong_ordering operator<=>(const RadicalValue& a, const RadicalValue& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

long double RadicalValue::to_long_double() const {
  const long double t = std::pow(static_cast<long double>(p_), 1.0L / static_cast<long double>(branch()));
  long double acc = 0, tp = 1;
  for (const auto& c : coeffs_) {
    acc += tp * static_cast<long double>(c.get_d());
    tp *= t;
  }
  return acc;
}

std::string RadicalValue::generator() const {
  if (branch() == 1) return "1";
  return std::to_string(p_) + "^(1/" + std::to_string(branch()) + ")";
}

std::string RadicalValue::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    const Rational& c = coeffs_[j];
    if (c == 0 && !(j == 0 && coeffs_.size() == 1)) continue;
    Rational mag = c;
    if (first) {
      if (c < 0) {
        out << "-";
        mag = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) mag = -c;
    }
    out << mag.get_str();
    if (j == 1) out << "*t";
    if (j > 1) out << "*t^" << j;
    first = false;
  }
  return out.str();
}

RadicalValue max(const RadicalValue& a, const RadicalValue& b) { return a < b ? b : a; }
RadicalValue min(const RadicalValue& a, const RadicalValue& b) { return b < a ? b : a; }

}  // namespace padiclab
