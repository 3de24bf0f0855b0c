#pragma once

// Univariate polynomials with exact rational coefficients, lowest degree
// first, plus the pieces needed for certified real-root work: exact
// division, gcd, squarefree part, Sturm sequences and cyclotomic factors.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/exact/integer.hpp"

namespace catdyn {

class IntPolynomial {
 public:
  IntPolynomial() = default;
  IntPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static IntPolynomial constant(const Rational& a) { return IntPolynomial(std::vector<Rational>{a}); }
  static IntPolynomial monomial(std::size_t k, const Rational& a = 1) {
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = a;
    return IntPolynomial(std::move(c));
  }

  const std::vector<Rational>& coefficients() const { return c_; }
  /// Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  bool is_integral() const {
    for (const auto& x : c_)
      if (x.get_den() != 1) return false;
    return true;
  }

  Rational eval(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }
  int sign_at(const Rational& x) const { return sgn(eval(x)); }

  IntPolynomial derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Rational(static_cast<long>(k)));
    return IntPolynomial(std::move(d));
  }

  IntPolynomial monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> c = c_;
    const Rational lc = c_.back();
    for (auto& x : c) x /= lc;
    return IntPolynomial(std::move(c));
  }

  /// p(x) -> p(x^2).
  IntPolynomial compose_square() const {
    std::vector<Rational> c(c_.empty() ? 0 : 2 * c_.size() - 1, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) c[2 * k] = c_[k];
    return IntPolynomial(std::move(c));
  }

  /// x^deg p(1/x).
  IntPolynomial reversed(std::size_t deg) const {
    if (degree() > static_cast<long>(deg)) throw InvalidArgument("reversal degree too small");
    std::vector<Rational> c(deg + 1, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) c[deg - k] = c_[k];
    return IntPolynomial(std::move(c));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x = -x;
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
  }
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

  /// Quotient and remainder with deg r < deg b.
  friend std::pair<IntPolynomial, IntPolynomial> divmod(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    std::vector<Rational> r = a.c_;
    const std::size_t db = b.c_.size() - 1;
    if (r.size() <= db) return {IntPolynomial{}, a};
    std::vector<Rational> q(r.size() - db, Rational(0));
    const Rational lb = b.c_.back();
    for (std::size_t k = r.size(); k-- > db;) {
      if (r[k] == 0) continue;
      const Rational f = r[k] / lb;
      q[k - db] = f;
      for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= f * b.c_[i];
    }
    r.resize(db);
    return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
  }

  /// Human-readable form in the variable `var`, highest degree first.
  std::string format(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rational& a = c_[k];
      if (a == 0) continue;
      const Rational mag = abs(a);
      if (!first) os << (a < 0 ? " - " : " + ");
      else if (a < 0) os << "-";
      first = false;
      if (k == 0 || mag != 1) os << to_string(mag);
      if (k > 0) os << var;
      if (k > 1) os << "^" << k;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic gcd.
inline IntPolynomial gcd(IntPolynomial a, IntPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// p / gcd(p, p'), monic. Same real roots as p, all simple.
inline IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.degree() <= 0) return p.monic();
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

/// Sturm sequence p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
inline std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& p) {
  std::vector<IntPolynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    auto r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

/// Number of sign changes of the sequence evaluated at x (zeros skipped).
inline int sign_variations(const std::vector<IntPolynomial>& seq, const Rational& x) {
  int prev = 0, changes = 0;
  for (const auto& q : seq) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

/// Number of distinct real roots in (a, b] for a squarefree polynomial.
inline int count_roots(const std::vector<IntPolynomial>& sturm, const Rational& a, const Rational& b) {
  return sign_variations(sturm, a) - sign_variations(sturm, b);
}

/// Every real root lies in [-B, B].
inline Rational cauchy_bound(const IntPolynomial& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m = 0;
  const Rational lc = abs(p.leading());
  for (long k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeff(static_cast<std::size_t>(k))) / lc));
  return m + 1;
}

inline long euler_phi(long m) {
  long result = m;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q != 0) continue;
    while (m % q == 0) m /= q;
    result -= result / q;
  }
  if (m > 1) result -= result / m;
  return result;
}

/// The m-th cyclotomic polynomial, from x^m - 1 = prod_{d | m} Phi_d.
inline IntPolynomial cyclotomic(long m) {
  if (m < 1) throw InvalidArgument("cyclotomic index must be positive");
  IntPolynomial p = IntPolynomial::monomial(static_cast<std::size_t>(m)) - IntPolynomial::constant(1);
  for (long d = 1; d < m; ++d)
    if (m % d == 0) p = divmod(p, cyclotomic(d)).first;
  return p;
}

/// Splits p = x^k * prod Phi_m^(e_m) * rest, with `rest` free of cyclotomic
/// factors and of the factor x.
struct KroneckerSplit {
  std::size_t zero_multiplicity = 0;
  std::vector<long> cyclotomic_indices;  // with multiplicity, ascending
  IntPolynomial rest;

  /// All nonzero roots lie on the unit circle (Kronecker).
  bool roots_of_unity_only() const { return rest.degree() == 0; }
};

inline KroneckerSplit kronecker_split(IntPolynomial p) {
  if (p.is_zero()) throw InvalidArgument("zero polynomial");
  KroneckerSplit out;
  while (p.degree() > 0 && p.coeff(0) == 0) {
    p = divmod(p, IntPolynomial::monomial(1)).first;
    ++out.zero_multiplicity;
  }
  // phi(m) <= deg p bounds the candidate indices; phi(m) >= sqrt(m/2).
  const long deg = p.degree();
  const long limit = 2 * deg * deg + 2;
  for (long m = 1; m <= limit && p.degree() > 0; ++m) {
    if (euler_phi(m) > p.degree()) continue;
    const IntPolynomial phi = cyclotomic(m);
    for (;;) {
      auto [q, r] = divmod(p, phi);
      if (!r.is_zero()) break;
      p = std::move(q);
      out.cyclotomic_indices.push_back(m);
    }
  }
  out.rest = std::move(p);
  return out;
}

}  // namespace catdyn
