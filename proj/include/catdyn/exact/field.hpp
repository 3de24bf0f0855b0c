#pragma once

// Exact coefficient fields: the rationals, prime fields F_p and simple
// extensions K = k[t]/(f) of degree at most four over either of them.
//
// A field is a small value type with an associated Element type. All
// arithmetic goes through the field object, so elements themselves stay
// plain data (an mpq, a residue, or a short coefficient array).

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/exact/integer.hpp"

namespace catdyn {

/// Runtime description of a field. Prime field when `minpoly` is empty,
/// otherwise the simple extension of the prime field of the given
/// characteristic by a root of the monic polynomial `minpoly` (low degree
/// first).
struct FieldSpec {
  std::uint32_t characteristic = 0;
  std::vector<Rational> minpoly;

  bool is_prime_field() const { return minpoly.empty(); }
  std::size_t degree() const { return minpoly.empty() ? 1 : minpoly.size() - 1; }

  FieldSpec prime_subfield() const { return FieldSpec{characteristic, {}}; }

  std::string name() const {
    std::string base = characteristic == 0 ? "Q" : "F" + std::to_string(characteristic);
    if (minpoly.empty()) return base;
    std::ostringstream os;
    os << base << "[t]/(";
    bool first = true;
    for (std::size_t k = minpoly.size(); k-- > 0;) {
      const Rational& c = minpoly[k];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      if (k == 0 || mag != 1) os << to_string(mag);
      if (k > 0 && mag != 1) os << "*";
      if (k == 1) os << "t";
      if (k > 1) os << "t^" << k;
    }
    os << ")";
    return os.str();
  }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.characteristic == b.characteristic && a.minpoly == b.minpoly;
  }
};

template <class F>
concept ExactField = requires(const F& f, const typename F::Element& a, typename F::Element& acc,
                              long n, const Rational& q) {
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.from_integer(n) } -> std::same_as<typename F::Element>;
  { f.from_rational(q) } -> std::same_as<typename F::Element>;
  { f.add(a, a) } -> std::same_as<typename F::Element>;
  { f.sub(a, a) } -> std::same_as<typename F::Element>;
  { f.mul(a, a) } -> std::same_as<typename F::Element>;
  { f.neg(a) } -> std::same_as<typename F::Element>;
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.equal(a, a) } -> std::convertible_to<bool>;
  f.add_mul(acc, a, a);
  { f.format(a) } -> std::convertible_to<std::string>;
  { f.spec() } -> std::same_as<FieldSpec>;
  { f == f } -> std::convertible_to<bool>;
};

// ---------------------------------------------------------------------------

class Rationals {
 public:
  using Element = Rational;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_integer(long n) const { return Element(n); }
  Element from_integer(const Integer& n) const { return Element(n); }
  Element from_rational(const Rational& q) const { return q; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (a == 0) throw InvalidArgument("division by zero in Q");
    return Element(1) / a;
  }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  void add_mul(Element& acc, const Element& a, const Element& b) const { acc += a * b; }

  std::string format(const Element& a) const { return to_string(a); }
  FieldSpec spec() const { return {}; }
  std::uint32_t characteristic() const { return 0; }

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31) || !detail::is_prime(p))
      throw InvalidArgument("F_p needs a prime p < 2^31, got " + std::to_string(p));
  }

  std::uint32_t characteristic() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_integer(long n) const {
    long r = n % static_cast<long>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  Element from_integer(const Integer& n) const {
    return static_cast<Element>(mpz_fdiv_ui(n.get_mpz_t(), p_));
  }
  Element from_rational(const Rational& q) const {
    Element den = from_integer(Integer(q.get_den()));
    if (den == 0)
      throw InvalidArgument("denominator of " + to_string(q) + " vanishes mod " + std::to_string(p_));
    return mul(from_integer(Integer(q.get_num())), inv(den));
  }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const {
    if (a == 0) throw InvalidArgument("division by zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }
  Element pow(Element a, std::uint64_t e) const {
    std::uint64_t result = 1, base = a;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<Element>(result);
  }
  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }
  void add_mul(Element& acc, Element a, Element b) const { acc = add(acc, mul(a, b)); }

  std::string format(Element a) const { return std::to_string(a); }
  FieldSpec spec() const { return FieldSpec{p_, {}}; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// Irreducibility of the defining polynomial of an extension.

namespace detail {

inline std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

inline Integer eval_int_poly(const std::vector<Integer>& g, const Integer& x) {
  Integer acc = 0;
  for (std::size_t k = g.size(); k-- > 0;) acc = acc * x + g[k];
  return acc;
}

inline bool is_square(const Integer& n, Integer& root) {
  if (n < 0) return false;
  root = sqrt(n);
  return root * root == n;
}

/// Monic rational polynomial of degree <= 4: irreducible over Q?
inline bool irreducible_over_q(const std::vector<Rational>& f) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  // Substitute t = y / D to get a monic integer polynomial with the same
  // factorisation pattern.
  Integer den = 1;
  for (const auto& c : f) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> g(n + 1);
  Integer power = 1;
  for (std::size_t k = n + 1; k-- > 0;) {
    Rational scaled = f[k] * Rational(power);
    g[k] = scaled.get_num();
    power *= den;
  }
  if (g[0] == 0) return false;
  for (const Integer& d : divisors(g[0]))
    if (eval_int_poly(g, d) == 0 || eval_int_poly(g, -d) == 0) return false;
  if (n <= 3) return true;
  // Quartic: rule out (y^2 + a y + b)(y^2 + c y + e) over Z.
  const Integer &a0 = g[0], &a1 = g[1], &a2 = g[2], &a3 = g[3];
  for (const Integer& d : divisors(a0)) {
    for (int sign : {1, -1}) {
      Integer b = d * sign, e = a0 / b;
      if (b != e) {
        Integer num = a1 - b * a3, dd = e - b;
        if (num % dd != 0) continue;
        Integer a = num / dd, c = a3 - a;
        if (a * c + b + e == a2) return false;
      } else {
        if (a1 != b * a3) continue;
        Integer disc = a3 * a3 - 4 * (a2 - 2 * b), root;
        if (is_square(disc, root) && ((a3 + root) % 2 == 0)) return false;
      }
    }
  }
  return true;
}

using ModPoly = std::vector<std::uint64_t>;

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly mod_poly_rem(ModPoly a, const ModPoly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = PrimeField(static_cast<std::uint32_t>(p)).inv(static_cast<std::uint32_t>(m.back()));
  while (a.size() > dm) {
    std::uint64_t t = a.back() * lead_inv % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p - t * m[i] % p) % p;
    trim(a);
  }
  return a;
}

inline ModPoly mod_poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  return mod_poly_rem(std::move(prod), m, p);
}

inline ModPoly mod_poly_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = mod_poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// x^(p^k) mod m, by k successive p-th powers.
inline ModPoly frobenius_power(const ModPoly& m, std::uint64_t p, unsigned k) {
  ModPoly h = mod_poly_rem(ModPoly{0, 1}, m, p);
  for (unsigned step = 0; step < k; ++step) {
    ModPoly result{1}, base = h;
    for (std::uint64_t e = p; e; e >>= 1) {
      if (e & 1) result = mod_poly_mulmod(result, base, m, p);
      base = mod_poly_mulmod(base, base, m, p);
    }
    h = result;
  }
  return h;
}

/// Rabin's irreducibility test for a monic polynomial of degree <= 4 over F_p.
inline bool irreducible_over_fp(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  ModPoly m(f.begin(), f.end());
  auto minus_x = [&](ModPoly h) {
    if (h.size() < 2) h.resize(2, 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    return h;
  };
  if (!minus_x(frobenius_power(m, p, n)).empty()) return false;
  for (unsigned r : {2u, 3u}) {
    if (n % r != 0) continue;
    ModPoly g = mod_poly_gcd(m, minus_x(frobenius_power(m, p, n / r)), p);
    if (g.size() > 1) return false;
  }
  return true;
}

inline bool minpoly_irreducible(const Rationals&, const std::vector<Rational>& f) {
  return irreducible_over_q(f);
}

inline bool minpoly_irreducible(const PrimeField& k, const std::vector<std::uint32_t>& f) {
  return irreducible_over_fp(f, k.characteristic());
}

inline Rational base_to_rational(const Rational& q) { return q; }
inline Rational base_to_rational(std::uint32_t a) { return Rational(static_cast<unsigned long>(a)); }

}  // namespace detail

/// K = base[t] / (minpoly), minpoly monic irreducible of degree 1..4.
template <class Base>
class SimpleExtension {
 public:
  using BaseField = Base;
  using BaseElement = typename Base::Element;
  static constexpr std::size_t kMaxDegree = 4;

  struct Element {
    std::array<BaseElement, kMaxDegree> c{};
    friend bool operator==(const Element&, const Element&) = default;
  };

  /// `minpoly` lists coefficients from the constant term up; it must be
  /// monic and irreducible over `base`.
  SimpleExtension(Base base, std::vector<BaseElement> minpoly) : base_(std::move(base)), minpoly_(std::move(minpoly)) {
    if (minpoly_.size() < 2 || minpoly_.size() > kMaxDegree + 1)
      throw InvalidArgument("extension degree must lie in 1..4");
    if (!base_.equal(minpoly_.back(), base_.one())) throw InvalidArgument("minimal polynomial must be monic");
    if (!detail::minpoly_irreducible(base_, minpoly_))
      throw InvalidArgument("minimal polynomial is reducible over " + base_.spec().name());
  }

  const Base& base() const { return base_; }
  std::size_t degree() const { return minpoly_.size() - 1; }
  const std::vector<BaseElement>& minpoly() const { return minpoly_; }
  std::uint32_t characteristic() const { return base_.spec().characteristic; }

  Element zero() const { return Element{}; }
  Element one() const { return embed(base_.one()); }
  Element generator() const {
    Element x{};
    if (degree() == 1) x.c[0] = base_.neg(minpoly_[0]);
    else x.c[1] = base_.one();
    return x;
  }
  Element embed(const BaseElement& a) const {
    Element x{};
    x.c[0] = a;
    return x;
  }
  Element from_integer(long n) const { return embed(base_.from_integer(n)); }
  Element from_rational(const Rational& q) const { return embed(base_.from_rational(q)); }

  Element add(const Element& a, const Element& b) const {
    Element r{};
    for (std::size_t i = 0; i < degree(); ++i) r.c[i] = base_.add(a.c[i], b.c[i]);
    return r;
  }
  Element sub(const Element& a, const Element& b) const {
    Element r{};
    for (std::size_t i = 0; i < degree(); ++i) r.c[i] = base_.sub(a.c[i], b.c[i]);
    return r;
  }
  Element neg(const Element& a) const {
    Element r{};
    for (std::size_t i = 0; i < degree(); ++i) r.c[i] = base_.neg(a.c[i]);
    return r;
  }
  Element mul(const Element& a, const Element& b) const {
    const std::size_t n = degree();
    std::array<BaseElement, 2 * kMaxDegree - 1> prod{};
    for (auto& x : prod) x = base_.zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (base_.is_zero(a.c[i])) continue;
      for (std::size_t j = 0; j < n; ++j) base_.add_mul(prod[i + j], a.c[i], b.c[j]);
    }
    for (std::size_t k = 2 * n - 1; k-- > n;) {
      if (base_.is_zero(prod[k])) continue;
      BaseElement t = prod[k];
      for (std::size_t i = 0; i < n; ++i) prod[k - n + i] = base_.sub(prod[k - n + i], base_.mul(t, minpoly_[i]));
      prod[k] = base_.zero();
    }
    Element r{};
    for (std::size_t i = 0; i < n; ++i) r.c[i] = prod[i];
    return r;
  }
  void add_mul(Element& acc, const Element& a, const Element& b) const { acc = add(acc, mul(a, b)); }

  /// Inverse by solving (multiplication by a) * y = 1 over the base field.
  Element inv(const Element& a) const {
    if (is_zero(a)) throw InvalidArgument("division by zero in " + spec().name());
    const std::size_t n = degree();
    // Augmented n x (n+1) system; column j holds a * t^j.
    std::vector<std::vector<BaseElement>> m(n, std::vector<BaseElement>(n + 1, base_.zero()));
    Element col = a;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) m[i][j] = col.c[i];
      col = mul(col, generator_power_one());
    }
    m[0][n] = base_.one();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (base_.is_zero(m[piv][c])) ++piv;
      std::swap(m[piv], m[c]);
      BaseElement s = base_.inv(m[c][c]);
      for (auto& x : m[c]) x = base_.mul(x, s);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || base_.is_zero(m[r][c])) continue;
        BaseElement f = m[r][c];
        for (std::size_t k = c; k <= n; ++k) m[r][k] = base_.sub(m[r][k], base_.mul(f, m[c][k]));
      }
    }
    Element r{};
    for (std::size_t i = 0; i < n; ++i) r.c[i] = m[i][n];
    return r;
  }

  bool is_zero(const Element& a) const {
    for (std::size_t i = 0; i < degree(); ++i)
      if (!base_.is_zero(a.c[i])) return false;
    return true;
  }
  bool equal(const Element& a, const Element& b) const {
    for (std::size_t i = 0; i < degree(); ++i)
      if (!base_.equal(a.c[i], b.c[i])) return false;
    return true;
  }

  std::string format(const Element& a) const {
    std::string out;
    for (std::size_t i = 0; i < degree(); ++i) {
      if (base_.is_zero(a.c[i])) continue;
      if (!out.empty()) out += " + ";
      out += base_.format(a.c[i]);
      if (i == 1) out += "*t";
      if (i > 1) out += "*t^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

  FieldSpec spec() const {
    FieldSpec s = base_.spec();
    for (const auto& c : minpoly_) s.minpoly.push_back(detail::base_to_rational(c));
    return s;
  }

  friend bool operator==(const SimpleExtension& a, const SimpleExtension& b) {
    return a.base_ == b.base_ && a.minpoly_ == b.minpoly_;
  }

 private:
  // t itself for degree >= 2; the degree-1 field is the base field in disguise.
  Element generator_power_one() const { return degree() == 1 ? one() : generator(); }

  Base base_;
  std::vector<BaseElement> minpoly_;
};

using RationalExtension = SimpleExtension<Rationals>;
using PrimeExtension = SimpleExtension<PrimeField>;

/// Convenience constructors from rational coefficient lists.
inline RationalExtension make_extension(const Rationals& q, const std::vector<Rational>& minpoly) {
  return RationalExtension(q, minpoly);
}

inline PrimeExtension make_extension(const PrimeField& fp, const std::vector<Rational>& minpoly) {
  std::vector<std::uint32_t> coeffs;
  for (const auto& c : minpoly) coeffs.push_back(fp.from_rational(c));
  return PrimeExtension(fp, coeffs);
}

static_assert(ExactField<Rationals>);
static_assert(ExactField<PrimeField>);
static_assert(ExactField<RationalExtension>);
static_assert(ExactField<PrimeExtension>);

// ---------------------------------------------------------------------------
// Embeddings. An embedding is a ring map From -> To fixed by where it sends
// the generator; prime fields embed canonically.

/// Canonical inclusion of a prime field into itself or into an extension of it.
template <ExactField From, ExactField To>
class FieldEmbedding;

template <ExactField F>
class FieldEmbedding<F, F> {
 public:
  FieldEmbedding(const F& from, const F& to) : to_(to) {
    if (!(from == to)) throw NoEmbedding("no declared embedding " + from.spec().name() + " -> " + to.spec().name());
  }
  typename F::Element operator()(const typename F::Element& a) const { return a; }
  const F& target() const { return to_; }

 private:
  F to_;
};

template <class Base>
class FieldEmbedding<Base, SimpleExtension<Base>> {
 public:
  FieldEmbedding(const Base& from, const SimpleExtension<Base>& to) : to_(to) {
    if (!(from == to.base()))
      throw NoEmbedding("no declared embedding " + from.spec().name() + " -> " + to.spec().name());
  }
  typename SimpleExtension<Base>::Element operator()(const typename Base::Element& a) const { return to_.embed(a); }
  const SimpleExtension<Base>& target() const { return to_; }

 private:
  SimpleExtension<Base> to_;
};

/// Embedding between two extensions of the same prime field, declared by
/// the image of the source generator. The image must be a root of the
/// source minimal polynomial; an identical pair of fields needs no image.
template <class Base>
class FieldEmbedding<SimpleExtension<Base>, SimpleExtension<Base>> {
 public:
  using Source = SimpleExtension<Base>;
  using Target = SimpleExtension<Base>;

  FieldEmbedding(const Source& from, const Target& to) : from_(from), to_(to) {
    if (!(from == to))
      throw NoEmbedding("no declared embedding " + from.spec().name() + " -> " + to.spec().name() +
                        " (supply the image of the generator)");
    image_ = to_.generator();
  }

  FieldEmbedding(const Source& from, const Target& to, typename Target::Element generator_image)
      : from_(from), to_(to), image_(std::move(generator_image)) {
    if (!(from.base() == to.base())) throw NoEmbedding("extensions over different prime fields");
    if (to.degree() % from.degree() != 0)
      throw NoEmbedding("degree " + std::to_string(from.degree()) + " does not divide " + std::to_string(to.degree()));
    typename Target::Element acc = to_.zero();
    const auto& f = from_.minpoly();
    for (std::size_t k = f.size(); k-- > 0;) acc = to_.add(to_.mul(acc, image_), to_.embed(f[k]));
    if (!to_.is_zero(acc)) throw NoEmbedding("declared generator image is not a root of " + from.spec().name());
  }

  typename Target::Element operator()(const typename Source::Element& a) const {
    typename Target::Element acc = to_.zero();
    for (std::size_t k = from_.degree(); k-- > 0;) acc = to_.add(to_.mul(acc, image_), to_.embed(a.c[k]));
    return acc;
  }
  const Target& target() const { return to_; }

 private:
  Source from_;
  Target to_;
  typename Target::Element image_;
};

}  // namespace catdyn
