#pragma once

// The algebraic Mukai lattice N = Z + NS + Z of a K3 surface and the
// isometries induced by autoequivalences. Coordinates are (r, c_1..c_rho, m)
// with pairing c1.c2 - r1 m2 - r2 m1.

#include <string>
#include <utility>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/exact/spectral.hpp"

namespace catdyn {

class MukaiLattice {
 public:
  explicit MukaiLattice(IntMatrix ns_gram) : ns_(std::move(ns_gram)) {
    if (ns_.rows() != ns_.cols()) throw InvalidArgument("NS Gram matrix must be square");
    if (!is_integral(ns_)) throw InvalidArgument("NS Gram matrix must be integral");
    for (std::size_t i = 0; i < ns_.rows(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (ns_(i, j) != ns_(j, i)) throw InvalidArgument("NS Gram matrix must be symmetric");
    const std::size_t n = rank();
    gram_ = IntMatrix(Rationals{}, n, n);
    gram_(0, n - 1) = gram_(n - 1, 0) = -1;
    for (std::size_t i = 0; i < ns_rank(); ++i)
      for (std::size_t j = 0; j < ns_rank(); ++j) gram_(i + 1, j + 1) = ns_(i, j);
  }

  /// Rank-one lattice with H^2 = 2d.
  static MukaiLattice degree(long d) { return MukaiLattice(int_matrix({{2 * d}})); }

  std::size_t ns_rank() const { return ns_.rows(); }
  std::size_t rank() const { return ns_.rows() + 2; }
  const IntMatrix& ns_gram() const { return ns_; }
  const IntMatrix& gram() const { return gram_; }

  bool is_even() const {
    for (std::size_t i = 0; i < ns_rank(); ++i)
      if (ns_(i, i).get_num() % 2 != 0) return false;
    return true;
  }

  /// c1 . c2 on NS.
  Integer ns_product(const std::vector<Integer>& a, const std::vector<Integer>& b) const {
    Rational s = 0;
    for (std::size_t i = 0; i < ns_rank(); ++i)
      for (std::size_t j = 0; j < ns_rank(); ++j) s += Rational(a[i]) * ns_(i, j) * Rational(b[j]);
    return s.get_num();
  }

  friend bool operator==(const MukaiLattice& a, const MukaiLattice& b) { return a.ns_ == b.ns_; }

 private:
  IntMatrix ns_;
  IntMatrix gram_{Rationals{}, 0, 0};
};

struct MukaiVector {
  MukaiLattice lattice;
  Integer r;
  std::vector<Integer> c;
  Integer m;

  MukaiVector(MukaiLattice lat, Integer rank, std::vector<Integer> c1, Integer mm)
      : lattice(std::move(lat)), r(std::move(rank)), c(std::move(c1)), m(std::move(mm)) {
    if (c.size() != lattice.ns_rank()) throw InvalidArgument("NS component has the wrong length");
  }

  std::vector<Integer> coordinates() const {
    std::vector<Integer> v{r};
    v.insert(v.end(), c.begin(), c.end());
    v.push_back(m);
    return v;
  }

  static MukaiVector from_coordinates(const MukaiLattice& lat, const std::vector<Integer>& v) {
    if (v.size() != lat.rank()) throw InvalidArgument("coordinate vector has the wrong length");
    return MukaiVector(lat, v.front(), std::vector<Integer>(v.begin() + 1, v.end() - 1), v.back());
  }

  friend bool operator==(const MukaiVector& a, const MukaiVector& b) {
    return a.lattice == b.lattice && a.r == b.r && a.c == b.c && a.m == b.m;
  }
};

inline Integer mukai_pairing(const MukaiVector& v, const MukaiVector& w) {
  if (!(v.lattice == w.lattice)) throw InvalidArgument("Mukai vectors live on different lattices");
  return v.lattice.ns_product(v.c, w.c) - v.r * w.m - w.r * v.m;
}

/// v(E) = (rk, c1, chi - rk).
inline MukaiVector mukai_vector(const MukaiLattice& lat, const Integer& rank, const std::vector<Integer>& c1,
                                const Integer& chi) {
  return MukaiVector(lat, rank, c1, chi - rank);
}

/// v(O(n)) on a rank-one lattice with H^2 = 2d, using chi(O(n)) = 2 + n^2 d.
inline MukaiVector line_bundle_vector(const MukaiLattice& lat, long n) {
  if (lat.ns_rank() != 1) throw InvalidArgument("line_bundle_vector needs Picard rank one");
  const Integer d = lat.ns_gram()(0, 0).get_num() / 2;
  return mukai_vector(lat, 1, {Integer(n)}, 2 + Integer(n) * n * d);
}

class LatticeIsometry {
 public:
  /// Validates integrality, determinant +-1 and preservation of the pairing.
  LatticeIsometry(MukaiLattice lattice, IntMatrix matrix, std::vector<std::string> word)
      : lattice_(std::move(lattice)), matrix_(std::move(matrix)), word_(std::move(word)) {
    const std::size_t n = lattice_.rank();
    if (matrix_.rows() != n || matrix_.cols() != n) throw InvalidArgument("isometry matrix has the wrong size");
    if (!is_integral(matrix_)) throw InvalidArgument("isometry matrix must be integral");
    if (!(matrix_.transpose() * lattice_.gram() * matrix_ == lattice_.gram()))
      throw InvalidArgument("matrix does not preserve the Mukai pairing");
    const Rational det = char_poly(matrix_).coeff(0) * ((n % 2 == 0) ? 1 : -1);
    if (det != 1 && det != -1) throw InvalidArgument("isometry determinant must be +-1");
  }

  static LatticeIsometry identity(const MukaiLattice& lat) {
    return LatticeIsometry(lat, IntMatrix::identity(Rationals{}, lat.rank()), {});
  }

  const MukaiLattice& lattice() const { return lattice_; }
  const IntMatrix& matrix() const { return matrix_; }
  const std::vector<std::string>& word() const { return word_; }
  std::string word_string() const {
    if (word_.empty()) return "id";
    std::string s;
    for (const auto& w : word_) s += (s.empty() ? "" : " o ") + w;
    return s;
  }

  MukaiVector operator()(const MukaiVector& v) const {
    if (!(v.lattice == lattice_)) throw InvalidArgument("vector lives on a different lattice");
    std::vector<Rational> x;
    for (const auto& z : v.coordinates()) x.emplace_back(z);
    std::vector<Integer> out;
    for (const auto& y : matrix_.apply(x)) out.push_back(y.get_num());
    return MukaiVector::from_coordinates(lattice_, out);
  }

  bool is_identity() const { return matrix_ == IntMatrix::identity(Rationals{}, lattice_.rank()); }

 private:
  MukaiLattice lattice_;
  IntMatrix matrix_;
  std::vector<std::string> word_;
};

/// a o b: apply b, then a.
inline LatticeIsometry compose(const LatticeIsometry& a, const LatticeIsometry& b) {
  if (!(a.lattice() == b.lattice())) throw InvalidArgument("isometries live on different lattices");
  std::vector<std::string> word = a.word();
  word.insert(word.end(), b.word().begin(), b.word().end());
  return LatticeIsometry(a.lattice(), a.matrix() * b.matrix(), std::move(word));
}

inline LatticeIsometry inverse(const LatticeIsometry& a) {
  std::vector<std::string> word;
  for (auto it = a.word().rbegin(); it != a.word().rend(); ++it) word.push_back("(" + *it + ")^-1");
  return LatticeIsometry(a.lattice(), inverse(a.matrix()), std::move(word));
}

inline LatticeIsometry power(const LatticeIsometry& a, long n) {
  if (n < 0) return power(inverse(a), -n);
  LatticeIsometry r = LatticeIsometry::identity(a.lattice());
  for (long k = 0; k < n; ++k) r = compose(r, a);
  return r;
}

/// v -> v + (delta, v) delta, for a (-2)-class delta.
inline LatticeIsometry spherical_reflection(const MukaiVector& delta) {
  if (mukai_pairing(delta, delta) != -2) throw InvalidArgument("not spherical: (delta, delta) != -2");
  const MukaiLattice& lat = delta.lattice;
  const std::size_t n = lat.rank();
  IntMatrix d(Rationals{}, n, 1);
  const auto coords = delta.coordinates();
  for (std::size_t i = 0; i < n; ++i) d(i, 0) = coords[i];
  const IntMatrix m = IntMatrix::identity(Rationals{}, n) + d * (d.transpose() * lat.gram());
  std::string name = "T(";
  for (std::size_t i = 0; i < n; ++i) name += (i ? "," : "") + to_string(coords[i]);
  return LatticeIsometry(lat, m, {name + ")"});
}

/// Tensor by a line bundle with class l: (r, c, m) -> (r, c + r l, m + c.l + r l^2/2).
inline LatticeIsometry line_bundle_twist(const MukaiLattice& lat, const std::vector<Integer>& l) {
  if (l.size() != lat.ns_rank()) throw InvalidArgument("twist class has the wrong length");
  const Integer ll = lat.ns_product(l, l);
  if (ll % 2 != 0) throw InvalidArgument("twist class has odd self-intersection");
  const std::size_t n = lat.rank(), p = lat.ns_rank();
  IntMatrix m = IntMatrix::identity(Rationals{}, n);
  for (std::size_t i = 0; i < p; ++i) m(i + 1, 0) = l[i];
  m(n - 1, 0) = Rational(ll / 2);
  for (std::size_t j = 0; j < p; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < p; ++i) s += lat.ns_gram()(j, i) * Rational(l[i]);
    m(n - 1, j + 1) = s;
  }
  std::string name = "twist(";
  for (std::size_t i = 0; i < p; ++i) name += (i ? "," : "") + to_string(l[i]);
  return LatticeIsometry(lat, m, {name + ")"});
}

inline LatticeIsometry shift_isometry(const MukaiLattice& lat) {
  IntMatrix m = IntMatrix::identity(Rationals{}, lat.rank());
  for (std::size_t i = 0; i < lat.rank(); ++i) m(i, i) = -1;
  return LatticeIsometry(lat, m, {"[1]"});
}

inline bool is_cohomologically_trivial(const LatticeIsometry& a) { return a.is_identity(); }

inline LogEnclosure entropy_lower_bound(const LatticeIsometry& a, const Rational& tol) {
  return log_spectral_radius(a.matrix(), tol);
}

/// M = T_O o (- (x) O(-H)) on the rank-one lattice with H^2 = 2d.
inline LatticeIsometry phi_zero_generator(long d) {
  if (d < 2) throw InvalidArgument("phi_zero needs d >= 2");
  const MukaiLattice lat = MukaiLattice::degree(d);
  return compose(spherical_reflection(line_bundle_vector(lat, 0)), line_bundle_twist(lat, {Integer(-1)}));
}

struct PhiZeroResult {
  long d = 0;
  LatticeIsometry generator;
  LatticeIsometry fourth_power;
  bool trivial = false;             // fourth power is the identity
  long order = 0;                   // order of the generator, 0 when infinite or > 24
  LogEnclosure log_radius;          // of the fourth power
};

/// Fourth power of the generator, its triviality verdict and log rho. The
/// verdict is reported, not enforced: it only holds for d = 2.
inline PhiZeroResult phi_zero_scenario(long d, const Rational& tol = Rational(1, 1000000000)) {
  const LatticeIsometry m = phi_zero_generator(d);
  const LatticeIsometry m4 = power(m, 4);
  long order = 0;
  LatticeIsometry p = m;
  for (long k = 1; k <= 24; ++k, p = compose(p, m))
    if (p.is_identity()) {
      order = k;
      break;
    }
  return PhiZeroResult{d, m, m4, m4.is_identity(), order, entropy_lower_bound(m4, tol)};
}

/// Both sides of exp(sum_n tr(M^n) z^n / n) = 1 / det(1 - M z) up to z^order.
struct TraceZeta {
  std::vector<Rational> exp_side;
  std::vector<Rational> det_side;
  bool agree() const { return exp_side == det_side; }
};

inline TraceZeta trace_zeta(const IntMatrix& m, std::size_t order) {
  if (order < 1) throw InvalidArgument("trace_zeta order must be at least 1");
  if (m.rows() != m.cols()) throw InvalidArgument("trace_zeta needs a square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> tr(order + 1, Rational(0));
  IntMatrix p = IntMatrix::identity(Rationals{}, n);
  for (std::size_t k = 1; k <= order; ++k) {
    p = p * m;
    for (std::size_t i = 0; i < n; ++i) tr[k] += p(i, i);
  }
  // E = exp(S) satisfies k e_k = sum_{j=1..k} tr_j e_{k-j}.
  TraceZeta out;
  out.exp_side.assign(order + 1, Rational(0));
  out.exp_side[0] = 1;
  for (std::size_t k = 1; k <= order; ++k) {
    Rational s = 0;
    for (std::size_t j = 1; j <= k; ++j) s += tr[j] * out.exp_side[k - j];
    out.exp_side[k] = s / Rational(static_cast<long>(k));
  }
  // det(1 - M z) = z^n chi(1/z); invert the power series.
  const IntPolynomial den = char_poly(m).reversed(n);
  out.det_side.assign(order + 1, Rational(0));
  out.det_side[0] = 1 / den.coeff(0);
  for (std::size_t k = 1; k <= order; ++k) {
    Rational s = 0;
    for (std::size_t j = 1; j <= k; ++j) s += den.coeff(j) * out.det_side[k - j];
    out.det_side[k] = -s / den.coeff(0);
  }
  return out;
}

}  // namespace catdyn
