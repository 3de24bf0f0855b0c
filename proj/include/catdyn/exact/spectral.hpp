#pragma once

// Characteristic polynomials and certified spectral radii of integer
// matrices. Enclosures come from Sturm counts on exact rationals; floating
// point only appears in the outward-rounded log enclosure.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/exact/matrix.hpp"
#include "catdyn/exact/polynomial.hpp"

namespace catdyn {

using IntMatrix = Matrix<Rationals>;

inline IntMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
  return IntMatrix::from_integers(Rationals{}, rows);
}

inline bool is_integral(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).get_den() != 1) return false;
  return true;
}

inline IntMatrix kronecker_product(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r(Rationals{}, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

/// det(x I - m) via reduction to upper Hessenberg form.
inline IntPolynomial char_poly(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("char_poly of a non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix h = m;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t k = 0; k < n; ++k) std::swap(h(piv, k), h(j + 1, k));
      for (std::size_t k = 0; k < n; ++k) std::swap(h(k, piv), h(k, j + 1));
    }
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h(i, j) == 0) continue;
      const Rational u = h(i, j) / h(j + 1, j);
      for (std::size_t k = 0; k < n; ++k) h(i, k) -= u * h(j + 1, k);
      for (std::size_t k = 0; k < n; ++k) h(k, j + 1) += u * h(k, i);
    }
  }
  // p_k = char poly of the leading k x k block.
  std::vector<IntPolynomial> p{IntPolynomial::constant(1)};
  const IntPolynomial x = IntPolynomial::monomial(1);
  for (std::size_t k = 0; k < n; ++k) {
    IntPolynomial next = (x - IntPolynomial::constant(h(k, k))) * p[k];
    Rational prod = 1;
    for (std::size_t i = k; i-- > 0;) {
      prod *= h(i + 1, i);
      if (prod == 0) break;
      next = next - IntPolynomial::constant(h(i, k) * prod) * p[i];
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

struct RadiusEnclosure {
  Rational lower, upper;
  bool exact = false;

  bool contains(const Rational& x) const { return lower <= x && x <= upper; }
  bool contains(double x) const { return contains(Rational(x)); }
  Rational width() const { return upper - lower; }
};

/// Enclosure of log rho. `minus_infinity` is set for rho = 0.
struct LogEnclosure {
  Rational lower, upper;
  bool exact = false;
  bool minus_infinity = false;

  bool contains(double x) const {
    if (minus_infinity) return false;
    return Rational(lower) <= Rational(x) && Rational(x) <= upper;
  }
};

namespace detail {

/// Largest real root of a squarefree polynomial with at least one real root
/// in [lo, hi], isolated to width <= tol. Returns (a, b] with one root.
inline RadiusEnclosure isolate_largest_root(const IntPolynomial& q, Rational lo, Rational hi, const Rational& tol) {
  const auto sturm = sturm_sequence(q);
  // Keep (lo, hi] holding the largest root.
  if (q.sign_at(lo) == 0 && count_roots(sturm, lo, hi) == 0) return {lo, lo, true};
  while (hi - lo > tol) {
    const Rational mid = (lo + hi) / 2;
    if (count_roots(sturm, mid, hi) > 0) lo = mid;
    else hi = mid;
  }
  RadiusEnclosure e{lo, hi, false};
  if (q.sign_at(hi) == 0) e = {hi, hi, true};
  return e;
}

inline Rational double_down(double x) {
  return Rational(std::nextafter(std::nextafter(x, -INFINITY), -INFINITY));
}
inline Rational double_up(double x) {
  return Rational(std::nextafter(std::nextafter(x, INFINITY), INFINITY));
}

}  // namespace detail

/// Certified enclosure of max |eigenvalue|. rho is the largest nonnegative
/// root of R(x^2), R = char_poly(m (x) m), whose roots are the products of
/// pairs of eigenvalues.
inline RadiusEnclosure spectral_radius(const IntMatrix& m, const Rational& tol) {
  if (tol <= 0) throw InvalidArgument("tolerance must be positive");
  if (m.rows() != m.cols()) throw InvalidArgument("spectral_radius of a non-square matrix");
  if (m.rows() == 0) return {0, 0, true};
  const IntPolynomial r = char_poly(kronecker_product(m, m));
  const IntPolynomial q = squarefree_part(r.compose_square());
  Rational bound = cauchy_bound(q);
  // Since rho is an algebraic integer, it is rational only if it is an integer.
  RadiusEnclosure e = detail::isolate_largest_root(q, Rational(0), bound, std::min(tol, Rational(1, 4)));
  if (!e.exact) {
    const Integer k = ceil(e.lower);
    if (Rational(k) <= e.upper && q.sign_at(Rational(k)) == 0) e = {Rational(k), Rational(k), true};
  }
  if (!e.exact) e = detail::isolate_largest_root(q, e.lower, e.upper, tol);
  return e;
}

/// Kronecker test: every eigenvalue of m is zero or a root of unity.
inline bool is_quasi_unipotent_or_nilpotent(const IntMatrix& m) {
  return kronecker_split(char_poly(m)).roots_of_unity_only();
}

/// Enclosure of log rho(m) with width about `tol`. Exact zero when all
/// nonzero eigenvalues are roots of unity (Kronecker's criterion).
inline LogEnclosure log_spectral_radius(const IntMatrix& m, const Rational& tol) {
  if (tol <= 0) throw InvalidArgument("tolerance must be positive");
  if (!is_integral(m)) throw InvalidArgument("log_spectral_radius needs an integer matrix");
  const KroneckerSplit split = kronecker_split(char_poly(m));
  if (split.roots_of_unity_only()) {
    if (split.cyclotomic_indices.empty()) return {0, 0, false, true};
    return {0, 0, true, false};
  }
  // rho > 1 here, so a radius width of tol bounds the log width by tol.
  const RadiusEnclosure r = spectral_radius(m, tol / 2);
  if (r.exact) {
    const double v = std::log(r.lower.get_d());
    return {detail::double_down(v), detail::double_up(v), false, false};
  }
  const double lo = std::log(detail::double_down(r.lower.get_d()).get_d());
  const double hi = std::log(detail::double_up(r.upper.get_d()).get_d());
  return {detail::double_down(lo), detail::double_up(hi), false, false};
}

}  // namespace catdyn
