#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/exact/field.hpp"
#include "catdyn/exact/sparse.hpp"

namespace catdyn {

/// Dense row-major matrix over an exact field.
template <ExactField F>
class Matrix {
 public:
  using Field = F;
  using Element = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_rows(const F& field, const std::vector<std::vector<Element>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InvalidArgument("ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_integers(const F& field, const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Element>> converted;
    for (const auto& r : rows) {
      converted.emplace_back();
      for (long v : r) converted.back().push_back(field.from_integer(v));
    }
    return from_rows(field, converted);
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double density() const {
    if (data_.empty()) return 0.0;
    std::size_t nz = 0;
    for (const auto& x : data_)
      if (!field_.is_zero(x)) ++nz;
    return static_cast<double>(nz) / static_cast<double>(data_.size());
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& other) const {
    require_same_field(other);
    if (cols_ != other.rows_) throw InvalidArgument("matrix product shape mismatch");
    Matrix r(field_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < other.cols_; ++j) field_.add_mul(r(i, j), a, other(k, j));
      }
    return r;
  }

  Matrix operator+(const Matrix& other) const {
    require_same_field(other);
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgument("matrix sum shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], other.data_[i]);
    return r;
  }

  Matrix operator-(const Matrix& other) const {
    require_same_field(other);
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgument("matrix difference shape mismatch");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], other.data_[i]);
    return r;
  }

  std::vector<Element> apply(const std::vector<Element>& v) const {
    if (v.size() != cols_) throw InvalidArgument("vector length mismatch");
    std::vector<Element> out(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if (field_.is_zero((*this)(i, j))) continue;
        field_.add_mul(out[i], (*this)(i, j), v[j]);
      }
    return out;
  }

  /// Block concatenation [this | other]. Entries from different fields are rejected.
  Matrix hstack(const Matrix& other) const {
    require_same_field(other);
    if (rows_ != other.rows_) throw InvalidArgument("hstack row mismatch");
    Matrix r(field_, rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < other.cols_; ++j) r(i, cols_ + j) = other(i, j);
    }
    return r;
  }

  Matrix vstack(const Matrix& other) const {
    require_same_field(other);
    if (cols_ != other.cols_) throw InvalidArgument("vstack column mismatch");
    Matrix r(field_, rows_ + other.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < other.rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(rows_ + i, j) = other(i, j);
    return r;
  }

  SparseMatrix<F> to_sparse() const {
    SparseMatrix<F> s(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) s.add(i, j, (*this)(i, j));
    s.finalize();
    return s;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!a.field_.equal(a.data_[i], b.data_[i])) return false;
    return true;
  }

 private:
  void require_same_field(const Matrix& other) const {
    if (!(field_ == other.field_))
      throw FieldMismatch("entries over " + field_.spec().name() + " and " + other.field_.spec().name());
  }

  F field_;
  std::size_t rows_, cols_;
  std::vector<Element> data_;
};

struct RrefResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form in place. Pivot columns are the leftmost
/// possible ones, so the result is canonical.
template <ExactField F>
RrefResult rref_in_place(Matrix<F>& m) {
  const F& k = m.field();
  RrefResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && k.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const auto s = k.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = k.mul(m(r, j), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || k.is_zero(m(i, c))) continue;
      const auto f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = k.sub(m(i, j), k.mul(f, m(r, j)));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

template <ExactField F>
RrefResult rref(Matrix<F> m) {
  return rref_in_place(m);
}

struct RankOptions {
  /// Matrices with a smaller fraction of nonzero entries use sparse elimination.
  double density_threshold = 0.2;
};

template <ExactField F>
std::size_t rank(const Matrix<F>& m, RankOptions options = {}) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.density() < options.density_threshold) return sparse_rank(m.to_sparse());
  return rref(m).rank;
}

/// Basis of the right kernel {x : m x = 0}, one basis vector per column.
template <ExactField F>
Matrix<F> nullspace(const Matrix<F>& m) {
  const F& k = m.field();
  Matrix<F> red = m;
  const RrefResult res = rref_in_place(red);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : res.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<F> basis(k, m.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    basis(free[f], f) = k.one();
    for (std::size_t r = 0; r < res.rank; ++r) basis(res.pivots[r], f) = k.neg(red(r, free[f]));
  }
  return basis;
}

template <ExactField F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<F> aug = m.hstack(Matrix<F>::identity(m.field(), n));
  const RrefResult res = rref_in_place(aug);
  if (res.rank < n || res.pivots[n - 1] != n - 1) throw InvalidArgument("matrix is singular");
  Matrix<F> inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

/// Entry-wise image of `m` under a field embedding.
template <ExactField From, ExactField To>
Matrix<To> extend_scalars(const Matrix<From>& m, const FieldEmbedding<From, To>& embedding) {
  Matrix<To> out(embedding.target(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = embedding(m(i, j));
  return out;
}

/// Same as above with the canonical embedding; throws NoEmbedding when the
/// target does not contain the source field.
template <ExactField From, ExactField To>
Matrix<To> extend_scalars(const Matrix<From>& m, const To& target) {
  return extend_scalars(m, FieldEmbedding<From, To>(m.field(), target));
}

}  // namespace catdyn
