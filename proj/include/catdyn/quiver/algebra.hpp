#pragma once

// Finite-dimensional algebras with a basis of paths. Basis elements carry a
// source and target vertex; the first nvertices() basis elements are the
// vertex idempotents and the rest span the radical. Products concatenate:
// x*y is "x then y", nonzero only when target(x) == source(y).

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/exact/matrix.hpp"
#include "catdyn/quiver/presentation.hpp"

namespace catdyn {

struct BasisElement {
  std::string label;
  std::uint32_t source = 0, target = 0;
};

template <ExactField F>
class FinDimAlgebra {
 public:
  using Field = F;
  using Element = typename F::Element;
  using Vec = std::vector<std::pair<std::uint32_t, Element>>;  // sorted sparse vector

  FinDimAlgebra(F field, std::vector<std::string> vertices, std::vector<BasisElement> basis, std::vector<Vec> table)
      : field_(std::move(field)), vertices_(std::move(vertices)), basis_(std::move(basis)), table_(std::move(table)) {
    const std::size_t n = basis_.size(), nv = vertices_.size();
    if (n < nv) throw InvalidArgument("basis shorter than the vertex list");
    if (table_.size() != n * n) throw InvalidArgument("multiplication table has the wrong size");
    for (std::size_t v = 0; v < nv; ++v)
      if (basis_[v].source != v || basis_[v].target != v) throw InvalidArgument("first basis elements must be idempotents");
    blocks_.assign(nv * nv, {});
    for (std::uint32_t i = 0; i < n; ++i) blocks_[basis_[i].source * nv + basis_[i].target].push_back(i);
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t nvertices() const { return vertices_.size(); }
  const std::vector<std::string>& vertex_names() const { return vertices_; }
  const BasisElement& basis(std::size_t i) const { return basis_[i]; }
  std::uint32_t source(std::size_t i) const { return basis_[i].source; }
  std::uint32_t target(std::size_t i) const { return basis_[i].target; }
  bool is_radical(std::size_t i) const { return i >= vertices_.size(); }

  /// Product of basis elements i*j.
  const Vec& mul(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  /// Basis of e_a A e_b: elements with source a and target b.
  const std::vector<std::uint32_t>& block(std::size_t a, std::size_t b) const { return blocks_[a * nvertices() + b]; }
  std::size_t block_dim(std::size_t a, std::size_t b) const { return block(a, b).size(); }

  Vec multiply(const Vec& x, const Vec& y) const {
    std::map<std::uint32_t, Element> acc;
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y)
        for (const auto& [k, c] : mul(i, j)) {
          auto [it, fresh] = acc.try_emplace(k, field_.zero());
          field_.add_mul(it->second, field_.mul(a, b), c);
        }
    Vec out;
    for (auto& [k, v] : acc)
      if (!field_.is_zero(v)) out.emplace_back(k, v);
    return out;
  }

  bool is_associative() const {
    for (std::uint32_t i = 0; i < dim(); ++i)
      for (std::uint32_t j = 0; j < dim(); ++j)
        for (std::uint32_t k = 0; k < dim(); ++k) {
          Vec ij = mul(i, j), jk = mul(j, k);
          if (!equal(multiply(ij, {{k, field_.one()}}), multiply({{i, field_.one()}}, jk))) return false;
        }
    return true;
  }

  /// Idempotents are orthogonal and sum to the unit.
  bool unit_axioms_hold() const {
    for (std::uint32_t v = 0; v < nvertices(); ++v)
      for (std::uint32_t w = 0; w < nvertices(); ++w) {
        const Vec& p = mul(v, w);
        if (v == w && !(p.size() == 1 && p[0].first == v && field_.equal(p[0].second, field_.one()))) return false;
        if (v != w && !p.empty()) return false;
      }
    for (std::uint32_t i = 0; i < dim(); ++i) {
      Vec left, right;
      for (std::uint32_t v = 0; v < nvertices(); ++v) {
        for (const auto& t : mul(v, i)) left.push_back(t);
        for (const auto& t : mul(i, v)) right.push_back(t);
      }
      const Vec unit_i{{i, field_.one()}};
      if (!equal(left, unit_i) || !equal(right, unit_i)) return false;
    }
    return true;
  }

  /// Multiplication tables agree entry by entry (same basis order).
  friend bool same_table(const FinDimAlgebra& a, const FinDimAlgebra& b) {
    if (a.dim() != b.dim() || a.nvertices() != b.nvertices()) return false;
    for (std::size_t i = 0; i < a.table_.size(); ++i)
      if (!a.equal(a.table_[i], b.table_[i])) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (a.basis_[i].source != b.basis_[i].source || a.basis_[i].target != b.basis_[i].target) return false;
    return true;
  }

  const std::vector<Vec>& table() const { return table_; }
  const std::vector<BasisElement>& basis_elements() const { return basis_; }

 private:
  bool equal(const Vec& x, const Vec& y) const {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].first != y[i].first || !field_.equal(x[i].second, y[i].second)) return false;
    return true;
  }

  F field_;
  std::vector<std::string> vertices_;
  std::vector<BasisElement> basis_;
  std::vector<Vec> table_;
  std::vector<std::vector<std::uint32_t>> blocks_;
};

template <ExactField F>
using AlgebraPtr = std::shared_ptr<const FinDimAlgebra<F>>;

/// The ground field as a one-vertex algebra; left factor of right modules.
template <ExactField F>
AlgebraPtr<F> ground_algebra(const F& field) {
  using Vec = typename FinDimAlgebra<F>::Vec;
  return std::make_shared<const FinDimAlgebra<F>>(field, std::vector<std::string>{"*"},
                                                   std::vector<BasisElement>{{"1", 0, 0}},
                                                   std::vector<Vec>{Vec{{0, field.one()}}});
}

namespace detail {

struct Path {
  std::uint32_t start = 0;
  std::vector<std::size_t> arrows;  // traversal order
  std::uint32_t end(const AlgebraPresentation& p) const {
    return arrows.empty() ? start : static_cast<std::uint32_t>(p.arrows[arrows.back()].target);
  }
  friend bool operator<(const Path& a, const Path& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() > b.arrows.size();  // longest first
    if (a.start != b.start) return a.start < b.start;
    return a.arrows < b.arrows;
  }
};

inline std::string path_label(const AlgebraPresentation& p, const Path& path) {
  if (path.arrows.empty()) return "e_" + p.vertices[path.start];
  std::string s;
  for (auto it = path.arrows.rbegin(); it != path.arrows.rend(); ++it) s += (s.empty() ? "" : "*") + p.arrows[*it].name;
  return s;
}

}  // namespace detail

/// Reduced path basis of kQ / (relations + paths of length >= N), with the
/// structure constants written over `field`.
template <ExactField F>
AlgebraPtr<F> build_algebra(const AlgebraPresentation& p, const F& field) {
  using detail::Path;
  using Vec = typename FinDimAlgebra<F>::Vec;
  const std::size_t N = p.truncation;
  if (field.spec().characteristic != p.field.characteristic)
    throw FieldMismatch("presentation is over " + p.field.name() + ", requested " + field.spec().name());

  // All paths of length < N.
  std::vector<Path> paths;
  std::vector<Path> frontier;
  for (std::uint32_t v = 0; v < p.vertices.size(); ++v) frontier.push_back({v, {}});
  for (std::size_t len = 0; len < N && !frontier.empty(); ++len) {
    std::vector<Path> next;
    for (const auto& q : frontier) {
      paths.push_back(q);
      if (paths.size() > 20000) throw InvalidArgument("path enumeration exceeds 20000 paths; lower the truncation");
      for (std::size_t a = 0; a < p.arrows.size(); ++a)
        if (p.arrows[a].source == q.end(p)) {
          Path r = q;
          r.arrows.push_back(a);
          next.push_back(std::move(r));
        }
    }
    frontier = std::move(next);
  }
  std::sort(paths.begin(), paths.end());
  std::map<Path, std::size_t> column;
  for (std::size_t i = 0; i < paths.size(); ++i) column[paths[i]] = i;

  auto concat = [&](const Path& a, const Path& b) -> std::optional<Path> {
    if (a.end(p) != b.start) return std::nullopt;
    Path r = a;
    r.arrows.insert(r.arrows.end(), b.arrows.begin(), b.arrows.end());
    if (r.arrows.size() >= N) return std::nullopt;
    return r;
  };

  // Ideal generators u * r * w, truncated.
  std::vector<std::vector<typename F::Element>> rows;
  for (const auto& rel : p.relations) {
    const auto& t0 = rel.terms.front();
    const std::uint32_t s = static_cast<std::uint32_t>(t0.arrows.empty() ? t0.vertex : p.arrows[t0.arrows.front()].source);
    const std::uint32_t t = static_cast<std::uint32_t>(t0.arrows.empty() ? t0.vertex : p.arrows[t0.arrows.back()].target);
    for (const auto& u : paths) {
      if (u.end(p) != s) continue;
      for (const auto& w : paths) {
        if (w.start != t) continue;
        std::vector<typename F::Element> row(paths.size(), field.zero());
        bool nonzero = false;
        for (const auto& term : rel.terms) {
          const Path tp{s, term.arrows};
          auto uw = concat(u, tp);
          if (!uw) continue;
          auto full = concat(*uw, w);
          if (!full) continue;
          auto& x = row[column.at(*full)];
          x = field.add(x, field.from_rational(term.coeff));
          nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }

  std::vector<bool> pivot(paths.size(), false);
  Matrix<F> red(field, rows.size(), paths.size());
  RrefResult rr;
  if (!rows.empty()) {
    red = Matrix<F>::from_rows(field, rows);
    rr = rref_in_place(red);
    for (auto c : rr.pivots) {
      if (paths[c].arrows.empty()) throw InvalidArgument("inconsistent relations: a vertex idempotent lies in the ideal");
      pivot[c] = true;
    }
  }

  // Basis: idempotents first (vertex order), then surviving paths by length.
  std::vector<std::size_t> basis_cols;
  for (std::uint32_t v = 0; v < p.vertices.size(); ++v) basis_cols.push_back(column.at(Path{v, {}}));
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < paths.size(); ++c)
    if (!pivot[c] && !paths[c].arrows.empty()) rest.push_back(c);
  std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = paths[a];
    const auto& y = paths[b];
    if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
    if (x.start != y.start) return x.start < y.start;
    return x.arrows < y.arrows;
  });
  basis_cols.insert(basis_cols.end(), rest.begin(), rest.end());
  std::vector<std::int64_t> basis_index(paths.size(), -1);
  for (std::size_t i = 0; i < basis_cols.size(); ++i) basis_index[basis_cols[i]] = static_cast<std::int64_t>(i);

  // Normal form of a path column.
  std::vector<std::int64_t> pivot_row(paths.size(), -1);
  for (std::size_t r = 0; r < rr.pivots.size(); ++r) pivot_row[rr.pivots[r]] = static_cast<std::int64_t>(r);
  auto normal_form = [&](std::size_t c) {
    Vec out;
    if (!pivot[c]) {
      out.emplace_back(static_cast<std::uint32_t>(basis_index[c]), field.one());
      return out;
    }
    const std::size_t r = static_cast<std::size_t>(pivot_row[c]);
    for (std::size_t k = 0; k < paths.size(); ++k) {
      if (k == c || field.is_zero(red(r, k))) continue;
      out.emplace_back(static_cast<std::uint32_t>(basis_index[k]), field.neg(red(r, k)));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  };

  const std::size_t n = basis_cols.size();
  std::vector<BasisElement> basis;
  for (auto c : basis_cols) basis.push_back({detail::path_label(p, paths[c]), paths[c].start, paths[c].end(p)});
  std::vector<Vec> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto prod = concat(paths[basis_cols[i]], paths[basis_cols[j]]);
      if (prod) table[i * n + j] = normal_form(column.at(*prod));
    }
  return std::make_shared<const FinDimAlgebra<F>>(field, p.vertices, std::move(basis), std::move(table));
}

/// Same basis, reversed multiplication, swapped endpoints.
template <ExactField F>
AlgebraPtr<F> opposite(const FinDimAlgebra<F>& a) {
  using Vec = typename FinDimAlgebra<F>::Vec;
  const std::size_t n = a.dim();
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back({a.basis(i).label, a.target(i), a.source(i)});
  std::vector<Vec> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = a.mul(j, i);
  return std::make_shared<const FinDimAlgebra<F>>(a.field(), a.vertex_names(), std::move(basis), std::move(table));
}

/// A^e = A^op (x) A with (x (x) y)(x' (x) y') = (x' x) (x) (y y'). The vertex
/// (j, l) is the idempotent e_j (x) e_l; right A^e-modules are A-bimodules via
/// m . (x (x) y) = x m y.
template <ExactField F>
AlgebraPtr<F> enveloping(const FinDimAlgebra<F>& a) {
  using Vec = typename FinDimAlgebra<F>::Vec;
  const F& k = a.field();
  const std::size_t n = a.dim(), nv = a.nvertices();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t j = 0; j < nv; ++j)
    for (std::uint32_t l = 0; l < nv; ++l) pairs.emplace_back(j, l);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      if (x >= nv || y >= nv) pairs.emplace_back(x, y);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  for (std::uint32_t i = 0; i < pairs.size(); ++i) index[pairs[i]] = i;

  std::vector<std::string> vertices;
  for (std::uint32_t j = 0; j < nv; ++j)
    for (std::uint32_t l = 0; l < nv; ++l) vertices.push_back("(" + a.vertex_names()[j] + "," + a.vertex_names()[l] + ")");
  std::vector<BasisElement> basis;
  for (const auto& [x, y] : pairs)
    basis.push_back({a.basis(x).label + "|" + a.basis(y).label, static_cast<std::uint32_t>(a.target(x) * nv + a.source(y)),
                     static_cast<std::uint32_t>(a.source(x) * nv + a.target(y))});
  const std::size_t m = pairs.size();
  std::vector<Vec> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const auto& left = a.mul(pairs[j].first, pairs[i].first);
      const auto& right = a.mul(pairs[i].second, pairs[j].second);
      Vec out;
      for (const auto& [p, c] : left)
        for (const auto& [q, d] : right) out.emplace_back(index.at({p, q}), k.mul(c, d));
      std::sort(out.begin(), out.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
      table[i * m + j] = std::move(out);
    }
  return std::make_shared<const FinDimAlgebra<F>>(k, std::move(vertices), std::move(basis), std::move(table));
}

/// Same basis and structure constants over a larger field.
template <ExactField From, ExactField To>
AlgebraPtr<To> base_change(const FinDimAlgebra<From>& a, const FieldEmbedding<From, To>& emb) {
  using Vec = typename FinDimAlgebra<To>::Vec;
  std::vector<Vec> table;
  for (const auto& v : a.table()) {
    Vec out;
    for (const auto& [k, c] : v) out.emplace_back(k, emb(c));
    table.push_back(std::move(out));
  }
  return std::make_shared<const FinDimAlgebra<To>>(emb.target(), a.vertex_names(), a.basis_elements(), std::move(table));
}

template <ExactField From, ExactField To>
AlgebraPtr<To> base_change(const FinDimAlgebra<From>& a, const To& target) {
  return base_change(a, FieldEmbedding<From, To>(a.field(), target));
}

/// Tables over two fields agree once the source coefficients are embedded.
template <ExactField From, ExactField To>
bool same_structure_constants(const FinDimAlgebra<From>& a, const FinDimAlgebra<To>& b, const FieldEmbedding<From, To>& emb) {
  if (a.dim() != b.dim()) return false;
  const auto& k = b.field();
  for (std::size_t i = 0; i < a.table().size(); ++i) {
    const auto& x = a.table()[i];
    const auto& y = b.table()[i];
    if (x.size() != y.size()) return false;
    for (std::size_t t = 0; t < x.size(); ++t)
      if (x[t].first != y[t].first || !k.equal(emb(x[t].second), y[t].second)) return false;
  }
  return true;
}

}  // namespace catdyn
