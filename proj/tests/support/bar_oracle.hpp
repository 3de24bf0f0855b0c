#pragma once

// Reference computations through the normalized bar construction relative to
// the vertex idempotents. Dense linear algebra only; shares nothing with the
// resolution code except the algebra tables.

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "catdyn/exact/matrix.hpp"
#include "catdyn/homological/complex.hpp"
#include "catdyn/homological/module.hpp"
#include "catdyn/quiver/algebra.hpp"

namespace oracle {

using namespace catdyn;

/// Right module over Λ with a basis of vertex-homogeneous vectors.
/// act[x] is the matrix of m |-> m.x on coordinates.
template <ExactField F>
struct RightModule {
  AlgebraPtr<F> algebra;
  std::vector<std::uint32_t> vertex;
  std::vector<Matrix<F>> act;
  std::size_t dim() const { return vertex.size(); }
};

/// An A-A bimodule viewed as a right module over enveloping(A):
/// m.(x, y) = x m y.
template <ExactField F>
RightModule<F> as_enveloping_module(const ConcreteBimodule<F>& M, const AlgebraPtr<F>& env) {
  const F& k = M.L->field();
  const std::size_t nv = M.L->nvertices(), n = M.dim();
  RightModule<F> out{env, {}, {}};
  for (const auto& s : M.label) out.vertex.push_back(static_cast<std::uint32_t>(s.j * nv + s.l));
  // enveloping basis labels read "x|y"
  std::map<std::string, std::uint32_t> by_label;
  for (std::uint32_t i = 0; i < M.L->dim(); ++i) by_label[M.L->basis(i).label] = i;
  for (std::size_t e = 0; e < env->dim(); ++e) {
    const std::string& lab = env->basis(e).label;
    const auto bar = lab.find('|');
    const std::uint32_t x = by_label.at(lab.substr(0, bar)), y = by_label.at(lab.substr(bar + 1));
    Matrix<F> m(k, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [p, cp] : M.left[x][i])
        for (const auto& [q, cq] : M.right[y][p]) m(q, i) = k.add(m(q, i), k.mul(cp, cq));
    out.act.push_back(std::move(m));
  }
  return out;
}

/// A right module over A (left factor the ground field) in oracle form.
template <ExactField F>
RightModule<F> as_right_module(const ConcreteBimodule<F>& M) {
  const F& k = M.R->field();
  const std::size_t n = M.dim();
  RightModule<F> out{M.R, {}, {}};
  for (const auto& s : M.label) out.vertex.push_back(s.l);
  for (std::size_t y = 0; y < M.R->dim(); ++y) {
    Matrix<F> m(k, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [q, c] : M.right[y][i]) m(q, i) = c;
    out.act.push_back(std::move(m));
  }
  return out;
}

namespace detail {

/// Composable sequences x_1 ... x_n of radical basis elements, grouped by
/// starting vertex; target(x_i) = source(x_{i+1}).
template <ExactField F>
std::vector<std::vector<std::uint32_t>> chains(const FinDimAlgebra<F>& A, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> out{{}};
  for (std::size_t step = 0; step < n; ++step) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& c : out)
      for (std::uint32_t x = static_cast<std::uint32_t>(A.nvertices()); x < A.dim(); ++x)
        if (c.empty() || A.target(c.back()) == A.source(x)) {
          auto d = c;
          d.push_back(x);
          next.push_back(std::move(d));
        }
    out = std::move(next);
  }
  return out;
}

template <ExactField F>
std::size_t rank_of(const Matrix<F>& m) {
  return m.rows() == 0 || m.cols() == 0 ? 0 : rref(m).rank;
}

}  // namespace detail

/// Ext^n_Λ(X, Y) for n = 0..max_degree via Hom_E(X (x)_E rad^{(x) n}, Y).
template <ExactField F>
std::map<int, std::size_t> ext(const RightModule<F>& X, const RightModule<F>& Y, std::size_t max_degree) {
  const FinDimAlgebra<F>& A = *X.algebra;
  const F& k = A.field();
  struct Cell {
    std::uint32_t m;
    std::vector<std::uint32_t> xs;
    std::uint32_t y;
  };
  auto cochains = [&](std::size_t n) {
    std::vector<Cell> cells;
    for (const auto& xs : detail::chains(A, n))
      for (std::uint32_t m = 0; m < X.dim(); ++m) {
        if (!xs.empty() && X.vertex[m] != A.source(xs.front())) continue;
        const std::uint32_t end = xs.empty() ? X.vertex[m] : A.target(xs.back());
        for (std::uint32_t y = 0; y < Y.dim(); ++y)
          if (Y.vertex[y] == end) cells.push_back({m, xs, y});
      }
    return cells;
  };
  std::vector<std::vector<Cell>> C;
  for (std::size_t n = 0; n <= max_degree + 1; ++n) C.push_back(cochains(n));
  auto key = [](const Cell& c) { return std::make_tuple(c.m, c.xs, c.y); };
  std::vector<std::map<std::tuple<std::uint32_t, std::vector<std::uint32_t>, std::uint32_t>, std::size_t>> index(C.size());
  for (std::size_t n = 0; n < C.size(); ++n)
    for (std::size_t i = 0; i < C[n].size(); ++i) index[n][key(C[n][i])] = i;

  // (delta f)(m, x_1..x_{n+1}) = f(m x_1, x_2..) + sum (-1)^i f(.., x_i x_{i+1}, ..)
  //                            + (-1)^{n+1} f(m, x_1..x_n) x_{n+1}
  std::vector<std::size_t> ranks;
  for (std::size_t n = 0; n + 1 < C.size(); ++n) {
    Matrix<F> d(k, C[n + 1].size(), C[n].size());
    for (std::size_t r = 0; r < C[n + 1].size(); ++r) {
      const Cell& out = C[n + 1][r];
      const auto& xs = out.xs;
      // m x_1
      for (std::uint32_t m2 = 0; m2 < X.dim(); ++m2) {
        const auto c = X.act[xs[0]](m2, out.m);
        if (k.is_zero(c)) continue;
        auto it = index[n].find({m2, std::vector<std::uint32_t>(xs.begin() + 1, xs.end()), out.y});
        if (it != index[n].end()) d(r, it->second) = k.add(d(r, it->second), c);
      }
      for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        for (const auto& [p, c] : A.mul(xs[i], xs[i + 1])) {
          if (p < A.nvertices()) continue;
          std::vector<std::uint32_t> ys(xs.begin(), xs.begin() + static_cast<long>(i));
          ys.push_back(p);
          ys.insert(ys.end(), xs.begin() + static_cast<long>(i) + 2, xs.end());
          auto it = index[n].find({out.m, ys, out.y});
          if (it == index[n].end()) continue;
          const auto s = (i + 1) % 2 ? k.neg(c) : c;
          d(r, it->second) = k.add(d(r, it->second), s);
        }
      // f(..) x_{n+1}: y' with y'.x = y
      for (std::uint32_t y2 = 0; y2 < Y.dim(); ++y2) {
        const auto c = Y.act[xs.back()](out.y, y2);
        if (k.is_zero(c)) continue;
        auto it = index[n].find({out.m, std::vector<std::uint32_t>(xs.begin(), xs.end() - 1), y2});
        if (it == index[n].end()) continue;
        const auto s = (n + 1) % 2 ? k.neg(c) : c;
        d(r, it->second) = k.add(d(r, it->second), s);
      }
    }
    ranks.push_back(detail::rank_of(d));
  }
  std::map<int, std::size_t> out;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    const std::size_t h = C[n].size() - ranks[n] - (n > 0 ? ranks[n - 1] : 0);
    if (h) out[static_cast<int>(n)] = h;
  }
  return out;
}

/// HH_n(A) for n = 0..max_degree via A (x)_{E^e} rad^{(x)_E n}.
template <ExactField F>
std::map<int, std::size_t> hochschild_homology(const FinDimAlgebra<F>& A, std::size_t max_degree) {
  const F& k = A.field();
  using Key = std::pair<std::uint32_t, std::vector<std::uint32_t>>;
  auto chains_n = [&](std::size_t n) {
    std::vector<Key> cells;
    for (const auto& xs : detail::chains(A, n))
      for (std::uint32_t a = 0; a < A.dim(); ++a) {
        if (xs.empty()) {
          if (A.source(a) == A.target(a)) cells.push_back({a, xs});
        } else if (A.source(a) == A.target(xs.back()) && A.target(a) == A.source(xs.front())) {
          cells.push_back({a, xs});
        }
      }
    return cells;
  };
  std::vector<std::vector<Key>> C;
  for (std::size_t n = 0; n <= max_degree + 1; ++n) C.push_back(chains_n(n));
  std::vector<std::map<Key, std::size_t>> index(C.size());
  for (std::size_t n = 0; n < C.size(); ++n)
    for (std::size_t i = 0; i < C[n].size(); ++i) index[n][C[n][i]] = i;
  // b(a, x_1..x_n) = (a x_1, x_2..) + sum (-1)^i (a, .., x_i x_{i+1}, ..) + (-1)^n (x_n a, x_1..x_{n-1})
  // (products here are "then" order: a x_1 means a followed by x_1)
  std::vector<std::size_t> ranks(C.size(), 0);
  for (std::size_t n = 1; n < C.size(); ++n) {
    Matrix<F> d(k, C[n - 1].size(), C[n].size());
    for (std::size_t col = 0; col < C[n].size(); ++col) {
      const auto& [a, xs] = C[n][col];
      auto put = [&](const Key& key, const typename F::Element& c) {
        auto it = index[n - 1].find(key);
        if (it != index[n - 1].end()) d(it->second, col) = k.add(d(it->second, col), c);
      };
      for (const auto& [p, c] : A.mul(a, xs[0])) put({p, {xs.begin() + 1, xs.end()}}, c);
      for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        for (const auto& [p, c] : A.mul(xs[i], xs[i + 1])) {
          if (p < A.nvertices()) continue;
          std::vector<std::uint32_t> ys(xs.begin(), xs.begin() + static_cast<long>(i));
          ys.push_back(p);
          ys.insert(ys.end(), xs.begin() + static_cast<long>(i) + 2, xs.end());
          put({a, ys}, (i + 1) % 2 ? k.neg(c) : c);
        }
      for (const auto& [p, c] : A.mul(xs.back(), a)) put({p, {xs.begin(), xs.end() - 1}}, n % 2 ? k.neg(c) : c);
    }
    ranks[n] = detail::rank_of(d);
  }
  std::map<int, std::size_t> out;
  for (std::size_t n = 0; n <= max_degree; ++n) {
    const std::size_t h = C[n].size() - ranks[n] - ranks[n + 1];
    if (h) out[static_cast<int>(n)] = h;
  }
  return out;
}

/// The bimodule complex A (x)_E rad^{(x) n} (x)_E A truncated at n, checked
/// only through its homology: used to confirm dims of the diagonal's
/// resolution terms independently.
template <ExactField F>
std::size_t bar_term_generators(const FinDimAlgebra<F>& A, std::size_t n) {
  return detail::chains(A, n).size();
}

/// Cells of the total complex used by hochschild_homology_of; a cheap size
/// estimate before committing to a rank computation.
template <ExactField F>
std::size_t hochschild_chain_dimension(const ProjComplex<F>& M) {
  const FinDimAlgebra<F>& A = *M.L;
  std::size_t total = 0;
  for (std::size_t p = 0;; ++p) {
    const auto cs = detail::chains(A, p);
    if (cs.empty()) break;
    for (const auto& xs : cs)
      for (const auto& term : M.terms)
        for (const auto& s : term)
          for (std::uint32_t x = 0; x < A.dim(); ++x) {
            if (A.target(x) != s.j) continue;
            if (!xs.empty() && A.target(xs.back()) != A.source(x)) continue;
            for (std::uint32_t y = 0; y < A.dim(); ++y) {
              if (A.source(y) != s.l) continue;
              const std::uint32_t right = xs.empty() ? A.source(x) : A.source(xs.front());
              total += A.target(y) == right;
            }
          }
  }
  return total;
}

/// HH_i(A, M) for a bounded complex M of projective bimodules, keyed by i.
/// Each term Le_j (x) e_lR is written out as a vector space and the
/// Hochschild chains are the total complex of M^q (x)_{E^e} rad^{(x)_E p}
/// in cohomological degree q - p, with D = b + (-1)^p d_M.
template <ExactField F>
ExtTable hochschild_homology_of(const ProjComplex<F>& M) {
  const FinDimAlgebra<F>& A = *M.L;
  if (M.L.get() != M.R.get() && !same_table(*M.L, *M.R)) throw InvalidArgument("oracle needs an A-A bimodule complex");
  const F& k = A.field();
  struct Cell {
    std::uint32_t t, s, x, y, chain, p;
  };
  std::vector<std::vector<std::vector<std::uint32_t>>> chains;
  std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> chain_index;
  for (std::size_t p = 0;; ++p) {
    auto cs = detail::chains(A, p);
    if (cs.empty()) break;
    std::map<std::vector<std::uint32_t>, std::uint32_t> idx;
    for (std::uint32_t i = 0; i < cs.size(); ++i) idx[cs[i]] = i;
    chains.push_back(std::move(cs));
    chain_index.push_back(std::move(idx));
  }
  auto pack = [](std::uint64_t t, std::uint64_t s, std::uint64_t x, std::uint64_t y, std::uint64_t c, std::uint64_t p) {
    return (((((t * 1048576 + s) * 1024 + x) * 1024 + y) * 65536 + c) * 16) + p;
  };
  // degree -> cells, and cell key -> position inside its degree
  std::map<int, std::vector<Cell>> cells;
  std::unordered_map<std::uint64_t, std::size_t> where;
  for (std::uint32_t p = 0; p < chains.size(); ++p)
    for (std::uint32_t ci = 0; ci < chains[p].size(); ++ci) {
      const auto& xs = chains[p][ci];
      for (std::uint32_t t = 0; t < M.terms.size(); ++t) {
        const int deg = M.lo + static_cast<int>(t) - static_cast<int>(p);
        for (std::uint32_t s = 0; s < M.terms[t].size(); ++s) {
          const Summand& sm = M.terms[t][s];
          for (std::uint32_t x = 0; x < A.dim(); ++x) {
            if (A.target(x) != sm.j) continue;
            if (!xs.empty() && A.target(xs.back()) != A.source(x)) continue;
            for (std::uint32_t y = 0; y < A.dim(); ++y) {
              if (A.source(y) != sm.l) continue;
              const std::uint32_t right = xs.empty() ? A.source(x) : A.source(xs.front());
              if (A.target(y) != right) continue;
              auto& v = cells[deg];
              where[pack(t, s, x, y, ci, p)] = v.size();
              v.push_back({t, s, x, y, ci, p});
            }
          }
        }
      }
    }
  // column lists of each component by source summand
  std::vector<std::vector<std::vector<const Component<F>*>>> out_of(M.diff.size());
  for (std::size_t t = 0; t < M.diff.size(); ++t) {
    out_of[t].resize(M.terms[t].size());
    for (const auto& c : M.diff[t]) out_of[t][c.src].push_back(&c);
  }
  std::map<int, std::size_t> rank;
  for (const auto& [deg, cols] : cells) {
    auto next = cells.find(deg + 1);
    if (next == cells.end()) continue;
    SparseMatrix<F> m(k, next->second.size(), cols.size());
    auto put = [&](std::uint32_t t, std::uint32_t s, std::uint32_t x, std::uint32_t y, std::uint32_t p,
                   const std::vector<std::uint32_t>& xs, std::size_t col, const typename F::Element& c) {
      auto ci = chain_index[p].find(xs);
      if (ci == chain_index[p].end()) return;
      auto it = where.find(pack(t, s, x, y, ci->second, p));
      if (it == where.end()) throw Error("oracle: boundary left the complex");
      m.add(it->second, col, c);
    };
    for (std::size_t col = 0; col < cols.size(); ++col) {
      const Cell& e = cols[col];
      const auto& xs = chains[e.p][e.chain];
      const std::size_t p = e.p;
      if (p > 0) {
        // m x_1
        for (const auto& [y2, c] : A.mul(e.y, xs.front()))
          put(e.t, e.s, e.x, y2, e.p - 1, {xs.begin() + 1, xs.end()}, col, c);
        for (std::size_t i = 0; i + 1 < p; ++i)
          for (const auto& [z, c] : A.mul(xs[i], xs[i + 1])) {
            if (z < A.nvertices()) continue;
            std::vector<std::uint32_t> ys(xs.begin(), xs.begin() + static_cast<long>(i));
            ys.push_back(z);
            ys.insert(ys.end(), xs.begin() + static_cast<long>(i) + 2, xs.end());
            put(e.t, e.s, e.x, e.y, e.p - 1, ys, col, (i + 1) % 2 ? k.neg(c) : c);
          }
        // x_p m
        for (const auto& [x2, c] : A.mul(xs.back(), e.x))
          put(e.t, e.s, x2, e.y, e.p - 1, {xs.begin(), xs.end() - 1}, col, p % 2 ? k.neg(c) : c);
      }
      if (e.t < M.diff.size())
        for (const Component<F>* comp : out_of[e.t][e.s])
          for (const auto& term : comp->value)
            for (const auto& [x2, cx] : A.mul(e.x, term.u))
              for (const auto& [y2, cy] : A.mul(term.w, e.y)) {
                auto c = k.mul(term.c, k.mul(cx, cy));
                put(e.t + 1, comp->tgt, x2, y2, e.p, xs, col, p % 2 ? k.neg(c) : c);
              }
    }
    m.finalize();
    rank[deg] = m.nonzeros() == 0 ? 0 : sparse_rank(std::move(m));
  }
  ExtTable out;
  for (const auto& [deg, v] : cells) {
    const std::size_t h = v.size() - rank[deg] - (rank.count(deg - 1) ? rank[deg - 1] : 0);
    out.add(-deg, h);
  }
  return out;
}

}  // namespace oracle
