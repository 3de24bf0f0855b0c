#pragma once

// Concrete finite-dimensional L-R bimodules (right modules when L is the
// ground field) and their minimal projective resolutions.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/exact/matrix.hpp"
#include "catdyn/homological/complex.hpp"

namespace catdyn {

/// Basis vectors are adapted to the idempotent blocks: vector i lies in
/// e_j M e_l with (j, l) = label[i]. Actions are stored as images of basis
/// vectors: left[x][i] = x . m_i and right[y][i] = m_i . y.
template <ExactField F>
struct ConcreteBimodule {
  using Vec = typename FinDimAlgebra<F>::Vec;
  AlgebraPtr<F> L, R;
  std::vector<Summand> label;
  std::vector<std::vector<Vec>> left, right;

  std::size_t dim() const { return label.size(); }

  /// Checks both actions against the multiplication tables, the unit, and
  /// that they commute.
  bool is_valid() const {
    const F& k = L->field();
    auto act = [&](const std::vector<Vec>& images, const Vec& v) {
      std::map<std::uint32_t, typename F::Element> acc;
      for (const auto& [i, c] : v)
        for (const auto& [j, d] : images[i]) {
          auto [it, fresh] = acc.try_emplace(j, k.zero());
          k.add_mul(it->second, c, d);
        }
      Vec out;
      for (auto& [j, c] : acc)
        if (!k.is_zero(c)) out.emplace_back(j, c);
      return out;
    };
    auto eq = [&](const Vec& a, const Vec& b) {
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].first != b[i].first || !k.equal(a[i].second, b[i].second)) return false;
      return true;
    };
    for (std::uint32_t i = 0; i < dim(); ++i) {
      const Vec m{{i, k.one()}};
      // (x x') m = x (x' m), m (y y') = (m y) y'
      for (std::uint32_t x = 0; x < L->dim(); ++x)
        for (std::uint32_t x2 = 0; x2 < L->dim(); ++x2) {
          Vec lhs;
          for (const auto& [p, c] : L->mul(x, x2))
            for (const auto& t : left[p][i]) lhs.emplace_back(t.first, k.mul(c, t.second));
          std::map<std::uint32_t, typename F::Element> acc;
          for (auto& [q, c] : lhs) {
            auto [it, fresh] = acc.try_emplace(q, k.zero());
            it->second = k.add(it->second, c);
          }
          Vec l2;
          for (auto& [q, c] : acc)
            if (!k.is_zero(c)) l2.emplace_back(q, c);
          if (!eq(l2, act(left[x], left[x2][i]))) return false;
        }
      for (std::uint32_t y = 0; y < R->dim(); ++y)
        for (std::uint32_t y2 = 0; y2 < R->dim(); ++y2) {
          Vec lhs;
          for (const auto& [p, c] : R->mul(y, y2))
            for (const auto& t : right[p][i]) lhs.emplace_back(t.first, k.mul(c, t.second));
          std::map<std::uint32_t, typename F::Element> acc;
          for (auto& [q, c] : lhs) {
            auto [it, fresh] = acc.try_emplace(q, k.zero());
            it->second = k.add(it->second, c);
          }
          Vec l2;
          for (auto& [q, c] : acc)
            if (!k.is_zero(c)) l2.emplace_back(q, c);
          if (!eq(l2, act(right[y2], right[y][i]))) return false;
        }
      for (std::uint32_t x = 0; x < L->dim(); ++x)
        for (std::uint32_t y = 0; y < R->dim(); ++y)
          if (!eq(act(right[y], left[x][i]), act(left[x], right[y][i]))) return false;
      // Sum of idempotents acts as the identity, consistently with the label.
      Vec lsum, rsum;
      for (std::uint32_t v = 0; v < L->nvertices(); ++v)
        for (const auto& t : left[v][i]) lsum.push_back(t);
      for (std::uint32_t v = 0; v < R->nvertices(); ++v)
        for (const auto& t : right[v][i]) rsum.push_back(t);
      if (!eq(lsum, m) || !eq(rsum, m)) return false;
      if (!eq(left[label[i].j][i], m) || !eq(right[label[i].l][i], m)) return false;
    }
    return true;
  }
};

/// A as an A-A bimodule.
template <ExactField F>
ConcreteBimodule<F> diagonal_bimodule(const AlgebraPtr<F>& A) {
  ConcreteBimodule<F> M{A, A, {}, {}, {}};
  const std::size_t n = A->dim();
  for (std::uint32_t i = 0; i < n; ++i) M.label.push_back({A->source(i), A->target(i)});
  M.left.assign(n, std::vector<typename ConcreteBimodule<F>::Vec>(n));
  M.right.assign(n, std::vector<typename ConcreteBimodule<F>::Vec>(n));
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t i = 0; i < n; ++i) {
      M.left[x][i] = A->mul(x, i);
      M.right[x][i] = A->mul(i, x);
    }
  return M;
}

/// D(A) = Hom_k(A, k) with (a f b)(z) = f(b z a). The dual basis vector x*
/// lies in e_target(x) D(A) e_source(x).
template <ExactField F>
ConcreteBimodule<F> serre_dual_bimodule(const AlgebraPtr<F>& A) {
  using Vec = typename ConcreteBimodule<F>::Vec;
  ConcreteBimodule<F> M{A, A, {}, {}, {}};
  const std::size_t n = A->dim();
  for (std::uint32_t i = 0; i < n; ++i) M.label.push_back({A->target(i), A->source(i)});
  M.left.assign(n, std::vector<Vec>(n));
  M.right.assign(n, std::vector<Vec>(n));
  // (a . x*)(z) = x*(z a); (x* . b)(z) = x*(b z).
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t z = 0; z < n; ++z) {
      for (const auto& [x, c] : A->mul(z, a)) M.left[a][x].emplace_back(z, c);
      for (const auto& [x, c] : A->mul(a, z)) M.right[a][x].emplace_back(z, c);
    }
  for (auto& per : M.left)
    for (auto& v : per) std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  for (auto& per : M.right)
    for (auto& v : per) std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  return M;
}

/// Simple right module S_v over A.
template <ExactField F>
ConcreteBimodule<F> simple_right_module(const AlgebraPtr<F>& A, std::uint32_t v) {
  using Vec = typename ConcreteBimodule<F>::Vec;
  if (v >= A->nvertices()) throw InvalidArgument("no such vertex");
  ConcreteBimodule<F> M{ground_algebra(A->field()), A, {{0, v}}, {}, {}};
  M.left.assign(1, std::vector<Vec>{Vec{{0, A->field().one()}}});
  M.right.assign(A->dim(), std::vector<Vec>(1));
  M.right[v][0] = Vec{{0, A->field().one()}};
  return M;
}

/// Projective right module e_v A.
template <ExactField F>
ConcreteBimodule<F> projective_right_module(const AlgebraPtr<F>& A, std::uint32_t v) {
  using Vec = typename ConcreteBimodule<F>::Vec;
  ConcreteBimodule<F> M{ground_algebra(A->field()), A, {}, {}, {}};
  std::vector<std::uint32_t> basis;
  std::vector<std::int64_t> pos(A->dim(), -1);
  for (std::uint32_t i = 0; i < A->dim(); ++i)
    if (A->source(i) == v) pos[i] = static_cast<std::int64_t>(basis.size()), basis.push_back(i);
  for (auto i : basis) M.label.push_back({0, A->target(i)});
  M.left.assign(1, std::vector<Vec>(basis.size()));
  for (std::uint32_t i = 0; i < basis.size(); ++i) M.left[0][i] = Vec{{i, A->field().one()}};
  M.right.assign(A->dim(), std::vector<Vec>(basis.size()));
  for (std::uint32_t y = 0; y < A->dim(); ++y)
    for (std::uint32_t i = 0; i < basis.size(); ++i)
      for (const auto& [p, c] : A->mul(basis[i], y)) M.right[y][i].emplace_back(static_cast<std::uint32_t>(pos[p]), c);
  return M;
}

// ---------------------------------------------------------------------------
// Minimal projective resolutions.

template <ExactField F>
struct Resolution {
  ProjComplex<F> complex;  // P_i sits in degree -i
  bool truncated = false;  // kernel still nonzero after maxlen steps
  std::size_t length() const { return complex.terms.empty() ? 0 : static_cast<std::size_t>(-complex.lo); }
};

namespace detail {

/// Row-echelon accumulator for independence tests over a field.
template <ExactField F>
class Echelon {
 public:
  Echelon(F k, std::size_t n) : k_(std::move(k)), n_(n) {}

  /// Adds v if it is independent of the rows so far; returns whether it was.
  bool insert(std::vector<typename F::Element> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if (k_.is_zero(v[p])) continue;
      const auto f = v[p];
      for (std::size_t c = 0; c < n_; ++c)
        if (!k_.is_zero(rows_[r][c])) v[c] = k_.sub(v[c], k_.mul(f, rows_[r][c]));
    }
    std::size_t p = 0;
    while (p < n_ && k_.is_zero(v[p])) ++p;
    if (p == n_) return false;
    const auto inv = k_.inv(v[p]);
    for (auto& x : v) x = k_.mul(x, inv);
    // keep rows reduced at the new pivot
    for (auto& row : rows_) {
      if (k_.is_zero(row[p])) continue;
      const auto f = row[p];
      for (std::size_t c = 0; c < n_; ++c)
        if (!k_.is_zero(v[c])) row[c] = k_.sub(row[c], k_.mul(f, v[c]));
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  F k_;
  std::size_t n_;
  std::vector<std::vector<typename F::Element>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Blockwise view of a bimodule with an action on coordinate vectors.
template <ExactField F>
struct Ambient {
  using Elt = typename F::Element;
  using Dense = std::vector<Elt>;
  std::size_t nl = 0, nr = 0;
  std::function<std::size_t(std::uint32_t, std::uint32_t)> block_dim;
  // x . v for v in block (a, b) with target(x) = a; result in block (source x, b).
  std::function<Dense(std::uint32_t x, std::uint32_t a, std::uint32_t b, const Dense&)> left;
  // v . y for v in block (a, b) with source(y) = b; result in block (a, target y).
  std::function<Dense(std::uint32_t y, std::uint32_t a, std::uint32_t b, const Dense&)> right;
};

/// Free module given by summand labels; coordinates of block (a, b) list
/// (s, x, y) with x in e_a L e_j(s), y in e_l(s) R e_b.
template <ExactField F>
struct FreeLayout {
  const FinDimAlgebra<F>* L;
  const FinDimAlgebra<F>* R;
  std::vector<Summand> summands;
  // offset[(a * nr + b)][s]
  std::vector<std::vector<std::size_t>> offset;
  std::vector<std::size_t> dims;
  std::vector<std::uint32_t> lpos, rpos;

  FreeLayout(const FinDimAlgebra<F>& l, const FinDimAlgebra<F>& r, std::vector<Summand> s)
      : L(&l), R(&r), summands(std::move(s)) {
    const std::size_t nl = L->nvertices(), nr = R->nvertices();
    offset.assign(nl * nr, {});
    dims.assign(nl * nr, 0);
    for (std::uint32_t a = 0; a < nl; ++a)
      for (std::uint32_t b = 0; b < nr; ++b) {
        auto& off = offset[a * nr + b];
        std::size_t d = 0;
        for (const auto& sm : summands) {
          off.push_back(d);
          d += L->block_dim(a, sm.j) * R->block_dim(sm.l, b);
        }
        dims[a * nr + b] = d;
      }
    lpos.assign(L->dim(), 0);
    rpos.assign(R->dim(), 0);
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t j = 0; j < nl; ++j) {
        const auto& bl = L->block(a, j);
        for (std::uint32_t i = 0; i < bl.size(); ++i) lpos[bl[i]] = i;
      }
    for (std::size_t a = 0; a < nr; ++a)
      for (std::size_t j = 0; j < nr; ++j) {
        const auto& bl = R->block(a, j);
        for (std::uint32_t i = 0; i < bl.size(); ++i) rpos[bl[i]] = i;
      }
  }

  std::size_t index(std::uint32_t a, std::uint32_t b, std::uint32_t s, std::uint32_t x, std::uint32_t y) const {
    const std::size_t ny = R->block_dim(summands[s].l, b);
    return offset[a * R->nvertices() + b][s] + lpos[x] * ny + rpos[y];
  }

  Ambient<F> ambient() const {
    Ambient<F> amb;
    amb.nl = L->nvertices();
    amb.nr = R->nvertices();
    amb.block_dim = [this](std::uint32_t a, std::uint32_t b) { return dims[a * R->nvertices() + b]; };
    amb.left = [this](std::uint32_t x2, std::uint32_t a, std::uint32_t b, const typename Ambient<F>::Dense& v) {
      const F& k = L->field();
      const std::uint32_t a2 = L->source(x2);
      typename Ambient<F>::Dense out(dims[a2 * R->nvertices() + b], k.zero());
      for (std::uint32_t s = 0; s < summands.size(); ++s) {
        const auto& xs = L->block(a, summands[s].j);
        const auto& ys = R->block(summands[s].l, b);
        for (std::size_t ix = 0; ix < xs.size(); ++ix)
          for (std::size_t iy = 0; iy < ys.size(); ++iy) {
            const auto& c = v[offset[a * R->nvertices() + b][s] + ix * ys.size() + iy];
            if (k.is_zero(c)) continue;
            for (const auto& [xp, cx] : L->mul(x2, xs[ix])) {
              auto& slot = out[index(a2, b, s, xp, ys[iy])];
              slot = k.add(slot, k.mul(c, cx));
            }
          }
      }
      return out;
    };
    amb.right = [this](std::uint32_t y2, std::uint32_t a, std::uint32_t b, const typename Ambient<F>::Dense& v) {
      const F& k = L->field();
      const std::uint32_t b2 = R->target(y2);
      typename Ambient<F>::Dense out(dims[a * R->nvertices() + b2], k.zero());
      for (std::uint32_t s = 0; s < summands.size(); ++s) {
        const auto& xs = L->block(a, summands[s].j);
        const auto& ys = R->block(summands[s].l, b);
        for (std::size_t ix = 0; ix < xs.size(); ++ix)
          for (std::size_t iy = 0; iy < ys.size(); ++iy) {
            const auto& c = v[offset[a * R->nvertices() + b][s] + ix * ys.size() + iy];
            if (k.is_zero(c)) continue;
            for (const auto& [yp, cy] : R->mul(ys[iy], y2)) {
              auto& slot = out[index(a, b2, s, xs[ix], yp)];
              slot = k.add(slot, k.mul(c, cy));
            }
          }
      }
      return out;
    };
    return amb;
  }
};

}  // namespace detail

/// Minimal projective resolution of a concrete bimodule by iterated
/// projective covers: generators are lifts of a basis of M / (rad L M + M rad R).
template <ExactField F>
Resolution<F> minimal_resolution(const ConcreteBimodule<F>& M, std::size_t maxlen) {
  using Dense = typename detail::Ambient<F>::Dense;
  const FinDimAlgebra<F>& L = *M.L;
  const FinDimAlgebra<F>& R = *M.R;
  const F& k = L.field();
  const std::uint32_t nl = static_cast<std::uint32_t>(L.nvertices()), nr = static_cast<std::uint32_t>(R.nvertices());

  // Ambient for M itself.
  std::vector<std::vector<std::uint32_t>> mblock(nl * nr);
  std::vector<std::uint32_t> mpos(M.dim());
  for (std::uint32_t i = 0; i < M.dim(); ++i) {
    auto& b = mblock[M.label[i].j * nr + M.label[i].l];
    mpos[i] = static_cast<std::uint32_t>(b.size());
    b.push_back(i);
  }
  detail::Ambient<F> amb;
  amb.nl = nl;
  amb.nr = nr;
  amb.block_dim = [&](std::uint32_t a, std::uint32_t b) { return mblock[a * nr + b].size(); };
  auto act = [&](const std::vector<std::vector<typename ConcreteBimodule<F>::Vec>>& images, std::uint32_t x,
                 std::uint32_t a, std::uint32_t b, std::uint32_t a2, std::uint32_t b2, const Dense& v) {
    Dense out(mblock[a2 * nr + b2].size(), k.zero());
    const auto& src = mblock[a * nr + b];
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (k.is_zero(v[i])) continue;
      for (const auto& [q, c] : images[x][src[i]]) {
        auto& slot = out[mpos[q]];
        slot = k.add(slot, k.mul(v[i], c));
      }
    }
    return out;
  };
  amb.left = [&](std::uint32_t x, std::uint32_t a, std::uint32_t b, const Dense& v) {
    return act(M.left, x, a, b, L.source(x), b, v);
  };
  amb.right = [&](std::uint32_t y, std::uint32_t a, std::uint32_t b, const Dense& v) {
    return act(M.right, y, a, b, a, R.target(y), v);
  };

  // Current submodule K (per block, list of coordinate vectors in the ambient).
  std::vector<std::vector<Dense>> K(nl * nr);
  for (std::uint32_t a = 0; a < nl; ++a)
    for (std::uint32_t b = 0; b < nr; ++b)
      for (std::size_t i = 0; i < mblock[a * nr + b].size(); ++i) {
        Dense e(mblock[a * nr + b].size(), k.zero());
        e[i] = k.one();
        K[a * nr + b].push_back(std::move(e));
      }

  Resolution<F> res;
  res.complex.L = M.L;
  res.complex.R = M.R;
  std::vector<std::vector<Summand>> terms;              // terms[i] = P_i
  std::vector<std::vector<Component<F>>> diffs;         // diffs[i]: P_{i+1} -> P_i
  std::unique_ptr<detail::FreeLayout<F>> layout;        // layout of P_{i-1}
  detail::Ambient<F> current = amb;

  for (std::size_t step = 0;; ++step) {
    bool kernel_zero = true;
    for (const auto& kb : K)
      if (!kb.empty()) kernel_zero = false;
    if (kernel_zero) break;
    if (step > maxlen) {
      res.truncated = true;
      break;
    }
    // Top of K: per block, vectors independent modulo the radical images.
    std::vector<std::vector<Dense>> radical(nl * nr);
    for (std::uint32_t a = 0; a < nl; ++a)
      for (std::uint32_t b = 0; b < nr; ++b)
        for (const auto& v : K[a * nr + b]) {
          for (std::uint32_t x = nl; x < L.dim(); ++x)
            if (L.target(x) == a) radical[L.source(x) * nr + b].push_back(current.left(x, a, b, v));
          for (std::uint32_t y = nr; y < R.dim(); ++y)
            if (R.source(y) == b) radical[a * nr + R.target(y)].push_back(current.right(y, a, b, v));
        }
    std::vector<Summand> gens;
    std::vector<Dense> gen_vectors;
    for (std::uint32_t a = 0; a < nl; ++a)
      for (std::uint32_t b = 0; b < nr; ++b) {
        detail::Echelon<F> ech(k, current.block_dim(a, b));
        for (auto& v : radical[a * nr + b]) ech.insert(v);
        for (const auto& v : K[a * nr + b])
          if (ech.insert(v)) {
            gens.push_back({a, b});
            gen_vectors.push_back(v);
          }
      }
    // Differential P_step -> P_{step-1}: coordinates of the generators.
    if (step > 0) {
      std::vector<Component<F>> comps;
      for (std::uint32_t g = 0; g < gens.size(); ++g) {
        const auto [a, b] = std::pair{gens[g].j, gens[g].l};
        std::map<std::uint32_t, BiElem<F>> per_target;
        for (std::uint32_t s = 0; s < layout->summands.size(); ++s) {
          const auto& xs = L.block(a, layout->summands[s].j);
          const auto& ys = R.block(layout->summands[s].l, b);
          for (std::size_t ix = 0; ix < xs.size(); ++ix)
            for (std::size_t iy = 0; iy < ys.size(); ++iy) {
              const auto& c = gen_vectors[g][layout->offset[a * nr + b][s] + ix * ys.size() + iy];
              if (!k.is_zero(c)) per_target[s].push_back({xs[ix], ys[iy], c});
            }
        }
        for (auto& [s, v] : per_target) {
          detail::normalize(k, v);
          comps.push_back({g, s, std::move(v)});
        }
      }
      diffs.push_back(std::move(comps));
    }
    terms.push_back(gens);

    // Map P_step -> current ambient, x (x) y -> x g y; kernel per block.
    auto next_layout = std::make_unique<detail::FreeLayout<F>>(L, R, gens);
    std::vector<std::vector<Dense>> next_K(nl * nr);
    for (std::uint32_t a = 0; a < nl; ++a)
      for (std::uint32_t b = 0; b < nr; ++b) {
        const std::size_t src_dim = next_layout->dims[a * nr + b];
        const std::size_t tgt_dim = current.block_dim(a, b);
        if (src_dim == 0) continue;
        Matrix<F> m(k, tgt_dim, src_dim);
        for (std::uint32_t g = 0; g < gens.size(); ++g) {
          const auto& xs = L.block(a, gens[g].j);
          const auto& ys = R.block(gens[g].l, b);
          for (std::size_t ix = 0; ix < xs.size(); ++ix) {
            Dense xg = gen_vectors[g];
            if (xs[ix] != gens[g].j) xg = current.left(xs[ix], gens[g].j, gens[g].l, xg);
            for (std::size_t iy = 0; iy < ys.size(); ++iy) {
              Dense xgy = xg;
              if (ys[iy] != gens[g].l) xgy = current.right(ys[iy], a, gens[g].l, xg);
              const std::size_t col = next_layout->offset[a * nr + b][g] + ix * ys.size() + iy;
              for (std::size_t r = 0; r < tgt_dim; ++r) m(r, col) = xgy[r];
            }
          }
        }
        const Matrix<F> ns = nullspace(m);
        for (std::size_t c = 0; c < ns.cols(); ++c) {
          Dense v(src_dim);
          for (std::size_t r = 0; r < src_dim; ++r) v[r] = ns(r, c);
          next_K[a * nr + b].push_back(std::move(v));
        }
      }
    layout = std::move(next_layout);
    current = layout->ambient();
    K = std::move(next_K);
  }

  // Assemble: P_i in degree -i, differential from degree -(i+1) to -i.
  const std::size_t n = terms.size();
  ProjComplex<F>& c = res.complex;
  c.lo = -static_cast<int>(n == 0 ? 0 : n - 1);
  for (std::size_t i = n; i-- > 0;) c.terms.push_back(terms[i]);
  for (std::size_t i = n; i-- > 1;) c.diff.push_back(std::move(diffs[i - 1]));
  if (n == 0) c.lo = 0;
  return res;
}

}  // namespace catdyn
