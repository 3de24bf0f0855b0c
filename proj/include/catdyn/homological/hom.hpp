#pragma once

// Hom complexes out of bounded complexes of projectives, and the trace
// complex A (x)_{A^e} Q used as an independent route to Hochschild homology.

#include <cstdint>
#include <vector>

#include "catdyn/exact/sparse.hpp"
#include "catdyn/homological/complex.hpp"
#include "catdyn/homological/module.hpp"

namespace catdyn {

namespace detail {

template <ExactField F>
std::vector<std::uint32_t> block_positions(const FinDimAlgebra<F>& A) {
  std::vector<std::uint32_t> pos(A.dim());
  for (std::size_t a = 0; a < A.nvertices(); ++a)
    for (std::size_t b = 0; b < A.nvertices(); ++b) {
      const auto& bl = A.block(a, b);
      for (std::uint32_t i = 0; i < bl.size(); ++i) pos[bl[i]] = i;
    }
  return pos;
}

/// dims[m] - rank(m) - rank(m-1) for a chain of sparse maps; degrees are
/// first_degree + index.
inline ExtTable assemble(int first_degree, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& ranks) {
  ExtTable t;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const std::size_t r_out = i < ranks.size() ? ranks[i] : 0;
    const std::size_t r_in = i > 0 ? ranks[i - 1] : 0;
    t.add(first_degree + static_cast<int>(i), dims[i] - r_out - r_in);
  }
  return t;
}

}  // namespace detail

/// H^m of Hom(P, N) where N is a concrete bimodule in degree 0: the summand
/// (j, l) in degree k contributes e_j N e_l in degree -k.
template <ExactField F>
ExtTable hom_homology(const ProjComplex<F>& P, const ConcreteBimodule<F>& N) {
  if (P.terms.empty()) return {};
  const F& k = P.L->field();
  const std::size_t nr = P.R->nvertices();
  std::vector<std::vector<std::uint32_t>> nblock(P.L->nvertices() * nr);
  std::vector<std::uint32_t> npos(N.dim());
  for (std::uint32_t i = 0; i < N.dim(); ++i) {
    auto& b = nblock[N.label[i].j * nr + N.label[i].l];
    npos[i] = static_cast<std::uint32_t>(b.size());
    b.push_back(i);
  }
  const std::size_t n = P.terms.size();
  // Hom^m with m = -(P.lo + idx); we index by P's term index.
  std::vector<std::vector<std::size_t>> offset(n);
  std::vector<std::size_t> dims(n, 0);
  for (std::size_t t = 0; t < n; ++t)
    for (const auto& s : P.terms[t]) {
      offset[t].push_back(dims[t]);
      dims[t] += nblock[s.j * nr + s.l].size();
    }
  // Map from Hom(P^{t+1}, N) to Hom(P^t, N): f |-> f o d.
  std::vector<std::size_t> rank(n ? n - 1 : 0, 0);
  for (std::size_t t = 0; t + 1 < n; ++t) {
    if (dims[t] == 0 || dims[t + 1] == 0) continue;
    SparseMatrix<F> m(k, dims[t], dims[t + 1]);
    for (const auto& comp : P.diff[t]) {
      const Summand& ls = P.terms[t][comp.src];
      const Summand& lt = P.terms[t + 1][comp.tgt];
      const auto& fbasis = nblock[lt.j * nr + lt.l];
      for (std::size_t i = 0; i < fbasis.size(); ++i) {
        const std::size_t col = offset[t + 1][comp.tgt] + i;
        for (const auto& term : comp.value)
          for (const auto& [p, cp] : N.left[term.u][fbasis[i]])
            for (const auto& [q, cq] : N.right[term.w][p])
              m.add(offset[t][comp.src] + npos[q], col, k.mul(term.c, k.mul(cp, cq)));
      }
      (void)ls;
    }
    m.finalize();
    rank[t] = m.nonzeros() == 0 ? 0 : sparse_rank(std::move(m));
  }
  // Reverse so index 0 is the lowest Hom degree -(hi).
  std::vector<std::size_t> rd(dims.rbegin(), dims.rend()), rr(rank.rbegin(), rank.rend());
  return detail::assemble(-P.hi(), rd, rr);
}

/// H^m of Hom(P, Q) for bounded complexes of projective L-R bimodules.
/// A degree-m map sends P^k to Q^(k+m); D f = d_Q f - (-1)^m f d_P.
template <ExactField F>
ExtTable hom_homology(const ProjComplex<F>& P, const ProjComplex<F>& Q) {
  if (P.terms.empty() || Q.terms.empty()) return {};
  const FinDimAlgebra<F>& L = *P.L;
  const FinDimAlgebra<F>& R = *P.R;
  const F& k = L.field();
  const auto lpos = detail::block_positions(L);
  const auto rpos = detail::block_positions(R);
  const int mlo = Q.lo - P.hi(), mhi = Q.hi() - P.lo;
  const std::size_t nm = static_cast<std::size_t>(mhi - mlo + 1);

  // offset[mi][pk][s][t]
  struct Layout {
    std::vector<std::vector<std::vector<std::size_t>>> off;  // [pk][s][t]
    std::size_t dim = 0;
  };
  std::vector<Layout> lay(nm);
  for (std::size_t mi = 0; mi < nm; ++mi) {
    const int m = mlo + static_cast<int>(mi);
    auto& ly = lay[mi];
    ly.off.resize(P.terms.size());
    for (std::size_t pk = 0; pk < P.terms.size(); ++pk) {
      const int qd = P.lo + static_cast<int>(pk) + m;
      const auto& qterm = Q.at(qd);
      ly.off[pk].resize(P.terms[pk].size());
      for (std::size_t s = 0; s < P.terms[pk].size(); ++s) {
        const Summand& ls = P.terms[pk][s];
        auto& row = ly.off[pk][s];
        row.reserve(qterm.size());
        for (const auto& lt : qterm) {
          row.push_back(ly.dim);
          ly.dim += L.block_dim(ls.j, lt.j) * R.block_dim(lt.l, ls.l);
        }
      }
    }
  }

  // Incoming components of P, per term.
  std::vector<std::vector<std::vector<const Component<F>*>>> p_in(P.terms.size());
  for (std::size_t pk = 0; pk < P.terms.size(); ++pk) p_in[pk].resize(P.terms[pk].size());
  for (std::size_t pk = 0; pk + 1 < P.terms.size(); ++pk)
    for (const auto& c : P.diff[pk]) p_in[pk + 1][c.tgt].push_back(&c);
  std::vector<std::vector<std::vector<const Component<F>*>>> q_out(Q.terms.size());
  for (std::size_t qk = 0; qk < Q.terms.size(); ++qk) q_out[qk].resize(Q.terms[qk].size());
  for (std::size_t qk = 0; qk + 1 < Q.terms.size(); ++qk)
    for (const auto& c : Q.diff[qk]) q_out[qk][c.src].push_back(&c);

  std::vector<std::size_t> dims(nm), ranks(nm ? nm - 1 : 0, 0);
  for (std::size_t mi = 0; mi < nm; ++mi) dims[mi] = lay[mi].dim;
  for (std::size_t mi = 0; mi + 1 < nm; ++mi) {
    if (dims[mi] == 0 || dims[mi + 1] == 0) continue;
    const int m = mlo + static_cast<int>(mi);
    const bool m_odd = (m % 2) != 0;
    SparseMatrix<F> mat(k, dims[mi + 1], dims[mi]);
    for (std::size_t pk = 0; pk < P.terms.size(); ++pk) {
      const int qd = P.lo + static_cast<int>(pk) + m;
      const auto& qterm = Q.at(qd);
      const std::size_t qk = static_cast<std::size_t>(qd - Q.lo);
      for (std::size_t s = 0; s < P.terms[pk].size(); ++s) {
        const Summand& ls = P.terms[pk][s];
        for (std::size_t t = 0; t < qterm.size(); ++t) {
          const Summand& lt = qterm[t];
          const auto& us = L.block(ls.j, lt.j);
          const auto& ws = R.block(lt.l, ls.l);
          const std::size_t base = lay[mi].off[pk][s][t];
          for (std::size_t iu = 0; iu < us.size(); ++iu)
            for (std::size_t iw = 0; iw < ws.size(); ++iw) {
              const std::size_t col = base + iu * ws.size() + iw;
              const std::uint32_t u = us[iu], w = ws[iw];
              // d_Q o f: component t -> t2 with value (u2, w2): (u u2) (x) (w2 w).
              for (const Component<F>* dq : q_out[qk][t]) {
                const Summand& lt2 = Q.terms[qk + 1][dq->tgt];
                const std::size_t b2 = lay[mi + 1].off[pk][s][dq->tgt];
                const std::size_t nw2 = R.block_dim(lt2.l, ls.l);
                for (const auto& term : dq->value)
                  for (const auto& [uu, cu] : L.mul(u, term.u))
                    for (const auto& [ww, cw] : R.mul(term.w, w))
                      mat.add(b2 + lpos[uu] * nw2 + rpos[ww], col, k.mul(term.c, k.mul(cu, cw)));
              }
              // -(-1)^m f o d_P: component s0 -> s with value (u0, w0): (u0 u) (x) (w w0).
              if (pk == 0) continue;
              for (const Component<F>* dp : p_in[pk][s]) {
                const Summand& ls0 = P.terms[pk - 1][dp->src];
                const std::size_t b2 = lay[mi + 1].off[pk - 1][dp->src][t];
                const std::size_t nw2 = R.block_dim(lt.l, ls0.l);
                for (const auto& term : dp->value)
                  for (const auto& [uu, cu] : L.mul(term.u, u))
                    for (const auto& [ww, cw] : R.mul(w, term.w)) {
                      auto c = k.mul(term.c, k.mul(cu, cw));
                      if (!m_odd) c = k.neg(c);
                      mat.add(b2 + lpos[uu] * nw2 + rpos[ww], col, c);
                    }
              }
            }
        }
      }
    }
    mat.finalize();
    ranks[mi] = mat.nonzeros() == 0 ? 0 : sparse_rank(std::move(mat));
  }
  return detail::assemble(mlo, dims, ranks);
}

/// Homology of A (x)_{A^e} Q for a complex Q of projective A-A bimodules.
/// The summand (j, l) becomes e_l A e_j and a component u (x) w acts by
/// a |-> w a u.
template <ExactField F>
ExtTable trace_homology(const ProjComplex<F>& Q) {
  if (Q.terms.empty()) return {};
  const FinDimAlgebra<F>& A = *Q.L;
  const F& k = A.field();
  const auto pos = detail::block_positions(A);
  const std::size_t n = Q.terms.size();
  std::vector<std::vector<std::size_t>> offset(n);
  std::vector<std::size_t> dims(n, 0), ranks(n ? n - 1 : 0, 0);
  for (std::size_t t = 0; t < n; ++t)
    for (const auto& s : Q.terms[t]) {
      offset[t].push_back(dims[t]);
      dims[t] += A.block_dim(s.l, s.j);
    }
  for (std::size_t t = 0; t + 1 < n; ++t) {
    if (dims[t] == 0 || dims[t + 1] == 0) continue;
    SparseMatrix<F> m(k, dims[t + 1], dims[t]);
    for (const auto& comp : Q.diff[t]) {
      const Summand& ls = Q.terms[t][comp.src];
      const auto& as = A.block(ls.l, ls.j);
      for (std::size_t ia = 0; ia < as.size(); ++ia)
        for (const auto& term : comp.value)
          for (const auto& [wa, c1] : A.mul(term.w, as[ia]))
            for (const auto& [wau, c2] : A.mul(wa, term.u))
              m.add(offset[t + 1][comp.tgt] + pos[wau], offset[t][comp.src] + ia, k.mul(term.c, k.mul(c1, c2)));
    }
    m.finalize();
    ranks[t] = m.nonzeros() == 0 ? 0 : sparse_rank(std::move(m));
  }
  return detail::assemble(Q.lo, dims, ranks);
}

}  // namespace catdyn
