#pragma once

// Bounded complexes of projective L-R bimodules. A summand with label (j, l)
// is L e_j (x) e_l R. A map between summands s -> t is fixed by the image of
// e_j (x) e_l, an element of e_j L e_j' (x) e_l' R e_l, and sends
// x (x) y to sum (x u) (x) (w y). Right modules use L = ground field.
//
// Indexing is cohomological: d maps degree k to k + 1 and (C[1])^k = C^(k+1).

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/exact/sparse.hpp"
#include "catdyn/quiver/algebra.hpp"

namespace catdyn {

/// degree -> dimension, zero entries omitted.
class ExtTable {
 public:
  ExtTable() = default;
  explicit ExtTable(std::map<int, std::size_t> dims) {
    for (auto [d, n] : dims)
      if (n) dims_[d] = n;
  }

  std::size_t at(int degree) const {
    auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
  }
  void add(int degree, std::size_t n) {
    if (n) dims_[degree] += n;
  }
  const std::map<int, std::size_t>& dims() const { return dims_; }
  bool empty() const { return dims_.empty(); }
  std::size_t total() const {
    std::size_t s = 0;
    for (auto [d, n] : dims_) s += n;
    return s;
  }
  long euler_characteristic() const {
    long s = 0;
    for (auto [d, n] : dims_) s += (d % 2 == 0 ? 1 : -1) * static_cast<long>(n);
    return s;
  }
  int min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
  int max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }
  /// Reindex by degree -> sign * degree + offset.
  ExtTable reindexed(int sign, int offset) const {
    ExtTable t;
    for (auto [d, n] : dims_) t.add(sign * d + offset, n);
    return t;
  }
  friend bool operator==(const ExtTable&, const ExtTable&) = default;

 private:
  std::map<int, std::size_t> dims_;
};

template <ExactField F>
struct BiTerm {
  std::uint32_t u, w;
  typename F::Element c;
};

/// Element of e_j L e_j' (x) e_l' R e_l, sorted by (u, w), no zero terms.
template <ExactField F>
using BiElem = std::vector<BiTerm<F>>;

struct Summand {
  std::uint32_t j = 0, l = 0;
  friend bool operator==(const Summand&, const Summand&) = default;
};

template <ExactField F>
struct Component {
  std::uint32_t src = 0, tgt = 0;
  BiElem<F> value;
};

template <ExactField F>
struct ProjComplex {
  AlgebraPtr<F> L, R;
  int lo = 0;                                       // degree of terms[0]
  std::vector<std::vector<Summand>> terms;          // terms[k] sits in degree lo + k
  std::vector<std::vector<Component<F>>> diff;      // diff[k]: terms[k] -> terms[k + 1]

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  const std::vector<Summand>& at(int degree) const {
    static const std::vector<Summand> empty;
    const int k = degree - lo;
    return (k < 0 || k >= static_cast<int>(terms.size())) ? empty : terms[static_cast<std::size_t>(k)];
  }
  std::size_t summand_count() const {
    std::size_t n = 0;
    for (const auto& t : terms) n += t.size();
    return n;
  }
  std::size_t component_count() const {
    std::size_t n = 0;
    for (const auto& d : diff) n += d.size();
    return n;
  }
  /// Total dimension over the field.
  std::size_t dimension() const {
    std::size_t n = 0;
    for (const auto& t : terms)
      for (const auto& s : t) n += left_dim(s.j) * right_dim(s.l);
    return n;
  }
  std::size_t left_dim(std::uint32_t j) const {
    std::size_t d = 0;
    for (std::size_t a = 0; a < L->nvertices(); ++a) d += L->block_dim(a, j);
    return d;
  }
  std::size_t right_dim(std::uint32_t l) const {
    std::size_t d = 0;
    for (std::size_t b = 0; b < R->nvertices(); ++b) d += R->block_dim(l, b);
    return d;
  }

  /// Drops empty terms at both ends.
  void trim() {
    while (!terms.empty() && terms.back().empty()) {
      terms.pop_back();
      if (!diff.empty()) diff.pop_back();
    }
    while (!terms.empty() && terms.front().empty()) {
      terms.erase(terms.begin());
      if (!diff.empty()) diff.erase(diff.begin());
      ++lo;
    }
    if (terms.empty()) lo = 0;
    diff.resize(terms.empty() ? 0 : terms.size() - 1);
  }
};

namespace detail {

template <ExactField F>
void normalize(const F& k, BiElem<F>& v) {
  std::sort(v.begin(), v.end(), [](const BiTerm<F>& a, const BiTerm<F>& b) { return std::tie(a.u, a.w) < std::tie(b.u, b.w); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    BiTerm<F> acc = v[i];
    std::size_t j = i + 1;
    for (; j < v.size() && v[j].u == acc.u && v[j].w == acc.w; ++j) acc.c = k.add(acc.c, v[j].c);
    if (!k.is_zero(acc.c)) v[out++] = std::move(acc);
    i = j;
  }
  v.resize(out);
}

}  // namespace detail

/// g o f for f: s -> t and g: t -> r, i.e. (u_f u_g) (x) (w_g w_f).
template <ExactField F>
BiElem<F> compose(const FinDimAlgebra<F>& L, const FinDimAlgebra<F>& R, const BiElem<F>& f, const BiElem<F>& g) {
  const F& k = L.field();
  BiElem<F> out;
  for (const auto& a : f)
    for (const auto& b : g) {
      const auto& lu = L.mul(a.u, b.u);
      if (lu.empty()) continue;
      const auto& rw = R.mul(b.w, a.w);
      if (rw.empty()) continue;
      const auto c = k.mul(a.c, b.c);
      for (const auto& [u, cu] : lu)
        for (const auto& [w, cw] : rw) out.push_back({u, w, k.mul(c, k.mul(cu, cw))});
    }
  detail::normalize(k, out);
  return out;
}

template <ExactField F>
BiElem<F> add(const F& k, BiElem<F> a, const BiElem<F>& b, const typename F::Element& scale) {
  for (const auto& t : b) a.push_back({t.u, t.w, k.mul(scale, t.c)});
  detail::normalize(k, a);
  return a;
}

/// Coefficient of e_j (x) e_l; a component between equal labels is an
/// isomorphism exactly when this is nonzero.
template <ExactField F>
const typename F::Element* unit_coefficient(const BiElem<F>& v, const Summand& label) {
  for (const auto& t : v)
    if (t.u == label.j && t.w == label.l) return &t.c;
  return nullptr;
}

template <ExactField F>
ProjComplex<F> shift(const ProjComplex<F>& c, int n) {
  ProjComplex<F> out = c;
  out.lo = c.lo - n;
  if (n % 2 != 0) {
    const F& k = c.L->field();
    for (auto& d : out.diff)
      for (auto& comp : d)
        for (auto& t : comp.value) t.c = k.neg(t.c);
  }
  return out;
}

/// True when every composite d o d vanishes.
template <ExactField F>
bool d_squared_zero(const ProjComplex<F>& c) {
  const F& k = c.L->field();
  for (std::size_t i = 0; i + 1 < c.diff.size(); ++i) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, BiElem<F>> acc;
    std::unordered_multimap<std::uint32_t, const Component<F>*> next;
    for (const auto& comp : c.diff[i + 1]) next.emplace(comp.src, &comp);
    for (const auto& f : c.diff[i]) {
      auto range = next.equal_range(f.tgt);
      for (auto it = range.first; it != range.second; ++it) {
        auto& slot = acc[{f.src, it->second->tgt}];
        slot = add(k, slot, compose(*c.L, *c.R, f.value, it->second->value), k.one());
      }
    }
    for (const auto& [key, v] : acc)
      if (!v.empty()) return false;
  }
  return true;
}

/// The complex with one summand per vertex of R in degree 0, i.e. the free
/// right module R = sum e_v R over L = ground field.
template <ExactField F>
ProjComplex<F> free_right_module(const AlgebraPtr<F>& R) {
  ProjComplex<F> c{ground_algebra(R->field()), R, 0, {{}}, {}};
  for (std::uint32_t v = 0; v < R->nvertices(); ++v) c.terms[0].push_back({0, v});
  return c;
}

// ---------------------------------------------------------------------------
// Gaussian elimination of isomorphism components.

template <ExactField F>
class Minimizer {
 public:
  explicit Minimizer(ProjComplex<F>& c) : c_(c), L_(*c.L), R_(*c.R), k_(c.L->field()) {}

  void run() {
    load();
    using Cand = std::tuple<std::size_t, std::uint32_t, std::uint32_t>;
    std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;
    auto consider = [&](std::uint32_t s, std::uint32_t t, const BiElem<F>& v) {
      if (labels_[s] == labels_[t] && unit_coefficient<F>(v, labels_[s])) heap.emplace(cost(s, t), s, t);
    };
    for (std::uint32_t s = 0; s < out_.size(); ++s)
      for (const auto& [t, v] : out_[s]) consider(s, t, v);

    while (!heap.empty()) {
      auto [cst, s, t] = heap.top();
      heap.pop();
      if (!alive_[s] || !alive_[t]) continue;
      auto it = out_[s].find(t);
      if (it == out_[s].end() || !(labels_[s] == labels_[t]) || !unit_coefficient<F>(it->second, labels_[s])) continue;
      const std::size_t now = cost(s, t);
      if (now > cst) {
        heap.emplace(now, s, t);
        continue;
      }
      cancel(s, t, consider);
    }
    store();
  }

 private:
  std::size_t cost(std::uint32_t s, std::uint32_t t) const { return (in_[t].size() - 1) * (out_[s].size() - 1); }

  void load() {
    std::size_t total = 0;
    for (const auto& t : c_.terms) {
      offset_.push_back(static_cast<std::uint32_t>(total));
      for (const auto& s : t) labels_.push_back(s), degree_.push_back(static_cast<std::uint32_t>(offset_.size() - 1));
      total += t.size();
    }
    out_.assign(total, {});
    in_.assign(total, {});
    alive_.assign(total, true);
    for (std::size_t k = 0; k < c_.diff.size(); ++k)
      for (auto& comp : c_.diff[k]) {
        const std::uint32_t s = offset_[k] + comp.src, t = offset_[k + 1] + comp.tgt;
        if (comp.value.empty()) continue;
        out_[s].emplace(t, std::move(comp.value));
        in_[t].insert(s);
      }
  }

  void store() {
    const std::size_t nterms = c_.terms.size();
    std::vector<std::uint32_t> new_index(labels_.size());
    std::vector<std::vector<Summand>> terms(nterms);
    for (std::uint32_t id = 0; id < labels_.size(); ++id) {
      if (!alive_[id]) continue;
      auto& t = terms[degree_[id]];
      new_index[id] = static_cast<std::uint32_t>(t.size());
      t.push_back(labels_[id]);
    }
    std::vector<std::vector<Component<F>>> diff(nterms ? nterms - 1 : 0);
    for (std::uint32_t id = 0; id < labels_.size(); ++id) {
      if (!alive_[id]) continue;
      std::vector<std::pair<std::uint32_t, BiElem<F>*>> edges;
      for (auto& [t, v] : out_[id]) edges.emplace_back(t, &v);
      std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [t, v] : edges) diff[degree_[id]].push_back({new_index[id], new_index[t], std::move(*v)});
    }
    c_.terms = std::move(terms);
    c_.diff = std::move(diff);
    c_.trim();
  }

  /// Inverse of c e + n with n nilpotent: c^-1 sum (-n/c)^i.
  BiElem<F> invert(const BiElem<F>& phi, const Summand& lab) {
    const auto c = *unit_coefficient<F>(phi, lab);
    const auto cinv = k_.inv(c);
    BiElem<F> n;
    for (const auto& t : phi)
      if (!(t.u == lab.j && t.w == lab.l)) n.push_back({t.u, t.w, k_.neg(k_.mul(cinv, t.c))});
    BiElem<F> one{{lab.j, lab.l, cinv}};
    if (n.empty()) return one;
    BiElem<F> sum = one, term = one;
    for (int guard = 0; guard < 1000; ++guard) {
      term = compose(L_, R_, term, n);
      if (term.empty()) return sum;
      sum = add(k_, sum, term, k_.one());
    }
    throw Error("radical part of an isomorphism component is not nilpotent");
  }

  template <class Consider>
  void cancel(std::uint32_t s, std::uint32_t t, Consider& consider) {
    const BiElem<F> inv = invert(out_[s].at(t), labels_[s]);
    std::vector<std::pair<std::uint32_t, BiElem<F>>> sources;
    for (std::uint32_t u : in_[t])
      if (u != s) sources.emplace_back(u, compose(L_, R_, out_[u].at(t), inv));
    std::vector<std::pair<std::uint32_t, const BiElem<F>*>> targets;
    for (const auto& [w, v] : out_[s])
      if (w != t) targets.emplace_back(w, &v);
    const auto minus_one = k_.neg(k_.one());
    for (const auto& [u, cu] : sources)
      for (const auto& [w, b] : targets) {
        BiElem<F> delta = compose(L_, R_, cu, *b);
        if (delta.empty()) continue;
        auto& slot = out_[u][w];
        slot = add(k_, std::move(slot), delta, minus_one);
        if (slot.empty()) {
          out_[u].erase(w);
          in_[w].erase(u);
        } else {
          in_[w].insert(u);
          consider(u, w, slot);
        }
      }
    for (std::uint32_t v : in_[s]) out_[v].erase(s);
    for (const auto& [w, v] : out_[t]) in_[w].erase(t);
    for (const auto& [w, v] : out_[s]) in_[w].erase(s);
    for (std::uint32_t u : in_[t]) out_[u].erase(t);
    in_[s].clear(), out_[s].clear(), in_[t].clear(), out_[t].clear();
    alive_[s] = alive_[t] = false;
  }

  ProjComplex<F>& c_;
  const FinDimAlgebra<F>& L_;
  const FinDimAlgebra<F>& R_;
  const F& k_;
  std::vector<std::uint32_t> offset_, degree_;
  std::vector<Summand> labels_;
  std::vector<std::unordered_map<std::uint32_t, BiElem<F>>> out_;
  std::vector<std::unordered_set<std::uint32_t>> in_;
  std::vector<bool> alive_;
};

/// Cancels every isomorphism component; the result is homotopy equivalent
/// and all remaining components land in the radical.
template <ExactField F>
ProjComplex<F> minimize(ProjComplex<F> c) {
  Minimizer<F>(c).run();
  return c;
}

// ---------------------------------------------------------------------------
// Tensor product over the middle algebra.

/// P (x)_A Q for P an L-A complex and Q an A-R complex of projectives.
/// Summands are (s, beta, s') with beta in a basis of e_l A e_p.
template <ExactField F>
ProjComplex<F> tensor(const ProjComplex<F>& P, const ProjComplex<F>& Q) {
  if (P.R.get() != Q.L.get() && !same_table(*P.R, *Q.L)) throw InvalidArgument("tensor over mismatched algebras");
  const FinDimAlgebra<F>& A = *P.R;
  const F& k = A.field();
  ProjComplex<F> out;
  out.L = P.L;
  out.R = Q.R;
  if (P.terms.empty() || Q.terms.empty()) return out;
  out.lo = P.lo + Q.lo;
  const std::size_t nterms = P.terms.size() + Q.terms.size() - 1;
  out.terms.assign(nterms, {});
  out.diff.assign(nterms - 1, {});

  // index[(a, b)] maps (s, beta, s') to its position in the output term a + b.
  struct Key {
    std::uint32_t s, beta, sp;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& x) const {
      return (static_cast<std::size_t>(x.s) * 1000003u + x.beta) * 1000033u + x.sp;
    }
  };
  std::vector<std::vector<std::unordered_map<Key, std::uint32_t, KeyHash>>> index(
      P.terms.size(), std::vector<std::unordered_map<Key, std::uint32_t, KeyHash>>(Q.terms.size()));
  for (std::size_t a = 0; a < P.terms.size(); ++a)
    for (std::size_t b = 0; b < Q.terms.size(); ++b)
      for (std::uint32_t s = 0; s < P.terms[a].size(); ++s)
        for (std::uint32_t sp = 0; sp < Q.terms[b].size(); ++sp) {
          const auto& ls = P.terms[a][s];
          const auto& lq = Q.terms[b][sp];
          for (std::uint32_t beta : A.block(ls.l, lq.j)) {
            auto& t = out.terms[a + b];
            index[a][b].emplace(Key{s, beta, sp}, static_cast<std::uint32_t>(t.size()));
            t.push_back({ls.j, lq.l});
          }
        }

  // Accumulate components per (output degree, src, tgt).
  std::vector<std::unordered_map<std::uint64_t, BiElem<F>>> acc(nterms ? nterms - 1 : 0);
  auto put = [&](std::size_t deg, std::uint32_t src, std::uint32_t tgt, BiTerm<F> term) {
    acc[deg][(static_cast<std::uint64_t>(src) << 32) | tgt].push_back(std::move(term));
  };

  // d_P (x) 1.
  for (std::size_t a = 0; a + 1 < P.terms.size(); ++a)
    for (const auto& comp : P.diff[a])
      for (std::size_t b = 0; b < Q.terms.size(); ++b)
        for (std::uint32_t sp = 0; sp < Q.terms[b].size(); ++sp) {
          const auto& lq = Q.terms[b][sp];
          const auto& ls = P.terms[a][comp.src];
          for (std::uint32_t beta : A.block(ls.l, lq.j)) {
            const std::uint32_t src = index[a][b].at(Key{comp.src, beta, sp});
            for (const auto& term : comp.value)
              for (const auto& [beta2, cb] : A.mul(term.w, beta)) {
                const std::uint32_t tgt = index[a + 1][b].at(Key{comp.tgt, beta2, sp});
                put(a + b, src, tgt, {term.u, lq.l, k.mul(term.c, cb)});
              }
          }
        }
  // (-1)^deg(s) 1 (x) d_Q.
  for (std::size_t b = 0; b + 1 < Q.terms.size(); ++b)
    for (const auto& comp : Q.diff[b])
      for (std::size_t a = 0; a < P.terms.size(); ++a) {
        const bool odd = ((P.lo + static_cast<int>(a)) % 2) != 0;
        for (std::uint32_t s = 0; s < P.terms[a].size(); ++s) {
          const auto& ls = P.terms[a][s];
          const auto& lq = Q.terms[b][comp.src];
          for (std::uint32_t beta : A.block(ls.l, lq.j)) {
            const std::uint32_t src = index[a][b].at(Key{s, beta, comp.src});
            for (const auto& term : comp.value)
              for (const auto& [beta2, cb] : A.mul(beta, term.u)) {
                const std::uint32_t tgt = index[a][b + 1].at(Key{s, beta2, comp.tgt});
                auto c = k.mul(term.c, cb);
                if (odd) c = k.neg(c);
                put(a + b, src, tgt, {ls.j, term.w, c});
              }
          }
        }
      }
  for (std::size_t d = 0; d < acc.size(); ++d) {
    std::vector<std::pair<std::uint64_t, BiElem<F>*>> keys;
    for (auto& [key, v] : acc[d]) keys.emplace_back(key, &v);
    std::sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [key, v] : keys) {
      detail::normalize(k, *v);
      if (v->empty()) continue;
      out.diff[d].push_back({static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key & 0xffffffffu), std::move(*v)});
    }
  }
  out.trim();
  return out;
}

// ---------------------------------------------------------------------------
// Duality for complexes of projective A-bimodules.

/// Hom_{A^e}(P, A^e) with its outer bimodule structure: L e_j (x) e_l L goes
/// to L e_l (x) e_j L, tensor factors swap, arrows reverse, degrees negate.
template <ExactField F>
ProjComplex<F> bimodule_dual(const ProjComplex<F>& P) {
  if (P.L.get() != P.R.get() && !same_table(*P.L, *P.R)) throw InvalidArgument("bimodule dual needs an A-A complex");
  ProjComplex<F> out;
  out.L = P.R;
  out.R = P.L;
  const std::size_t n = P.terms.size();
  if (n == 0) return out;
  out.lo = -P.hi();
  out.terms.resize(n);
  out.diff.resize(n - 1);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& s : P.terms[k]) out.terms[n - 1 - k].push_back({s.l, s.j});
  for (std::size_t k = 0; k + 1 < n; ++k) {
    auto& d = out.diff[n - 2 - k];
    for (const auto& comp : P.diff[k]) {
      BiElem<F> v;
      for (const auto& t : comp.value) v.push_back({t.w, t.u, t.c});
      detail::normalize(P.L->field(), v);
      d.push_back({comp.tgt, comp.src, std::move(v)});
    }
    std::sort(d.begin(), d.end(), [](const auto& a, const auto& b) { return std::tie(a.src, a.tgt) < std::tie(b.src, b.tgt); });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homology over the ground field.

/// Dimensions of H^k of the underlying complex of vector spaces, computed
/// block by block: e_a C e_b has terms e_a L e_j (x) e_l R e_b.
template <ExactField F>
ExtTable homology(const ProjComplex<F>& C, RankOptions opts = {}) {
  const FinDimAlgebra<F>& L = *C.L;
  const FinDimAlgebra<F>& R = *C.R;
  const F& k = L.field();
  std::vector<std::uint32_t> lpos(L.dim()), rpos(R.dim());
  for (std::size_t a = 0; a < L.nvertices(); ++a)
    for (std::size_t j = 0; j < L.nvertices(); ++j) {
      const auto& b = L.block(a, j);
      for (std::uint32_t i = 0; i < b.size(); ++i) lpos[b[i]] = i;
    }
  for (std::size_t a = 0; a < R.nvertices(); ++a)
    for (std::size_t j = 0; j < R.nvertices(); ++j) {
      const auto& b = R.block(a, j);
      for (std::uint32_t i = 0; i < b.size(); ++i) rpos[b[i]] = i;
    }
  ExtTable table;
  const std::size_t n = C.terms.size();
  for (std::uint32_t a = 0; a < L.nvertices(); ++a)
    for (std::uint32_t b = 0; b < R.nvertices(); ++b) {
      // offsets[k][s]: start of summand s inside e_a C^k e_b.
      std::vector<std::vector<std::size_t>> offsets(n);
      std::vector<std::size_t> dims(n, 0);
      for (std::size_t t = 0; t < n; ++t) {
        for (const auto& s : C.terms[t]) {
          offsets[t].push_back(dims[t]);
          dims[t] += L.block_dim(a, s.j) * R.block_dim(s.l, b);
        }
      }
      std::vector<std::size_t> ranks(n, 0);  // rank of d: C^t -> C^(t+1)
      for (std::size_t t = 0; t + 1 < n; ++t) {
        if (dims[t] == 0 || dims[t + 1] == 0) continue;
        SparseMatrix<F> m(k, dims[t + 1], dims[t]);
        for (const auto& comp : C.diff[t]) {
          const Summand& ls = C.terms[t][comp.src];
          const Summand& lt = C.terms[t + 1][comp.tgt];
          const auto& xs = L.block(a, ls.j);
          const auto& ys = R.block(ls.l, b);
          if (xs.empty() || ys.empty()) continue;
          const std::size_t ny_t = R.block_dim(lt.l, b);
          for (const auto& term : comp.value)
            for (std::size_t ix = 0; ix < xs.size(); ++ix) {
              const auto& xu = L.mul(xs[ix], term.u);
              if (xu.empty()) continue;
              for (std::size_t iy = 0; iy < ys.size(); ++iy) {
                const auto& wy = R.mul(term.w, ys[iy]);
                if (wy.empty()) continue;
                const std::size_t col = offsets[t][comp.src] + ix * ys.size() + iy;
                for (const auto& [x2, cx] : xu)
                  for (const auto& [y2, cy] : wy) {
                    const std::size_t row = offsets[t + 1][comp.tgt] + lpos[x2] * ny_t + rpos[y2];
                    m.add(row, col, k.mul(term.c, k.mul(cx, cy)));
                  }
              }
            }
        }
        m.finalize();
        ranks[t] = m.nonzeros() == 0 ? 0 : sparse_rank(std::move(m));
      }
      (void)opts;
      for (std::size_t t = 0; t < n; ++t) {
        const std::size_t h = dims[t] - ranks[t] - (t > 0 ? ranks[t - 1] : 0);
        table.add(C.lo + static_cast<int>(t), h);
      }
    }
  return table;
}

}  // namespace catdyn
