#pragma once

// Quasi-endofunctors of per(A) as complexes of projective A-A bimodules:
// generators, composition by derived tensor, and Hochschild (co)homology.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/homological/complex.hpp"
#include "catdyn/homological/hom.hpp"
#include "catdyn/homological/module.hpp"

namespace catdyn {

template <ExactField F>
std::size_t default_smoothness_bound(const FinDimAlgebra<F>& A) {
  return A.dim() + 1;
}

struct SmoothnessReport {
  std::size_t bound = 0;
  std::optional<std::size_t> diagonal_pd;  // empty: exceeds bound
  bool smooth() const { return diagonal_pd.has_value(); }
  std::string describe() const {
    return diagonal_pd ? std::to_string(*diagonal_pd) : "exceeds bound " + std::to_string(bound);
  }
};

template <ExactField F>
SmoothnessReport smoothness_check(const AlgebraPtr<F>& A, std::size_t bound) {
  if (bound < 1) throw InvalidArgument("smoothness bound must be at least 1");
  const auto res = minimal_resolution(diagonal_bimodule(A), bound);
  SmoothnessReport r{bound, std::nullopt};
  if (!res.truncated) r.diagonal_pd = res.length();
  return r;
}

/// Ext^i(X, Y) for concrete modules over the same algebras.
template <ExactField F>
ExtTable ext_dims(const ConcreteBimodule<F>& X, const ConcreteBimodule<F>& Y, std::size_t bound) {
  const auto res = minimal_resolution(X, bound);
  if (res.truncated) throw NotSmooth("algebra not smooth within bound " + std::to_string(bound));
  return hom_homology(res.complex, Y);
}

/// Composite kernel: first applied first, so E |-> (E (x) first) (x) second.
template <ExactField F>
ProjComplex<F> derived_tensor(const ProjComplex<F>& first, const ProjComplex<F>& second) {
  return minimize(tensor(first, second));
}

// ---------------------------------------------------------------------------
// Functor words.

enum class FunctorGenerator { diagonal, shift, shift_inverse, serre, inverse_serre };

inline const char* generator_name(FunctorGenerator g) {
  switch (g) {
    case FunctorGenerator::diagonal: return "diagonal";
    case FunctorGenerator::shift: return "shift";
    case FunctorGenerator::shift_inverse: return "shift_inverse";
    case FunctorGenerator::serre: return "serre";
    case FunctorGenerator::inverse_serre: return "inverse_serre";
  }
  return "?";
}

/// Factors in application order (first element applied first).
struct FunctorWord {
  std::vector<FunctorGenerator> factors;
  std::string text;
};

/// Parses "serre", "shift^2 o serre", "inverse_serre . shift". Composition
/// reads right to left: "a o b" applies b first.
inline FunctorWord parse_functor_word(const std::string& text) {
  FunctorWord w{{}, text};
  std::vector<std::vector<FunctorGenerator>> groups;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& msg) { throw ParseError(msg + " in functor word '" + text + "'", 0, i + 1); };
  bool need_factor = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    if (!need_factor) {
      if (text.compare(i, 3, "\xE2\x88\x98") == 0) i += 3;
      else if (text[i] == '.' || text[i] == 'o') ++i;
      else fail("expected composition");
      need_factor = true;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    const std::string name = text.substr(start, i - start);
    FunctorGenerator g;
    if (name == "diagonal" || name == "identity") g = FunctorGenerator::diagonal;
    else if (name == "shift") g = FunctorGenerator::shift;
    else if (name == "shift_inverse") g = FunctorGenerator::shift_inverse;
    else if (name == "serre") g = FunctorGenerator::serre;
    else if (name == "inverse_serre") g = FunctorGenerator::inverse_serre;
    else {
      i = start;
      fail(name.empty() ? "expected generator" : "unknown generator '" + name + "'");
    }
    long power = 1;
    skip();
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip();
      std::size_t s = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (s == i) fail("expected exponent");
      power = std::stol(text.substr(s, i - s));
      if (power < 1 || power > 64) fail("exponent out of range");
    }
    groups.emplace_back(static_cast<std::size_t>(power), g);
    need_factor = false;
  }
  if (groups.empty() || need_factor) fail("incomplete functor word");
  for (auto it = groups.rbegin(); it != groups.rend(); ++it)
    for (auto g : *it) w.factors.push_back(g);
  return w;
}

/// Kernels of the generating functors over a fixed smooth algebra.
template <ExactField F>
class FunctorKernels {
 public:
  explicit FunctorKernels(AlgebraPtr<F> A, std::optional<std::size_t> bound = std::nullopt) : A_(std::move(A)) {
    const std::size_t b = bound.value_or(default_smoothness_bound(*A_));
    auto res = minimal_resolution(diagonal_bimodule(A_), b);
    if (res.truncated) throw NotSmooth("algebra not smooth within bound " + std::to_string(b));
    diagonal_ = std::move(res.complex);
    auto sres = minimal_resolution(serre_dual_bimodule(A_), b);
    if (sres.truncated) throw NotSmooth("Serre bimodule has no finite resolution within bound " + std::to_string(b));
    serre_ = std::move(sres.complex);
    inverse_ = bimodule_dual(diagonal_);
  }

  const AlgebraPtr<F>& algebra() const { return A_; }
  const ProjComplex<F>& diagonal() const { return diagonal_; }
  const ProjComplex<F>& serre() const { return serre_; }
  const ProjComplex<F>& inverse_dualizing() const { return inverse_; }

  ProjComplex<F> generator(FunctorGenerator g) const {
    switch (g) {
      case FunctorGenerator::diagonal: return diagonal_;
      case FunctorGenerator::shift: return shift(diagonal_, 1);
      case FunctorGenerator::shift_inverse: return shift(diagonal_, -1);
      case FunctorGenerator::serre: return serre_;
      case FunctorGenerator::inverse_serre: return inverse_;
    }
    throw InvalidArgument("unknown functor generator");
  }

  ProjComplex<F> kernel(const FunctorWord& w) const {
    if (w.factors.empty()) return diagonal_;
    ProjComplex<F> k = generator(w.factors.front());
    for (std::size_t i = 1; i < w.factors.size(); ++i) k = derived_tensor(k, generator(w.factors[i]));
    return k;
  }

  /// HH^i = Ext^i_{A^e}(M, A).
  ExtTable hochschild_cohomology(const ProjComplex<F>& M) const {
    return hom_homology(M, diagonal_bimodule(A_));
  }

  /// HH_i = Ext^{-i}(S^-1, M), keyed by i. The trace complex A (x)_{A^e} M
  /// computes the same numbers; disagreement throws.
  ExtTable hochschild_homology(const ProjComplex<F>& M) const {
    ExtTable def = hom_homology(inverse_, M).reindexed(-1, 0);
    ExtTable oracle = trace_homology(M).reindexed(-1, 0);
    if (!(def == oracle)) throw Error("Hochschild homology: definition and trace complex disagree");
    return def;
  }

  /// The definitional route alone, without the cross-check.
  ExtTable hochschild_homology_definition(const ProjComplex<F>& M) const {
    return hom_homology(inverse_, M).reindexed(-1, 0);
  }
  ExtTable hochschild_homology_trace(const ProjComplex<F>& M) const { return trace_homology(M).reindexed(-1, 0); }

 private:
  AlgebraPtr<F> A_;
  ProjComplex<F> diagonal_, serre_, inverse_;
};

/// Dimensions of H^i(M^{(x) n}) = Ext^i(A, Phi^n(A)).
template <ExactField F>
ExtTable functor_power_homology(const ProjComplex<F>& M, std::size_t n) {
  if (n < 1) throw InvalidArgument("power must be at least 1");
  ProjComplex<F> X = minimize(free_right_module(M.R));
  for (std::size_t i = 0; i < n; ++i) X = minimize(tensor(X, M));
  return homology(X);
}

}  // namespace catdyn
