#pragma once

// Bundled scenarios. samples/<name>.scn holds the same text.

#include <algorithm>
#include <string>
#include <vector>

#include "catdyn/scenario/runner.hpp"

namespace catdyn {

struct CorpusEntry {
  const char* name;
  const char* text;
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"phi0_quartic", R"(scenario phi0_quartic
# T_O o (- (x) O(-H)) on a quartic K3 (H^2 = 4), fourth power
[lattice]
degree 2
word phi0
power 4
expect trivial
)"},
      {"phi0_d3", R"(scenario phi0_d3
[lattice]
degree 3
word phi0
power 4
expect trivial
)"},
      {"phi0_d4", R"(scenario phi0_d4
[lattice]
degree 4
word phi0
power 4
expect trivial
)"},
      {"phi0_d5", R"(scenario phi0_d5
[lattice]
degree 5
word phi0
power 4
expect trivial
)"},
      {"a2_serre", R"(scenario a2_serre
[algebra]
vertices 1 2
arrow a: 1->2
[entropy]
functor serre
nmax 12
tgrid -1:1:0.25
)"},
      {"a2_shift", R"(scenario a2_shift
[algebra]
vertices 1 2
arrow a: 1->2
[entropy]
functor shift
nmax 8
tgrid -1:1:0.25
)"},
      {"kron3_serre", R"(scenario kron3_serre
# Serre functor of the 3-Kronecker quiver; F_32003 above n = 4
[algebra]
vertices 1 2
arrows a b c: 1->2
[entropy]
functor serre
nmax 6
tgrid -1:1:0.25
field auto
exact_max 4
)"},
      {"semisimple_identity", R"(scenario semisimple_identity
[algebra]
vertices 1 2
[entropy]
functor identity
nmax 6
)"},
      {"basechange_sqrt2", R"(scenario basechange_sqrt2
[algebra]
vertices 1 2 3
arrows a b: 1->2
arrow c: 2->3
relation c*a = 0
[entropy]
functor serre
nmax 4
field Q
[basechange]
extension -2 0 1
)"},
      {"basechange_f25", R"(scenario basechange_f25
[algebra]
vertices 1 2 3
arrows a b: 1->2
arrow c: 2->3
relation c*a = 0
field Fp 5
[entropy]
functor serre
nmax 4
[basechange]
extension 2 0 1
)"},
  };
  return entries;
}

inline std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& e : corpus()) out.emplace_back(e.name);
  return out;
}

inline Scenario corpus_scenario(const std::string& name) {
  for (const auto& e : corpus())
    if (name == e.name) return parse_scenario(e.text);
  throw InvalidArgument("unknown corpus scenario '" + name + "'");
}

/// Runs the named scenarios in the given order. Unknown or repeated names
/// are rejected before anything runs.
inline std::vector<Report> corpus_run(const std::vector<std::string>& names, const RunOptions& opt = {}) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (std::find(names.begin(), names.begin() + static_cast<long>(i), names[i]) != names.begin() + static_cast<long>(i))
      throw InvalidArgument("duplicate corpus scenario '" + names[i] + "'");
    (void)corpus_scenario(names[i]);
  }
  std::vector<Report> out;
  for (const auto& n : names) out.push_back(run_scenario(corpus_scenario(n), opt));
  return out;
}

}  // namespace catdyn
