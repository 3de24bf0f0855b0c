#pragma once

// Scenario files. One file = one scenario:
//
//   scenario <name>
//   seed <n>                    (optional, default 0)
//   [algebra]                   quiver DSL, verbatim
//   [entropy]                   functor, nmax, tgrid, tolerance, yomdin_tolerance,
//                               field, exact_max, cap, hochschild
//   [lattice]                   degree | gram, word, power, expect
//   [basechange]                extension <minpoly coefficients>
//
// Exactly one of [algebra] / [lattice] must be present; [entropy] goes with
// [algebra], [basechange] too. `#` starts a comment.

#include <charconv>
#include <cstdint>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "catdyn/entropy/entropy.hpp"
#include "catdyn/error.hpp"
#include "catdyn/lattice/mukai.hpp"
#include "catdyn/quiver/presentation.hpp"

namespace catdyn {

inline constexpr std::uint32_t kDefaultLargePrime = 32003;

struct FieldPolicy {
  enum class Kind { automatic, rational, prime };
  Kind kind = Kind::automatic;
  std::uint32_t prime = kDefaultLargePrime;

  std::string text() const {
    switch (kind) {
      case Kind::automatic: return "auto";
      case Kind::rational: return "Q";
      case Kind::prime: return "Fp " + std::to_string(prime);
    }
    return "auto";
  }
  friend bool operator==(const FieldPolicy&, const FieldPolicy&) = default;
};

struct EntropyParams {
  std::string functor;
  int n_max = 6;
  std::string tgrid_text = "-1:1:0.25";
  std::vector<double> tgrid = make_tgrid(-1, 1, 0.25);
  double tolerance = 0.1;
  double yomdin_tolerance = 0.15;
  FieldPolicy field;
  int exact_max = 4;  // auto policy: rational confirmation up to this n
  std::size_t cap = 4000000;
  bool hochschild = true;
};

struct LatticeParams {
  std::optional<long> degree;     // NS = Z H with H^2 = 2d
  std::optional<IntMatrix> gram;  // general NS Gram matrix
  std::string word;
  long power = 1;
  bool expect_trivial = false;

  MukaiLattice lattice() const { return degree ? MukaiLattice::degree(*degree) : MukaiLattice(*gram); }
};

struct BaseChangeParams {
  std::vector<Rational> minpoly;
};

struct Scenario {
  std::string name;
  std::string text;
  std::uint64_t seed = 0;
  std::optional<std::string> algebra;
  std::size_t algebra_line = 1;
  std::optional<EntropyParams> entropy;
  std::optional<LatticeParams> lattice;
  std::optional<BaseChangeParams> basechange;

  bool is_lattice() const { return lattice.has_value(); }
};

namespace scenario_detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::string strip_comment(const std::string& s) {
  const auto h = s.find('#');
  return trim(h == std::string::npos ? s : s.substr(0, h));
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] inline void fail(const std::string& what, std::size_t line) { throw ParseError(what, line, 1); }

inline double parse_double(const std::string& s, std::size_t line) {
  double v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) fail("expected a number, got '" + s + "'", line);
  return v;
}

inline long parse_long(const std::string& s, std::size_t line) {
  long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail("expected an integer, got '" + s + "'", line);
  return v;
}

inline std::uint64_t parse_unsigned(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail("expected a nonnegative integer, got '" + s + "'", line);
  return v;
}

inline Rational parse_rational(const std::string& s, std::size_t line) {
  static const std::regex re(R"(-?\d+(/\d+)?)");
  if (!std::regex_match(s, re)) fail("expected a rational, got '" + s + "'", line);
  Rational q(s);
  if (q.get_den() == 0) fail("zero denominator in '" + s + "'", line);
  q.canonicalize();
  return q;
}

}  // namespace scenario_detail

/// "a:b:step".
inline std::vector<double> parse_tgrid(const std::string& text, std::size_t line = 1) {
  using namespace scenario_detail;
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) fail("t grid must look like lo:hi:step", line);
  const double lo = parse_double(text.substr(0, c1), line);
  const double hi = parse_double(text.substr(c1 + 1, c2 - c1 - 1), line);
  const double step = parse_double(text.substr(c2 + 1), line);
  if (!(step > 0) || hi < lo) fail("t grid needs lo <= hi and step > 0", line);
  if ((hi - lo) / step > 400) fail("t grid has more than 400 points", line);
  return make_tgrid(lo, hi, step);
}

inline FieldPolicy parse_field_policy(const std::vector<std::string>& args, std::size_t line = 1) {
  using namespace scenario_detail;
  if (args.size() == 1 && args[0] == "auto") return {};
  if (args.size() == 1 && args[0] == "Q") return {FieldPolicy::Kind::rational, 0};
  if (args.size() <= 2 && args[0] == "Fp") {
    const auto p = args.size() == 2 ? parse_unsigned(args[1], line) : kDefaultLargePrime;
    if (p < 2 || p > 2147483647 || !detail::is_prime(p)) fail("Fp needs a prime below 2^31", line);
    return {FieldPolicy::Kind::prime, static_cast<std::uint32_t>(p)};
  }
  fail("field policy must be auto, Q or Fp [p]", line);
}

/// Lattice word: factors joined by " o " (rightmost applied first), each
/// phi0 | shift | reflect(r,c..,m) | twist(l..), optionally followed by ^k.
inline LatticeIsometry parse_lattice_word(const std::string& text, const LatticeParams& lp, std::size_t line = 1) {
  using namespace scenario_detail;
  const MukaiLattice lat = lp.lattice();
  static const std::regex factor_re(R"(^\s*(phi0|shift|reflect\(([^)]*)\)|twist\(([^)]*)\))\s*(\^\s*(-?\d+))?\s*$)");
  auto integers = [&](const std::string& list) {
    std::vector<Integer> out;
    std::string cur;
    std::istringstream in(list);
    while (std::getline(in, cur, ',')) out.emplace_back(parse_long(trim(cur), line));
    return out;
  };
  std::vector<std::string> pieces;
  std::string rest = text;
  for (std::size_t pos; (pos = rest.find(" o ")) != std::string::npos;) {
    pieces.push_back(rest.substr(0, pos));
    rest = rest.substr(pos + 3);
  }
  pieces.push_back(rest);
  LatticeIsometry out = LatticeIsometry::identity(lat);
  for (const auto& piece : pieces) {
    std::smatch m;
    if (!std::regex_match(piece, m, factor_re)) fail("bad lattice word factor '" + trim(piece) + "'", line);
    const std::string head = m[1].str();
    std::optional<LatticeIsometry> f;
    try {
      if (head == "phi0") {
        if (!lp.degree) fail("phi0 needs a `degree` lattice", line);
        f = phi_zero_generator(*lp.degree);
      } else if (head == "shift") {
        f = shift_isometry(lat);
      } else if (head.rfind("reflect", 0) == 0) {
        const auto c = integers(m[2].str());
        if (c.size() != lat.rank()) fail("reflect needs " + std::to_string(lat.rank()) + " coordinates", line);
        f = spherical_reflection(MukaiVector::from_coordinates(lat, c));
      } else {
        f = line_bundle_twist(lat, integers(m[3].str()));
      }
    } catch (const InvalidArgument& e) {
      fail(e.what(), line);
    }
    if (m[5].matched) {
      const long k = parse_long(m[5].str(), line);
      if (k < -64 || k > 64) fail("lattice word exponents must lie in -64..64", line);
      f = power(*f, k);
    }
    out = compose(out, *f);
  }
  return out;
}

inline Scenario parse_scenario(const std::string& text) {
  using namespace scenario_detail;
  Scenario s;
  s.text = text;
  enum class Sec { none, algebra, entropy, lattice, basechange } sec = Sec::none;
  std::string algebra_text;
  std::vector<std::string> seen;
  std::size_t lattice_line = 0, word_line = 0;
  std::istringstream in(text);
  std::size_t lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const std::string line = strip_comment(raw);
    if (sec == Sec::algebra && (line.empty() || line.front() != '[')) {
      algebra_text += raw + "\n";
      continue;
    }
    if (line.empty()) continue;
    if (s.name.empty()) {
      const auto w = words(line);
      static const std::regex name_re("[a-z][a-z0-9_]*");
      if (w.size() != 2 || w[0] != "scenario") fail("file must start with `scenario <name>`", lineno);
      if (!std::regex_match(w[1], name_re)) fail("scenario names use [a-z0-9_] and start with a letter", lineno);
      s.name = w[1];
      continue;
    }
    if (line.front() == '[') {
      const std::string tag = line;
      if (std::find(seen.begin(), seen.end(), tag) != seen.end()) fail("duplicate section " + tag, lineno);
      seen.push_back(tag);
      if (tag == "[algebra]") {
        sec = Sec::algebra, s.algebra_line = lineno + 1;
      } else if (tag == "[entropy]") {
        sec = Sec::entropy, s.entropy.emplace();
      } else if (tag == "[lattice]") {
        sec = Sec::lattice, s.lattice.emplace(), lattice_line = lineno;
      } else if (tag == "[basechange]") {
        sec = Sec::basechange, s.basechange.emplace();
      } else {
        fail("unknown section " + tag, lineno);
      }
      continue;
    }
    const auto w = words(line);
    const std::string& key = w[0];
    const std::vector<std::string> args(w.begin() + 1, w.end());
    auto one = [&]() -> const std::string& {
      if (args.size() != 1) fail("`" + key + "` takes one value", lineno);
      return args[0];
    };
    if (key == "seed" && sec != Sec::algebra) {
      s.seed = parse_unsigned(one(), lineno);
      continue;
    }
    switch (sec) {
      case Sec::none: fail("expected a section header, got '" + line + "'", lineno);
      case Sec::algebra: break;
      case Sec::entropy: {
        auto& e = *s.entropy;
        if (key == "functor") {
          e.functor = trim(line.substr(key.size()));
          try {
            parse_functor_word(e.functor);
          } catch (const ParseError& pe) {
            fail(std::string("functor word: ") + pe.what(), lineno);
          }
        } else if (key == "nmax") {
          e.n_max = static_cast<int>(parse_long(one(), lineno));
        } else if (key == "tgrid") {
          e.tgrid_text = one();
          e.tgrid = parse_tgrid(e.tgrid_text, lineno);
        } else if (key == "tolerance") {
          e.tolerance = parse_double(one(), lineno);
        } else if (key == "yomdin_tolerance") {
          e.yomdin_tolerance = parse_double(one(), lineno);
        } else if (key == "field") {
          if (args.empty()) fail("`field` needs a value", lineno);
          e.field = parse_field_policy(args, lineno);
        } else if (key == "exact_max") {
          e.exact_max = static_cast<int>(parse_long(one(), lineno));
        } else if (key == "cap") {
          e.cap = parse_unsigned(one(), lineno);
        } else if (key == "hochschild") {
          if (one() != "on" && one() != "off") fail("hochschild takes on|off", lineno);
          e.hochschild = one() == "on";
        } else {
          fail("unknown [entropy] key '" + key + "'", lineno);
        }
        break;
      }
      case Sec::lattice: {
        auto& l = *s.lattice;
        if (key == "degree") {
          l.degree = parse_long(one(), lineno);
          if (*l.degree < 1) fail("degree must be positive", lineno);
        } else if (key == "gram") {
          nlohmann::json g;
          try {
            g = nlohmann::json::parse(trim(line.substr(key.size())));
          } catch (const nlohmann::json::exception&) {
            fail("gram must be a JSON array of rows", lineno);
          }
          std::vector<std::vector<long>> rows;
          try {
            rows = g.get<std::vector<std::vector<long>>>();
          } catch (const nlohmann::json::exception&) {
            fail("gram must be a JSON array of integer rows", lineno);
          }
          if (rows.empty()) fail("gram must be nonempty", lineno);
          for (const auto& r : rows)
            if (r.size() != rows.size()) fail("gram must be square", lineno);
          l.gram = int_matrix(rows);
        } else if (key == "word") {
          l.word = trim(line.substr(key.size()));
          word_line = lineno;
        } else if (key == "power") {
          l.power = parse_long(one(), lineno);
          if (l.power < 1 || l.power > 64) fail("power must lie in 1..64", lineno);
        } else if (key == "expect") {
          if (one() != "trivial") fail("only `expect trivial` is supported", lineno);
          l.expect_trivial = true;
        } else {
          fail("unknown [lattice] key '" + key + "'", lineno);
        }
        break;
      }
      case Sec::basechange: {
        if (key != "extension") fail("unknown [basechange] key '" + key + "'", lineno);
        for (const auto& a : args) s.basechange->minpoly.push_back(parse_rational(a, lineno));
        if (s.basechange->minpoly.size() < 3 || s.basechange->minpoly.size() > 5)
          fail("extension needs a monic minimal polynomial of degree 2..4", lineno);
        if (s.basechange->minpoly.back() != 1) fail("minimal polynomial must be monic", lineno);
        break;
      }
    }
  }
  if (s.name.empty()) fail("empty scenario", lineno ? lineno : 1);
  const bool has_algebra = std::find(seen.begin(), seen.end(), "[algebra]") != seen.end();
  if (has_algebra && s.lattice) fail("scenario has both [algebra] and [lattice]", lineno);
  if (!has_algebra && !s.lattice) fail("scenario needs an [algebra] or a [lattice] section", lineno);
  if (has_algebra) {
    s.algebra = algebra_text;
    parse_quiver(algebra_text, s.algebra_line);
    if (!s.entropy) fail("[algebra] scenarios need an [entropy] section", lineno);
    if (s.entropy->functor.empty()) fail("[entropy] needs a `functor` line", lineno);
    const auto& e = *s.entropy;
    if (e.n_max < 3 || e.n_max > 40) fail("nmax must lie in 3..40", lineno);
    if (e.exact_max < 1) fail("exact_max must be positive", lineno);
    if (!(e.tolerance >= 0) || !(e.yomdin_tolerance >= 0)) fail("tolerances must be nonnegative", lineno);
    if (e.cap < 1) fail("cap must be positive", lineno);
  } else {
    if (s.entropy) fail("[entropy] only applies to [algebra] scenarios", lineno);
    if (s.basechange) fail("[basechange] only applies to [algebra] scenarios", lineno);
    auto& l = *s.lattice;
    if (l.degree.has_value() == l.gram.has_value()) fail("[lattice] needs exactly one of `degree` and `gram`", lattice_line);
    if (l.word.empty()) fail("[lattice] needs a `word` line", lattice_line);
    try {
      (void)l.lattice();
    } catch (const InvalidArgument& e) {
      fail(e.what(), lattice_line);
    }
    parse_lattice_word(l.word, l, word_line);
  }
  return s;
}

}  // namespace catdyn
