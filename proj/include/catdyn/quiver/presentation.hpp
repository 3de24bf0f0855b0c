#pragma once

// Line-oriented quiver DSL.
//
//   vertices 1 2 3
//   arrow a: 1 -> 2
//   arrows x y: 2 -> 3
//   relation x*a - 2*y*a = 0      # "x*a" means a then x
//   truncate 6
//   field Q | field Fp 5 | field ext Q -2 0 1 | field ext Fp 5 -2 0 1
//
// Statements end at a newline or ';'. '#' starts a comment.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "catdyn/error.hpp"
#include "catdyn/exact/field.hpp"

namespace catdyn {

struct Arrow {
  std::string name;
  std::size_t source = 0, target = 0;
};

/// coeff * path; `arrows` in traversal order. An empty list is the trivial
/// path at `vertex`.
struct RelationTerm {
  Rational coeff;
  std::vector<std::size_t> arrows;
  std::size_t vertex = 0;
};

struct Relation {
  std::vector<RelationTerm> terms;
  std::size_t line = 0;
};

struct AlgebraPresentation {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  std::size_t truncation = 6;
  FieldSpec field;

  std::optional<std::size_t> vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name) return i;
    return std::nullopt;
  }
  std::optional<std::size_t> arrow_index(const std::string& name) const {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return i;
    return std::nullopt;
  }
  bool is_acyclic() const;
};

namespace dsl {

enum class Tok { Word, Colon, Arrow, Star, Plus, Minus, Equals, Slash, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

/// Tokenizes one statement's worth of characters. Shared with the scenario reader.
inline std::vector<Token> tokenize(const std::string& text, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto word_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < text.size()) {
    const char c = text[i];
    const std::size_t col = i + 1;
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", line, col});
      i += 2;
      continue;
    }
    Tok k;
    switch (c) {
      case ':': k = Tok::Colon; break;
      case '*': k = Tok::Star; break;
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '=': k = Tok::Equals; break;
      case '/': k = Tok::Slash; break;
      default:
        if (!word_char(c)) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        {
          std::size_t j = i;
          while (j < text.size() && word_char(text[j])) ++j;
          out.push_back({Tok::Word, text.substr(i, j - i), line, col});
          i = j;
        }
        continue;
    }
    out.push_back({k, std::string(1, c), line, col});
    ++i;
  }
  out.push_back({Tok::End, "", line, text.size() + 1});
  return out;
}

inline bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : t_(std::move(toks)) {}
  const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  const Token& next() { return t_[std::min(p_++, t_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(what + (t.kind == Tok::End ? " at end of statement" : " near '" + t.text + "'"), t.line, t.column);
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }

  /// [-]digits[/digits]
  Rational rational() {
    bool neg = false;
    if (peek().kind == Tok::Minus) neg = true, next();
    else if (peek().kind == Tok::Plus) next();
    const Token& num = peek();
    if (num.kind != Tok::Word || !is_integer_literal(num.text)) fail("expected a number");
    next();
    Rational q(Integer(num.text), Integer(1));
    if (peek().kind == Tok::Slash) {
      next();
      const Token& den = peek();
      if (den.kind != Tok::Word || !is_integer_literal(den.text) || Integer(den.text) == 0) fail("expected a nonzero denominator");
      next();
      q = Rational(Integer(num.text), Integer(den.text));
      q.canonicalize();
    }
    return neg ? Rational(-q) : q;
  }

  long integer() {
    const Token& t = peek();
    if (t.kind != Tok::Word || !is_integer_literal(t.text) || t.text.size() > 9) fail("expected a small nonnegative integer");
    next();
    return std::stol(t.text);
  }

 private:
  std::vector<Token> t_;
  std::size_t p_ = 0;
};

/// Splits text into statements (newline or ';'), keeping 1-based line and
/// column offsets so errors point into the original source.
struct Statement {
  std::vector<Token> tokens;
};

inline std::vector<Statement> statements(const std::string& text, std::size_t first_line = 1) {
  std::vector<Statement> out;
  std::size_t line = first_line, start = 0;
  auto flush_line = [&](const std::string& l) {
    std::size_t s = 0;
    for (std::size_t i = 0; i <= l.size(); ++i) {
      if (i < l.size() && l[i] == '#') {
        // comment: rest of line ignored
        std::string piece = l.substr(s, i - s);
        auto toks = tokenize(std::string(s, ' ') + piece, line);
        if (toks.size() > 1) out.push_back({std::move(toks)});
        return;
      }
      if (i == l.size() || l[i] == ';') {
        std::string piece = l.substr(s, i - s);
        auto toks = tokenize(std::string(s, ' ') + piece, line);
        if (toks.size() > 1) out.push_back({std::move(toks)});
        s = i + 1;
      }
    }
  };
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string l = text.substr(start, i - start);
      if (!l.empty() && l.back() == '\r') l.pop_back();
      flush_line(l);
      start = i + 1;
      ++line;
    }
  }
  return out;
}

inline FieldSpec parse_field(Cursor& c) {
  const Token& kind = c.expect(Tok::Word, "field kind (Q, Fp, ext)");
  auto base = [&](const std::string& k) -> FieldSpec {
    if (k == "Q") return FieldSpec{0, {}};
    if (k == "Fp") {
      const long p = c.integer();
      if (!detail::is_prime(static_cast<std::uint64_t>(p))) c.fail("Fp needs a prime");
      return FieldSpec{static_cast<std::uint32_t>(p), {}};
    }
    c.fail("unknown field kind '" + k + "'");
  };
  if (kind.text != "ext") return base(kind.text);
  const Token& b = c.expect(Tok::Word, "base field (Q or Fp)");
  FieldSpec spec = base(b.text);
  while (!c.at_end()) spec.minpoly.push_back(c.rational());
  if (spec.minpoly.size() < 2 || spec.minpoly.size() > 5) c.fail("extension needs 2..5 minimal polynomial coefficients");
  if (spec.minpoly.back() != 1) c.fail("minimal polynomial must be monic");
  return spec;
}

}  // namespace dsl

inline bool AlgebraPresentation::is_acyclic() const {
  // Kahn's algorithm on the vertex graph.
  std::vector<std::size_t> indeg(vertices.size(), 0);
  for (const auto& a : arrows) ++indeg[a.target];
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (indeg[v] == 0) stack.push_back(v);
  std::size_t seen = 0;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    ++seen;
    for (const auto& a : arrows)
      if (a.source == v && --indeg[a.target] == 0) stack.push_back(a.target);
  }
  return seen == vertices.size();
}

namespace detail {

inline void parse_relation(dsl::Cursor& c, AlgebraPresentation& p, std::size_t line) {
  using dsl::Tok;
  Relation rel;
  rel.line = line;
  bool first = true;
  while (c.peek().kind != Tok::Equals) {
    if (c.at_end()) c.fail("expected '= 0'");
    Rational sign = 1;
    if (c.peek().kind == Tok::Plus || c.peek().kind == Tok::Minus) {
      if (c.next().kind == Tok::Minus) sign = -1;
    } else if (!first) {
      c.fail("expected '+' or '-' between terms");
    }
    first = false;
    Rational coeff = 1;
    if (c.peek().kind == Tok::Word && dsl::is_integer_literal(c.peek().text) &&
        (c.peek(1).kind == Tok::Star || c.peek(1).kind == Tok::Slash)) {
      coeff = c.rational();
      c.expect(Tok::Star, "'*' after coefficient");
    }
    // Path in composition order: "y*x" means x then y.
    std::vector<dsl::Token> names;
    names.push_back(c.expect(Tok::Word, "path"));
    while (c.peek().kind == Tok::Star) {
      c.next();
      names.push_back(c.expect(Tok::Word, "path"));
    }
    RelationTerm term;
    term.coeff = sign * coeff;
    std::optional<std::size_t> trivial;
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      if (auto a = p.arrow_index(it->text)) {
        term.arrows.push_back(*a);
      } else if (auto v = p.vertex_index(it->text)) {
        if (trivial && *trivial != *v) throw ParseError("non-composable path in relation", it->line, it->column);
        trivial = *v;
      } else {
        throw ParseError("unknown arrow '" + it->text + "'", it->line, it->column);
      }
    }
    for (std::size_t k = 1; k < term.arrows.size(); ++k)
      if (p.arrows[term.arrows[k - 1]].target != p.arrows[term.arrows[k]].source)
        throw ParseError("non-composable path in relation", names.front().line, names.front().column);
    if (!term.arrows.empty() && trivial) {
      // e_v * path or path * e_v: the idempotent must match an endpoint.
      const auto& first_arrow = p.arrows[term.arrows.front()];
      const auto& last_arrow = p.arrows[term.arrows.back()];
      if (*trivial != first_arrow.source && *trivial != last_arrow.target)
        throw ParseError("non-composable path in relation", names.front().line, names.front().column);
    }
    term.vertex = term.arrows.empty() ? *trivial : p.arrows[term.arrows.front()].source;
    rel.terms.push_back(std::move(term));
  }
  c.next();
  const dsl::Token& zero = c.expect(Tok::Word, "0");
  if (zero.text != "0") throw ParseError("relations must read '... = 0'", zero.line, zero.column);
  c.expect_end();
  // All terms share one (source, target) pair; the arrow ideal must contain them.
  auto endpoints = [&](const RelationTerm& t) {
    if (t.arrows.empty()) return std::pair{t.vertex, t.vertex};
    return std::pair{p.arrows[t.arrows.front()].source, p.arrows[t.arrows.back()].target};
  };
  bool has_trivial = false, has_path = false;
  for (const auto& t : rel.terms) {
    if (endpoints(t) != endpoints(rel.terms.front()))
      throw ParseError("relation terms do not share source and target", line, 1);
    (t.arrows.empty() ? has_trivial : has_path) = true;
  }
  if (has_trivial && has_path)
    throw ParseError("relation mixes trivial paths with arrows (outside the arrow ideal)", line, 1);
  p.relations.push_back(std::move(rel));
}

}  // namespace detail

/// Parses quiver DSL text. `first_line` offsets reported positions when the
/// text is embedded in a larger file.
inline AlgebraPresentation parse_quiver(const std::string& text, std::size_t first_line = 1) {
  using dsl::Tok;
  AlgebraPresentation p;
  bool seen_vertices = false, seen_field = false, seen_truncate = false;
  auto check_new_name = [&](const dsl::Token& t) {
    if (!dsl::is_identifier(t.text)) throw ParseError("invalid name '" + t.text + "'", t.line, t.column);
    if (p.vertex_index(t.text) || p.arrow_index(t.text)) throw ParseError("duplicate name '" + t.text + "'", t.line, t.column);
  };
  auto vertex = [&](dsl::Cursor& c) {
    const dsl::Token& t = c.expect(Tok::Word, "vertex name");
    auto v = p.vertex_index(t.text);
    if (!v) throw ParseError("unknown vertex '" + t.text + "'", t.line, t.column);
    return *v;
  };

  for (auto& st : dsl::statements(text, first_line)) {
    dsl::Cursor c(st.tokens);
    const dsl::Token kw = c.expect(Tok::Word, "keyword");
    if (kw.text == "vertices") {
      if (seen_vertices) throw ParseError("vertices declared twice", kw.line, kw.column);
      seen_vertices = true;
      if (c.at_end()) c.fail("expected at least one vertex");
      while (!c.at_end()) {
        const dsl::Token& t = c.expect(Tok::Word, "vertex name");
        check_new_name(t);
        p.vertices.push_back(t.text);
      }
    } else if (kw.text == "arrow" || kw.text == "arrows") {
      std::vector<dsl::Token> names;
      while (c.peek().kind == Tok::Word) names.push_back(c.next());
      if (names.empty()) c.fail("expected arrow name");
      if (kw.text == "arrow" && names.size() != 1) c.fail("use 'arrows' for several names");
      c.expect(Tok::Colon, "':'");
      const std::size_t s = vertex(c);
      c.expect(Tok::Arrow, "'->'");
      const std::size_t t = vertex(c);
      c.expect_end();
      for (const auto& n : names) {
        check_new_name(n);
        p.arrows.push_back({n.text, s, t});
      }
    } else if (kw.text == "relation") {
      detail::parse_relation(c, p, kw.line);
    } else if (kw.text == "truncate") {
      if (seen_truncate) throw ParseError("truncate declared twice", kw.line, kw.column);
      seen_truncate = true;
      const long n = c.integer();
      if (n < 2) throw ParseError("truncation must be at least 2", kw.line, kw.column);
      c.expect_end();
      p.truncation = static_cast<std::size_t>(n);
    } else if (kw.text == "field") {
      if (seen_field) throw ParseError("field declared twice", kw.line, kw.column);
      seen_field = true;
      p.field = dsl::parse_field(c);
      c.expect_end();
    } else {
      throw ParseError("unknown keyword '" + kw.text + "'", kw.line, kw.column);
    }
  }
  if (!seen_vertices) throw ParseError("missing 'vertices' declaration", first_line, 1);
  return p;
}

}  // namespace catdyn
