// Test-side generators and independent checkers.

#ifndef TREL_TESTS_SUPPORT_HPP_
#define TREL_TESTS_SUPPORT_HPP_

#include <cctype>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trel/formula.hpp"
#include "trel/relevance.hpp"
#include "trel/tableau.hpp"

namespace testing {

using trel::Formula;

inline std::vector<Formula> parse_all(const std::vector<std::string>& texts) {
  trel::Parser p;
  std::vector<Formula> out;
  for (const auto& t : texts) out.push_back(p.parse(t));
  return out;
}

inline std::string strip_ws(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// Random closed formulas. Predicate arity is fixed per symbol: S/0, P/1, Q/1,
// R/2. Quantified variables are drawn from x, y, z without rebinding.
class FormulaGen {
 public:
  explicit FormulaGen(std::uint64_t seed) : rng_(seed) {}

  Formula logic(int depth) {
    std::vector<std::string> scope;
    return logic_in(depth, scope);
  }

  // Closed arithmetic sentence: at least one quantifier over comparisons.
  Formula arith(int depth) {
    std::vector<std::string> scope{"x"};
    Formula body = arith_in(depth, scope);
    return pick(2) ? Formula::forall("x", body) : Formula::exists("x", body);
  }

  // Quantifier-free formula over a fixed atom pool.
  Formula ground(const std::vector<Formula>& atoms, int depth) {
    if (depth <= 0 || pick(4) == 0) {
      Formula a = atoms[pick(atoms.size())];
      return pick(3) == 0 ? Formula::negation(a) : a;
    }
    switch (pick(6)) {
      case 0: return Formula::negation(ground(atoms, depth - 1));
      case 1: return Formula::conj(ground(atoms, depth - 1), ground(atoms, depth - 1));
      case 2: return Formula::disj(ground(atoms, depth - 1), ground(atoms, depth - 1));
      case 3: return Formula::implies(ground(atoms, depth - 1), ground(atoms, depth - 1));
      case 4: return Formula::binary(trel::Op::Iff, ground(atoms, depth - 1), ground(atoms, depth - 1));
      default: return Formula::conj(ground(atoms, depth - 1), ground(atoms, depth - 1));
    }
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  trel::Term term(const std::vector<std::string>& scope) {
    static const char* constants[] = {"a", "b", "c1"};
    if (!scope.empty() && pick(2)) return trel::Term::variable(scope[pick(scope.size())]);
    return trel::Term::constant(constants[pick(3)]);
  }

  Formula atom(const std::vector<std::string>& scope) {
    switch (pick(5)) {
      case 0: return Formula::atomic(trel::Predicate{"S", {}});
      case 1: return Formula::atomic(trel::Predicate{"P", {term(scope)}});
      case 2: return Formula::atomic(trel::Predicate{"Q", {term(scope)}});
      case 3: return Formula::atomic(trel::Predicate{"R", {term(scope), term(scope)}});
      default: return Formula::atomic(trel::Identity{term(scope), term(scope)});
    }
  }

  Formula logic_in(int depth, std::vector<std::string>& scope) {
    if (depth <= 0 || pick(5) == 0) return atom(scope);
    switch (pick(8)) {
      case 0: return Formula::negation(logic_in(depth - 1, scope));
      case 1: return Formula::conj(logic_in(depth - 1, scope), logic_in(depth - 1, scope));
      case 2: return Formula::disj(logic_in(depth - 1, scope), logic_in(depth - 1, scope));
      case 3: return Formula::implies(logic_in(depth - 1, scope), logic_in(depth - 1, scope));
      case 4: return Formula::binary(trel::Op::Iff, logic_in(depth - 1, scope), logic_in(depth - 1, scope));
      default: {
        static const char* vars[] = {"x", "y", "z"};
        std::vector<std::string> free;
        for (const char* v : vars)
          if (std::find(scope.begin(), scope.end(), v) == scope.end()) free.push_back(v);
        if (free.empty()) return Formula::negation(logic_in(depth - 1, scope));
        std::string v = free[pick(free.size())];
        scope.push_back(v);
        Formula body = logic_in(depth - 1, scope);
        scope.pop_back();
        return pick(2) ? Formula::forall(v, body) : Formula::exists(v, body);
      }
    }
  }

  trel::IntTerm intterm(const std::vector<std::string>& scope) {
    trel::IntTerm t;
    std::size_t n = 1 + pick(2);
    for (std::size_t i = 0; i < n; ++i) {
      if (pick(2))
        t.summands.push_back(trel::Term::variable(scope[pick(scope.size())]));
      else
        t.summands.push_back(trel::Term::numeral(pick(13)));
    }
    return t;
  }

  Formula arith_in(int depth, std::vector<std::string>& scope) {
    if (depth <= 0 || pick(4) == 0) {
      trel::Comparison c;
      c.lhs = intterm(scope);
      c.rel = static_cast<trel::Rel>(pick(6));
      c.rhs = intterm(scope);
      return Formula::atomic(c);
    }
    switch (pick(5)) {
      case 0: return Formula::negation(arith_in(depth - 1, scope));
      case 1: return Formula::conj(arith_in(depth - 1, scope), arith_in(depth - 1, scope));
      case 2: return Formula::disj(arith_in(depth - 1, scope), arith_in(depth - 1, scope));
      case 3: return Formula::implies(arith_in(depth - 1, scope), arith_in(depth - 1, scope));
      default: {
        if (scope.size() > 1) return Formula::negation(arith_in(depth - 1, scope));
        scope.push_back("y");
        Formula body = arith_in(depth - 1, scope);
        scope.pop_back();
        return pick(2) ? Formula::forall("y", body) : Formula::exists("y", body);
      }
    }
  }

  std::mt19937_64 rng_;
};

// Minimal DOT checker: `digraph ID { stmt* }` where a statement is a node
// statement `ID [attr=value, ...];`, an edge `ID -> ID;`, or `node [...];`.
// Quoted strings honor backslash escapes. Edges must name declared nodes.
class DotChecker {
 public:
  explicit DotChecker(std::string_view text) : text_(text), s_(text_) {}

  bool valid() {
    try {
      parse();
      return true;
    } catch (const std::exception& e) {
      error = e.what();
      return false;
    }
  }

  std::string error;
  std::set<std::string> nodes;
  std::size_t edges = 0;

 private:
  [[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg + " at " + std::to_string(p_)); }

  void ws() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }

  bool eat(std::string_view tok) {
    ws();
    if (s_.substr(p_).starts_with(tok)) {
      p_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string id() {
    ws();
    if (p_ < s_.size() && s_[p_] == '"') {
      std::string out;
      ++p_;
      while (p_ < s_.size() && s_[p_] != '"') {
        if (s_[p_] == '\\') ++p_;
        if (p_ >= s_.size()) fail("unterminated string");
        out += s_[p_++];
      }
      if (p_ >= s_.size()) fail("unterminated string");
      ++p_;
      return out;
    }
    std::size_t start = p_;
    while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
    if (p_ == start) fail("expected identifier");
    return std::string(s_.substr(start, p_ - start));
  }

  void attrs() {
    if (!eat("[")) return;
    while (!eat("]")) {
      id();
      expect("=");
      id();
      eat(",");
      eat(";");
      if (p_ >= s_.size()) fail("unterminated attribute list");
    }
  }

  void parse() {
    expect("digraph");
    ws();
    if (!eat("{")) {
      id();
      expect("{");
    }
    while (!eat("}")) {
      if (p_ >= s_.size()) fail("missing '}'");
      if (eat("node")) {
        attrs();
        expect(";");
        continue;
      }
      std::string a = id();
      if (eat("->")) {
        std::string b = id();
        if (!nodes.contains(a) || !nodes.contains(b)) fail("edge between undeclared nodes");
        ++edges;
        attrs();
      } else {
        nodes.insert(a);
        attrs();
      }
      expect(";");
    }
    ws();
    if (p_ != s_.size()) fail("trailing input");
  }

  std::string text_;
  std::string_view s_;
  std::size_t p_ = 0;
};

// Minimal hitting sets over per-branch closure-pair templates, for trees
// without identity literals (each pair then credits exactly one template).
inline std::vector<trel::TemplateSet> brute_hitting_sets(const trel::SaturatedTree& t,
                                                         const trel::TemplateSet& universe) {
  std::vector<std::string> atoms(universe.begin(), universe.end());
  std::vector<std::set<std::string>> families;
  for (const auto& b : t.branches()) {
    std::set<std::string> fam;
    for (const auto& [_, templates] : b.credits) fam.insert(templates.begin(), templates.end());
    families.push_back(fam);
  }
  std::vector<trel::TemplateSet> hits;
  const std::size_t n = atoms.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    trel::TemplateSet s;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1U) s.insert(atoms[i]);
    bool all = std::all_of(families.begin(), families.end(), [&](const auto& fam) {
      return std::any_of(fam.begin(), fam.end(), [&](const std::string& a) { return s.contains(a); });
    });
    if (all) hits.push_back(s);
  }
  std::vector<trel::TemplateSet> minimal;
  for (const auto& h : hits) {
    bool has_smaller = std::any_of(hits.begin(), hits.end(), [&](const auto& o) {
      return o.size() < h.size() && std::includes(h.begin(), h.end(), o.begin(), o.end());
    });
    if (!has_smaller) minimal.push_back(h);
  }
  std::sort(minimal.begin(), minimal.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return minimal;
}

}  // namespace testing

#endif  // TREL_TESTS_SUPPORT_HPP_
