// Formula AST for first-order logic with identity and the bounded
// arithmetic fragment, plus parsing, printing and a few normalizations.

#ifndef TREL_FORMULA_HPP_
#define TREL_FORMULA_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace trel {

struct Term {
  // Declaration order matters: it is the representative order used by
  // identity classes (constants before witnesses).
  enum class Kind { Variable, Constant, Fresh, Numeral };

  Kind kind = Kind::Constant;
  std::string name;         // Variable, Constant
  std::uint64_t value = 0;  // Fresh index, Numeral value

  static Term variable(std::string n) { return {Kind::Variable, std::move(n), 0}; }
  static Term constant(std::string n) { return {Kind::Constant, std::move(n), 0}; }
  static Term fresh(std::uint64_t index) { return {Kind::Fresh, {}, index}; }
  static Term numeral(std::uint64_t v) { return {Kind::Numeral, {}, v}; }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_fresh() const { return kind == Kind::Fresh; }
  std::string str() const;

  auto operator<=>(const Term&) const = default;
};

// Sum of variables and numerals; the arithmetic fragment has only `+`.
struct IntTerm {
  std::vector<Term> summands;

  std::string str() const;
  bool operator==(const IntTerm&) const = default;
};

enum class Rel { Less, LessEq, Eq, NotEq, GreaterEq, Greater };

Rel complement(Rel r);
Rel converse(Rel r);  // a R b  <=>  b converse(R) a
bool holds(Rel r, std::uint64_t lhs, std::uint64_t rhs);
std::string_view rel_symbol(Rel r, bool unicode = false);

struct Predicate {
  std::string symbol;
  std::vector<Term> args;
  bool operator==(const Predicate&) const = default;
};

struct Identity {
  Term left, right;
  bool operator==(const Identity&) const = default;
};

struct Comparison {
  IntTerm lhs;
  Rel rel = Rel::Eq;
  IntTerm rhs;
  // Rendering of the atom before its variables were substituted away; names
  // the template a ground instance belongs to. Not part of equality.
  std::string origin;

  bool operator==(const Comparison& o) const {
    return lhs == o.lhs && rel == o.rel && rhs == o.rhs;
  }
};

using Atom = std::variant<Predicate, Identity, Comparison>;

enum class Op { Atomic, Not, And, Or, Implies, Iff, ForAll, Exists };

enum class Style { Ascii, Unicode };

class Formula {
 public:
  static Formula atomic(Atom a);
  static Formula negation(Formula f);
  static Formula binary(Op op, Formula l, Formula r);
  static Formula quantified(Op op, std::string var, Formula body);

  static Formula conj(Formula l, Formula r) { return binary(Op::And, std::move(l), std::move(r)); }
  static Formula disj(Formula l, Formula r) { return binary(Op::Or, std::move(l), std::move(r)); }
  static Formula implies(Formula l, Formula r) { return binary(Op::Implies, std::move(l), std::move(r)); }
  static Formula forall(std::string v, Formula b) { return quantified(Op::ForAll, std::move(v), std::move(b)); }
  static Formula exists(std::string v, Formula b) { return quantified(Op::Exists, std::move(v), std::move(b)); }

  Op op() const { return node_->op; }
  bool is(Op o) const { return node_->op == o; }
  bool is_quantifier() const { return is(Op::ForAll) || is(Op::Exists); }
  bool is_binary() const;

  const Atom& atom() const { return node_->atom; }
  // Operand of Not, body of a quantifier.
  const Formula& sub() const { return *node_->left; }
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }
  const std::string& var() const { return node_->var; }

  // An atom or the negation of one.
  bool is_literal() const { return is(Op::Atomic) || (is(Op::Not) && sub().is(Op::Atomic)); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op = Op::Atomic;
    Atom atom;
    std::shared_ptr<const Formula> left, right;
    std::string var;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Parsing

enum class Grammar { Logic, Arith, Auto };

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what), position_(pos) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class FreeVariableError : public ParseError {
 public:
  FreeVariableError(std::string name, std::size_t pos);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class ArityError : public ParseError {
 public:
  ArityError(std::string symbol, std::size_t expected, std::size_t got, std::size_t pos);
  const std::string& symbol() const { return symbol_; }
  std::size_t expected() const { return expected_; }
  std::size_t got() const { return got_; }

 private:
  std::string symbol_;
  std::size_t expected_, got_;
};

class RebindError : public ParseError {
 public:
  RebindError(std::string name, std::size_t pos);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Parses the formulas of one problem. Predicate arities are remembered across
// calls, so a symbol used with two arities in one problem is rejected.
class Parser {
 public:
  explicit Parser(Grammar g = Grammar::Auto) : grammar_(g) {}
  Formula parse(std::string_view text);
  // Grammar the last successful parse used (Auto resolves to Logic or Arith).
  Grammar last_grammar() const { return last_; }

 private:
  Formula parse_with(std::string_view text, Grammar g);
  Grammar grammar_;
  Grammar last_ = Grammar::Logic;
  std::map<std::string, std::size_t> arity_;
};

Formula parse(std::string_view text, Grammar g = Grammar::Auto);

// Printing

std::string render(const Term& t);
std::string render(const Atom& a, Style style = Style::Ascii);
std::string render(const Formula& f, Style style = Style::Ascii);

// Normalizations and queries

// Not(goal), unsimplified: the head of a refutation tableau.
Formula negate_to_root(const Formula& goal);

// Replaces free occurrences of `var`. Comparisons record their pre-substitution
// rendering as origin unless one is already recorded.
Formula substitute(const Formula& f, const std::string& var, const Term& by);
Atom substitute(const Atom& a, const std::string& var, const Term& by);
// Drops recorded comparison origins.
Formula clear_origins(const Formula& f);

bool alpha_equivalent(const Formula& a, const Formula& b);

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> free_variables(const Atom& a);
std::set<Term> constants_of(const Formula& f);
std::set<Term> constants_of(std::span<const Formula> fs);
std::size_t quantifier_depth(const Formula& f);

// Template naming an atom occurrence for relevance accounting: constants are
// kept, variables and witnesses become "·", comparisons use their origin.
std::string atom_template(const Atom& a);

// The atom templates of a closed formula set. Atoms under quantifiers are
// instantiated over the constants of the set; without constants they keep
// "·" placeholders. Reflexive identity instances of non-reflexive patterns
// (x = m at x := m) are omitted.
enum class AtomFilter { All, NoIdentity };
std::set<std::string> atoms_of(const Formula& f);
std::set<std::string> atoms_of(std::span<const Formula> fs, AtomFilter filter = AtomFilter::All);

// Three-valued partial evaluation: predicates are unknown, syntactically
// reflexive identities are true, ground comparisons are decided.
enum class Truth { False, True, Unknown };
Truth partial_eval(const Formula& f);

// Value of a ground sum; throws std::invalid_argument on a variable.
std::uint64_t eval(const IntTerm& t);
bool is_ground(const Comparison& c);

}  // namespace trel

#endif  // TREL_FORMULA_HPP_
