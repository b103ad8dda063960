#include "trel/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>

namespace trel {

// ---------------------------------------------------------------------------
// Terms and relations

std::string Term::str() const { return render(*this); }

std::string IntTerm::str() const {
  std::string out;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (i) out += '+';
    out += render(summands[i]);
  }
  return out;
}

Rel complement(Rel r) {
  switch (r) {
    case Rel::Less: return Rel::GreaterEq;
    case Rel::LessEq: return Rel::Greater;
    case Rel::Eq: return Rel::NotEq;
    case Rel::NotEq: return Rel::Eq;
    case Rel::GreaterEq: return Rel::Less;
    case Rel::Greater: return Rel::LessEq;
  }
  return r;
}

Rel converse(Rel r) {
  switch (r) {
    case Rel::Less: return Rel::Greater;
    case Rel::LessEq: return Rel::GreaterEq;
    case Rel::GreaterEq: return Rel::LessEq;
    case Rel::Greater: return Rel::Less;
    default: return r;
  }
}

bool holds(Rel r, std::uint64_t a, std::uint64_t b) {
  switch (r) {
    case Rel::Less: return a < b;
    case Rel::LessEq: return a <= b;
    case Rel::Eq: return a == b;
    case Rel::NotEq: return a != b;
    case Rel::GreaterEq: return a >= b;
    case Rel::Greater: return a > b;
  }
  return false;
}

std::string_view rel_symbol(Rel r, bool unicode) {
  switch (r) {
    case Rel::Less: return "<";
    case Rel::LessEq: return unicode ? "≤" : "<=";
    case Rel::Eq: return "=";
    case Rel::NotEq: return unicode ? "≠" : "!=";
    case Rel::GreaterEq: return unicode ? "≥" : ">=";
    case Rel::Greater: return ">";
  }
  return "?";
}

std::uint64_t eval(const IntTerm& t) {
  std::uint64_t sum = 0;
  for (const auto& s : t.summands) {
    if (s.kind != Term::Kind::Numeral)
      throw std::invalid_argument("cannot evaluate non-numeral term " + render(s));
    sum += s.value;
  }
  return sum;
}

bool is_ground(const Comparison& c) {
  auto numeric = [](const IntTerm& t) {
    return std::all_of(t.summands.begin(), t.summands.end(),
                       [](const Term& s) { return s.kind == Term::Kind::Numeral; });
  };
  return numeric(c.lhs) && numeric(c.rhs);
}

// ---------------------------------------------------------------------------
// Formula construction

Formula Formula::atomic(Atom a) {
  auto n = std::make_shared<Node>();
  n->op = Op::Atomic;
  n->atom = std::move(a);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->op = Op::Not;
  n->left = std::make_shared<const Formula>(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::binary(Op op, Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->left = std::make_shared<const Formula>(std::move(l));
  n->right = std::make_shared<const Formula>(std::move(r));
  return Formula(std::move(n));
}

Formula Formula::quantified(Op op, std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->var = std::move(var);
  n->left = std::make_shared<const Formula>(std::move(body));
  return Formula(std::move(n));
}

bool Formula::is_binary() const {
  return is(Op::And) || is(Op::Or) || is(Op::Implies) || is(Op::Iff);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Atomic: return a.atom() == b.atom();
    case Op::Not: return a.sub() == b.sub();
    case Op::ForAll:
    case Op::Exists: return a.var() == b.var() && a.sub() == b.sub();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

// ---------------------------------------------------------------------------
// Errors

FreeVariableError::FreeVariableError(std::string name, std::size_t pos)
    : ParseError("free variable '" + name + "'", pos), name_(std::move(name)) {}

ArityError::ArityError(std::string symbol, std::size_t expected, std::size_t got, std::size_t pos)
    : ParseError("predicate " + symbol + " used with " + std::to_string(got) +
                     " arguments, expected " + std::to_string(expected),
                 pos),
      symbol_(std::move(symbol)),
      expected_(expected),
      got_(got) {}

RebindError::RebindError(std::string name, std::size_t pos)
    : ParseError("variable '" + name + "' rebound inside its own scope", pos),
      name_(std::move(name)) {}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_lower(c) || is_upper(c) || is_digit(c); }

// Names that read as variables: u..z optionally followed by digits.
bool variable_form(std::string_view s) {
  if (s.empty() || s[0] < 'u' || s[0] > 'z') return false;
  return std::all_of(s.begin() + 1, s.end(), is_digit);
}

// e1, e2, ... print witnesses and cannot be user constants.
bool witness_form(std::string_view s) {
  return s.size() > 1 && s[0] == 'e' && std::all_of(s.begin() + 1, s.end(), is_digit);
}

bool compact_term(std::string_view s) {
  return !s.empty() && (is_lower(s[0]) || s == "·") &&
         (s == "·" || std::all_of(s.begin() + 1, s.end(), is_digit));
}

bool compact_symbol(std::string_view s) {
  return !s.empty() && is_upper(s[0]) && std::all_of(s.begin() + 1, s.end(), is_digit);
}

class Reader {
 public:
  Reader(std::string_view text, Grammar g, std::map<std::string, std::size_t>& arity)
      : text_(text), grammar_(g), arity_(arity) {}

  Formula run() {
    Formula f = parse_iff();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg + " at column " + std::to_string(pos_ + 1), pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(std::string_view tok) const { return text_.substr(pos_).starts_with(tok); }

  bool accept(std::string_view tok) {
    skip_ws();
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  bool accept_keyword(std::string_view kw) {
    skip_ws();
    if (!peek(kw)) return false;
    std::size_t end = pos_ + kw.size();
    if (end < text_.size() && is_alnum(text_[end])) return false;
    pos_ = end;
    return true;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !is_lower(text_[pos_])) fail("expected identifier");
    while (pos_ < text_.size() && is_alnum(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool bound(const std::string& name) const {
    return std::find(scope_.begin(), scope_.end(), name) != scope_.end();
  }

  Term resolve(const std::string& name, std::size_t at) {
    if (bound(name)) return Term::variable(name);
    if (grammar_ == Grammar::Arith || variable_form(name)) throw FreeVariableError(name, at);
    if (witness_form(name)) {
      pos_ = at;
      fail("name '" + name + "' is reserved for witnesses");
    }
    return Term::constant(name);
  }

  Formula parse_iff() {
    Formula l = parse_imp();
    while (accept("<->") || accept("↔")) l = Formula::binary(Op::Iff, l, parse_imp());
    return l;
  }

  Formula parse_imp() {
    Formula l = parse_or();
    if (accept("->") || accept("→")) return Formula::implies(l, parse_imp());
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (accept("|") || accept("∨")) l = Formula::disj(l, parse_and());
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (accept("&") || accept("∧")) l = Formula::conj(l, parse_unary());
    return l;
  }

  Formula parse_unary() {
    if (accept("~") || accept("∼") || accept("¬")) return Formula::negation(parse_unary());
    for (auto [kw, op] : {std::pair{std::string_view("forall"), Op::ForAll},
                          std::pair{std::string_view("∀"), Op::ForAll},
                          std::pair{std::string_view("exists"), Op::Exists},
                          std::pair{std::string_view("∃"), Op::Exists}}) {
      bool hit = is_alnum(kw[0]) ? accept_keyword(kw) : accept(kw);
      if (!hit) continue;
      skip_ws();
      std::size_t at = pos_;
      std::string v = identifier();
      if (bound(v)) throw RebindError(v, at);
      scope_.push_back(v);
      Formula body = parse_iff();
      scope_.pop_back();
      return Formula::quantified(op, v, body);
    }
    skip_ws();
    if (accept("(")) {
      Formula f = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    return grammar_ == Grammar::Arith ? parse_comparison() : parse_logic_atom();
  }

  Formula parse_logic_atom() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && is_upper(text_[pos_])) {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && is_alnum(text_[end])) ++end;
      Predicate p;
      if (end < text_.size() && text_[end] == '(') {
        p.symbol = std::string(text_.substr(pos_, end - pos_));
        pos_ = end + 1;
        if (!accept(")")) {
          do {
            skip_ws();
            std::size_t at = pos_;
            p.args.push_back(resolve(identifier(), at));
          } while (accept(","));
          if (!accept(")")) fail("expected ')' after arguments");
        }
      } else {
        ++pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        p.symbol = std::string(text_.substr(start, pos_ - start));
        while (pos_ < text_.size() && is_lower(text_[pos_])) {
          std::size_t at = pos_;
          ++pos_;
          while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
          p.args.push_back(resolve(std::string(text_.substr(at, pos_ - at)), at));
        }
      }
      auto [it, inserted] = arity_.emplace(p.symbol, p.args.size());
      if (!inserted && it->second != p.args.size())
        throw ArityError(p.symbol, it->second, p.args.size(), start);
      return Formula::atomic(std::move(p));
    }
    if (pos_ < text_.size() && is_lower(text_[pos_])) {
      Term l = resolve(identifier(), start);
      bool negated = false;
      if (accept("!=") || accept("≠")) {
        negated = true;
      } else if (!accept("=")) {
        fail("expected '=' or '!='");
      }
      skip_ws();
      std::size_t at = pos_;
      Term r = resolve(identifier(), at);
      Formula f = Formula::atomic(Identity{l, r});
      return negated ? Formula::negation(f) : f;
    }
    fail("expected formula");
  }

  IntTerm parse_intterm() {
    IntTerm t;
    do {
      skip_ws();
      std::size_t at = pos_;
      if (pos_ < text_.size() && is_digit(text_[pos_])) {
        std::uint64_t v = 0;
        while (pos_ < text_.size() && is_digit(text_[pos_])) v = v * 10 + (text_[pos_++] - '0');
        t.summands.push_back(Term::numeral(v));
      } else if (pos_ < text_.size() && is_lower(text_[pos_])) {
        t.summands.push_back(resolve(identifier(), at));
      } else {
        fail("expected number or variable");
      }
    } while (accept("+"));
    return t;
  }

  Formula parse_comparison() {
    Comparison c;
    c.lhs = parse_intterm();
    skip_ws();
    if (peek("<->")) fail("expected relation");
    static const std::pair<std::string_view, Rel> rels[] = {
        {"<=", Rel::LessEq}, {"≤", Rel::LessEq}, {">=", Rel::GreaterEq}, {"≥", Rel::GreaterEq},
        {"!=", Rel::NotEq},  {"≠", Rel::NotEq},  {"<", Rel::Less},       {">", Rel::Greater},
        {"=", Rel::Eq}};
    bool found = false;
    for (auto [tok, rel] : rels) {
      if (accept(tok)) {
        c.rel = rel;
        found = true;
        break;
      }
    }
    if (!found) fail("expected relation");
    c.rhs = parse_intterm();
    return Formula::atomic(std::move(c));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Grammar grammar_;
  std::map<std::string, std::size_t>& arity_;
  std::vector<std::string> scope_;
};

}  // namespace

Formula Parser::parse_with(std::string_view text, Grammar g) {
  auto staged = arity_;
  Formula f = Reader(text, g, staged).run();
  arity_ = std::move(staged);
  last_ = g;
  return f;
}

Formula Parser::parse(std::string_view text) {
  if (grammar_ != Grammar::Auto) return parse_with(text, grammar_);
  try {
    return parse_with(text, Grammar::Logic);
  } catch (const SyntaxError& logic_error) {
    try {
      return parse_with(text, Grammar::Arith);
    } catch (const SyntaxError& arith_error) {
      if (arith_error.position() > logic_error.position()) throw;
      throw logic_error;
    } catch (const FreeVariableError&) {
      throw logic_error;
    }
  }
}

Formula parse(std::string_view text, Grammar g) { return Parser(g).parse(text); }

// ---------------------------------------------------------------------------
// Printing

std::string render(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Fresh: return "e" + std::to_string(t.value);
    case Term::Kind::Numeral: return std::to_string(t.value);
    default: return t.name;
  }
}

namespace {

std::string render_predicate(const std::string& symbol, const std::vector<std::string>& args) {
  bool compact = compact_symbol(symbol) &&
                 std::all_of(args.begin(), args.end(), [](const std::string& a) { return compact_term(a); });
  std::string out = symbol;
  if (compact) {
    for (const auto& a : args) out += a;
    return out;
  }
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i];
  return out + ')';
}

std::string render_comparison(const Comparison& c, Style style) {
  return c.lhs.str() + std::string(rel_symbol(c.rel, style == Style::Unicode)) + c.rhs.str();
}

struct Printed {
  std::string text;
  int prec;   // 5 = unary/atomic
  bool open;  // ends in a quantifier whose scope would swallow trailing input
};

int precedence(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    default: return 5;
  }
}

std::string_view op_symbol(Op op, Style s) {
  bool u = s == Style::Unicode;
  switch (op) {
    case Op::Iff: return u ? " ↔ " : " <-> ";
    case Op::Implies: return u ? " → " : " -> ";
    case Op::Or: return u ? " ∨ " : " | ";
    case Op::And: return u ? " ∧ " : " & ";
    default: return "";
  }
}

Printed print(const Formula& f, Style style) {
  bool u = style == Style::Unicode;
  switch (f.op()) {
    case Op::Atomic: return {render(f.atom(), style), 5, false};
    case Op::Not: {
      if (f.sub().is(Op::Atomic)) {
        if (const auto* id = std::get_if<Identity>(&f.sub().atom()))
          return {render(id->left) + (u ? " ≠ " : " != ") + render(id->right), 5, false};
      }
      Printed s = print(f.sub(), style);
      std::string neg = u ? "∼" : "~";
      if (s.prec < 5) return {neg + "(" + s.text + ")", 5, false};
      return {neg + s.text, 5, s.open};
    }
    case Op::ForAll:
    case Op::Exists: {
      std::string head = f.is(Op::ForAll) ? (u ? "∀" : "forall ") : (u ? "∃" : "exists ");
      head += f.var();
      Printed b = print(f.sub(), style);
      if (b.prec < 5) return {head + (u ? "(" : " (") + b.text + ")", 5, true};
      // Unicode heads glue to the body unless the body starts with a letter.
      bool glue = u && !b.text.empty() && !is_alnum(b.text[0]);
      return {head + (glue ? "" : " ") + b.text, 5, true};
    }
    default: {
      int p = precedence(f.op());
      Printed l = print(f.left(), style);
      Printed r = print(f.right(), style);
      bool right_assoc = f.is(Op::Implies);
      bool wrap_l = l.open || l.prec < p || (l.prec == p && right_assoc);
      bool wrap_r = r.prec < p || (r.prec == p && !right_assoc);
      std::string lt = wrap_l ? "(" + l.text + ")" : l.text;
      std::string rt = wrap_r ? "(" + r.text + ")" : r.text;
      return {lt + std::string(op_symbol(f.op(), style)) + rt, p, !wrap_r && r.open};
    }
  }
}

}  // namespace

std::string render(const Atom& a, Style style) {
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Predicate>) {
          std::vector<std::string> args;
          for (const auto& t : x.args) args.push_back(render(t));
          return render_predicate(x.symbol, args);
        } else if constexpr (std::is_same_v<T, Identity>) {
          return render(x.left) + " = " + render(x.right);
        } else {
          return render_comparison(x, style);
        }
      },
      a);
}

std::string render(const Formula& f, Style style) { return print(f, style).text; }

// ---------------------------------------------------------------------------
// Normalizations

Formula negate_to_root(const Formula& goal) { return Formula::negation(goal); }

namespace {

Term subst_term(const Term& t, const std::string& var, const Term& by) {
  return (t.is_variable() && t.name == var) ? by : t;
}

}  // namespace

Atom substitute(const Atom& a, const std::string& var, const Term& by) {
  return std::visit(
      [&](const auto& x) -> Atom {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Predicate>) {
          Predicate p = x;
          for (auto& t : p.args) t = subst_term(t, var, by);
          return p;
        } else if constexpr (std::is_same_v<T, Identity>) {
          return Identity{subst_term(x.left, var, by), subst_term(x.right, var, by)};
        } else {
          Comparison c = x;
          for (auto& t : c.lhs.summands) t = subst_term(t, var, by);
          for (auto& t : c.rhs.summands) t = subst_term(t, var, by);
          if (c.origin.empty() && !(c == x)) c.origin = render_comparison(x, Style::Ascii);
          return c;
        }
      },
      a);
}

Formula substitute(const Formula& f, const std::string& var, const Term& by) {
  switch (f.op()) {
    case Op::Atomic: return Formula::atomic(substitute(f.atom(), var, by));
    case Op::Not: return Formula::negation(substitute(f.sub(), var, by));
    case Op::ForAll:
    case Op::Exists:
      if (f.var() == var) return f;
      return Formula::quantified(f.op(), f.var(), substitute(f.sub(), var, by));
    default:
      return Formula::binary(f.op(), substitute(f.left(), var, by), substitute(f.right(), var, by));
  }
}

Formula clear_origins(const Formula& f) {
  switch (f.op()) {
    case Op::Atomic:
      if (const auto* c = std::get_if<Comparison>(&f.atom())) {
        Comparison copy = *c;
        copy.origin.clear();
        return Formula::atomic(copy);
      }
      return f;
    case Op::Not: return Formula::negation(clear_origins(f.sub()));
    case Op::ForAll:
    case Op::Exists: return Formula::quantified(f.op(), f.var(), clear_origins(f.sub()));
    default: return Formula::binary(f.op(), clear_origins(f.left()), clear_origins(f.right()));
  }
}

namespace {

using Binding = std::vector<std::pair<std::string, std::string>>;

bool terms_alpha(const Term& a, const Term& b, const Binding& env) {
  if (a.is_variable() || b.is_variable()) {
    if (!a.is_variable() || !b.is_variable()) return false;
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == a.name || it->second == b.name)
        return it->first == a.name && it->second == b.name;
    }
    return a.name == b.name;
  }
  return a == b;
}

bool sums_alpha(const IntTerm& a, const IntTerm& b, const Binding& env) {
  if (a.summands.size() != b.summands.size()) return false;
  for (std::size_t i = 0; i < a.summands.size(); ++i)
    if (!terms_alpha(a.summands[i], b.summands[i], env)) return false;
  return true;
}

bool atoms_alpha(const Atom& a, const Atom& b, const Binding& env) {
  if (a.index() != b.index()) return false;
  if (const auto* p = std::get_if<Predicate>(&a)) {
    const auto& q = std::get<Predicate>(b);
    if (p->symbol != q.symbol || p->args.size() != q.args.size()) return false;
    for (std::size_t i = 0; i < p->args.size(); ++i)
      if (!terms_alpha(p->args[i], q.args[i], env)) return false;
    return true;
  }
  if (const auto* i = std::get_if<Identity>(&a)) {
    const auto& j = std::get<Identity>(b);
    return terms_alpha(i->left, j.left, env) && terms_alpha(i->right, j.right, env);
  }
  const auto& c = std::get<Comparison>(a);
  const auto& d = std::get<Comparison>(b);
  return c.rel == d.rel && sums_alpha(c.lhs, d.lhs, env) && sums_alpha(c.rhs, d.rhs, env);
}

bool alpha(const Formula& a, const Formula& b, Binding& env) {
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Atomic: return atoms_alpha(a.atom(), b.atom(), env);
    case Op::Not: return alpha(a.sub(), b.sub(), env);
    case Op::ForAll:
    case Op::Exists: {
      env.emplace_back(a.var(), b.var());
      bool ok = alpha(a.sub(), b.sub(), env);
      env.pop_back();
      return ok;
    }
    default: return alpha(a.left(), b.left(), env) && alpha(a.right(), b.right(), env);
  }
}

template <class Fn>
void for_each_term(const Atom& a, Fn&& fn) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Predicate>) {
          for (const auto& t : x.args) fn(t);
        } else if constexpr (std::is_same_v<T, Identity>) {
          fn(x.left);
          fn(x.right);
        } else {
          for (const auto& t : x.lhs.summands) fn(t);
          for (const auto& t : x.rhs.summands) fn(t);
        }
      },
      a);
}

template <class Fn>
void for_each_atom(const Formula& f, Fn&& fn) {
  switch (f.op()) {
    case Op::Atomic: fn(f.atom()); break;
    case Op::Not:
    case Op::ForAll:
    case Op::Exists: for_each_atom(f.sub(), fn); break;
    default:
      for_each_atom(f.left(), fn);
      for_each_atom(f.right(), fn);
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.op()) {
    case Op::Atomic:
      for_each_term(f.atom(), [&](const Term& t) {
        if (t.is_variable() && std::find(bound.begin(), bound.end(), t.name) == bound.end())
          out.insert(t.name);
      });
      break;
    case Op::Not: collect_free(f.sub(), bound, out); break;
    case Op::ForAll:
    case Op::Exists:
      bound.push_back(f.var());
      collect_free(f.sub(), bound, out);
      bound.pop_back();
      break;
    default:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
  }
}

std::string placeholder_or(const Term& t) {
  return (t.is_variable() || t.is_fresh()) ? std::string("·") : render(t);
}

}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  Binding env;
  return alpha(a, b, env);
}

std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> free_variables(const Atom& a) {
  std::set<std::string> out;
  for_each_term(a, [&](const Term& t) {
    if (t.is_variable()) out.insert(t.name);
  });
  return out;
}

std::set<Term> constants_of(const Formula& f) {
  std::set<Term> out;
  for_each_atom(f, [&](const Atom& a) {
    for_each_term(a, [&](const Term& t) {
      if (t.kind == Term::Kind::Constant) out.insert(t);
    });
  });
  return out;
}

std::set<Term> constants_of(std::span<const Formula> fs) {
  std::set<Term> out;
  for (const auto& f : fs) out.merge(constants_of(f));
  return out;
}

std::size_t quantifier_depth(const Formula& f) {
  switch (f.op()) {
    case Op::Atomic: return 0;
    case Op::Not: return quantifier_depth(f.sub());
    case Op::ForAll:
    case Op::Exists: return 1 + quantifier_depth(f.sub());
    default: return std::max(quantifier_depth(f.left()), quantifier_depth(f.right()));
  }
}

std::string atom_template(const Atom& a) {
  if (const auto* p = std::get_if<Predicate>(&a)) {
    std::vector<std::string> args;
    for (const auto& t : p->args) args.push_back(placeholder_or(t));
    return render_predicate(p->symbol, args);
  }
  if (const auto* id = std::get_if<Identity>(&a)) {
    std::string l = placeholder_or(id->left), r = placeholder_or(id->right);
    if (r < l) std::swap(l, r);
    return l + "=" + r;
  }
  const auto& c = std::get<Comparison>(a);
  return c.origin.empty() ? render_comparison(c, Style::Ascii) : c.origin;
}

std::set<std::string> atoms_of(std::span<const Formula> fs, AtomFilter filter) {
  std::vector<Term> constants;
  for (const auto& c : constants_of(fs)) constants.push_back(c);
  std::set<std::string> out;
  for (const auto& f : fs) {
    for_each_atom(f, [&](const Atom& a) {
      if (filter == AtomFilter::NoIdentity && std::holds_alternative<Identity>(a)) return;
      std::set<std::string> vars = free_variables(a);
      if (vars.empty() || constants.empty() || std::holds_alternative<Comparison>(a)) {
        out.insert(atom_template(a));
        return;
      }
      bool reflexive_pattern = false;
      if (const auto* id = std::get_if<Identity>(&a)) reflexive_pattern = id->left == id->right;
      std::vector<std::string> names(vars.begin(), vars.end());
      std::function<void(std::size_t, const Atom&)> expand = [&](std::size_t i, const Atom& cur) {
        if (i == names.size()) {
          if (const auto* id = std::get_if<Identity>(&cur))
            if (id->left == id->right && !reflexive_pattern) return;
          out.insert(atom_template(cur));
          return;
        }
        for (const auto& c : constants) expand(i + 1, substitute(cur, names[i], c));
      };
      expand(0, a);
    });
  }
  return out;
}

std::set<std::string> atoms_of(const Formula& f) { return atoms_of(std::span<const Formula>(&f, 1)); }

Truth partial_eval(const Formula& f) {
  auto neg = [](Truth t) {
    return t == Truth::Unknown ? t : (t == Truth::True ? Truth::False : Truth::True);
  };
  auto conj = [](Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::True && b == Truth::True) return Truth::True;
    return Truth::Unknown;
  };
  auto disj = [&](Truth a, Truth b) { return neg(conj(neg(a), neg(b))); };
  switch (f.op()) {
    case Op::Atomic:
      if (const auto* id = std::get_if<Identity>(&f.atom()))
        return id->left == id->right ? Truth::True : Truth::Unknown;
      if (const auto* c = std::get_if<Comparison>(&f.atom())) {
        if (!is_ground(*c)) return Truth::Unknown;
        return holds(c->rel, eval(c->lhs), eval(c->rhs)) ? Truth::True : Truth::False;
      }
      return Truth::Unknown;
    case Op::Not: return neg(partial_eval(f.sub()));
    case Op::And: return conj(partial_eval(f.left()), partial_eval(f.right()));
    case Op::Or: return disj(partial_eval(f.left()), partial_eval(f.right()));
    case Op::Implies: return disj(neg(partial_eval(f.left())), partial_eval(f.right()));
    case Op::Iff: {
      Truth a = partial_eval(f.left()), b = partial_eval(f.right());
      if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
      return a == b ? Truth::True : Truth::False;
    }
    default: return Truth::Unknown;
  }
}

}  // namespace trel
