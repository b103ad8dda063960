#include "trel/oracle.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

namespace trel {

namespace {

void require_quantifier_free(const Formula& f) {
  if (f.is_quantifier()) throw std::invalid_argument("ground problem contains a quantifier");
  if (f.is(Op::Atomic)) {
    if (!free_variables(f.atom()).empty()) throw std::invalid_argument("ground problem contains a variable");
    return;
  }
  require_quantifier_free(f.left());
  if (f.is_binary()) require_quantifier_free(f.right());
}

// Propositional view of a ground atom set.
class Table {
 public:
  explicit Table(std::span<const Formula> fs) {
    for (const auto& f : fs) {
      require_quantifier_free(f);
      collect(f);
    }
    if (vars_.size() > kMaxTableAtoms) throw TooManyAtoms(vars_.size());
  }

  std::size_t size() const { return vars_.size(); }

  // -1 false, 1 true, 0 variable
  int constant(const Atom& a) const {
    if (const auto* c = std::get_if<Comparison>(&a)) return holds(c->rel, eval(c->lhs), eval(c->rhs)) ? 1 : -1;
    if (const auto* id = std::get_if<Identity>(&a)) return id->left == id->right ? 1 : 0;
    return 0;
  }

  bool value(const Atom& a, std::uint64_t mask) const {
    if (int c = constant(a)) return c > 0;
    return (mask >> index_.at(key(a))) & 1U;
  }

  bool admissible(std::uint64_t mask) const {
    std::map<Term, Term> parent;
    std::function<Term(const Term&)> find = [&](const Term& t) -> Term {
      auto it = parent.find(t);
      if (it == parent.end() || it->second == t) return t;
      return it->second = find(it->second);
    };
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const auto* id = std::get_if<Identity>(&vars_[i]);
      if (id && ((mask >> i) & 1U)) {
        Term a = find(id->left), b = find(id->right);
        if (a != b) parent[b] = a;
      }
    }
    std::map<std::pair<std::string, std::vector<Term>>, bool> seen;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      bool v = (mask >> i) & 1U;
      if (const auto* id = std::get_if<Identity>(&vars_[i])) {
        if (!v && find(id->left) == find(id->right)) return false;
      } else if (const auto* p = std::get_if<Predicate>(&vars_[i])) {
        std::vector<Term> args;
        for (const auto& t : p->args) args.push_back(find(t));
        auto [it, fresh] = seen.emplace(std::make_pair(p->symbol, std::move(args)), v);
        if (!fresh && it->second != v) return false;
      }
    }
    return true;
  }

  bool eval_formula(const Formula& f, std::uint64_t mask) const {
    switch (f.op()) {
      case Op::Atomic: return value(f.atom(), mask);
      case Op::Not: return !eval_formula(f.sub(), mask);
      case Op::And: return eval_formula(f.left(), mask) && eval_formula(f.right(), mask);
      case Op::Or: return eval_formula(f.left(), mask) || eval_formula(f.right(), mask);
      case Op::Implies: return !eval_formula(f.left(), mask) || eval_formula(f.right(), mask);
      case Op::Iff: return eval_formula(f.left(), mask) == eval_formula(f.right(), mask);
      default: throw std::invalid_argument("quantifier in truth table");
    }
  }

 private:
  static std::string key(const Atom& a) {
    if (const auto* id = std::get_if<Identity>(&a)) {
      auto [lo, hi] = std::minmax(id->left, id->right);
      return render(lo) + "=" + render(hi);
    }
    return render(a);
  }

  void collect(const Formula& f) {
    if (f.is(Op::Atomic)) {
      if (constant(f.atom())) return;
      std::string k = key(f.atom());
      if (index_.emplace(k, vars_.size()).second) vars_.push_back(f.atom());
      return;
    }
    collect(f.left());
    if (f.is_binary()) collect(f.right());
  }

  std::map<std::string, std::size_t> index_;
  std::vector<Atom> vars_;
};

Formula fold(Op op, std::vector<Formula> parts) {
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::binary(op, acc, parts[i]);
  return acc;
}

}  // namespace

GroundProblem GroundProblem::of(std::span<const Formula> fs) {
  Table table(fs);
  GroundProblem g;
  g.formulas.assign(fs.begin(), fs.end());
  g.atoms = atoms_of(fs);
  return g;
}

bool truth_table_satisfiable(std::span<const Formula> fs) {
  Table table(fs);
  const std::uint64_t rows = std::uint64_t{1} << table.size();
  for (std::uint64_t mask = 0; mask < rows; ++mask) {
    if (!table.admissible(mask)) continue;
    if (std::all_of(fs.begin(), fs.end(), [&](const Formula& f) { return table.eval_formula(f, mask); }))
      return true;
  }
  return false;
}

bool truth_table_tautology(const Formula& f) {
  Formula neg = Formula::negation(f);
  return !truth_table_satisfiable(std::span<const Formula>(&neg, 1));
}

Formula ground_expand(const Formula& f, std::span<const Term> elements) {
  switch (f.op()) {
    case Op::Atomic: return f;
    case Op::Not: return Formula::negation(ground_expand(f.sub(), elements));
    case Op::ForAll:
    case Op::Exists: {
      if (elements.empty()) throw std::invalid_argument("ground expansion over no elements");
      std::vector<Formula> parts;
      for (const auto& e : elements) parts.push_back(ground_expand(substitute(f.sub(), f.var(), e), elements));
      return fold(f.is(Op::ForAll) ? Op::And : Op::Or, std::move(parts));
    }
    default:
      return Formula::binary(f.op(), ground_expand(f.left(), elements), ground_expand(f.right(), elements));
  }
}

std::vector<RuleOrder> admissible_orderings() {
  std::array<RuleKind, 4> p{RuleKind::Alpha, RuleKind::Beta, RuleKind::Delta, RuleKind::Gamma};
  std::sort(p.begin(), p.end());
  std::vector<RuleOrder> out;
  do {
    for (bool newest : {false, true}) out.push_back(RuleOrder{p, newest});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

OrderCheckReport exhaustive_order_check(const Formula& goal, std::span<const Formula> premises,
                                        std::size_t limit, const TableauConfig& base) {
  if (premises.size() + 1 > 8) throw std::invalid_argument("order check needs at most 8 root entries");
  std::size_t depth = quantifier_depth(goal);
  for (const auto& p : premises) depth = std::max(depth, quantifier_depth(p));
  if (depth > 2) throw std::invalid_argument("order check needs quantifier depth at most 2");

  std::vector<RuleOrder> orders = admissible_orderings();
  if (orders.size() > limit) throw BudgetExceeded(orders.size(), limit);

  OrderCheckReport rep;
  {
    RelevanceReport r = prove(goal, premises, base);
    rep.verdict = r.verdict;
    rep.necessary = r.necessary;
  }
  for (const auto& o : orders) {
    TableauConfig cfg = base;
    cfg.order = o;
    RelevanceReport r = prove(goal, premises, cfg);
    rep.agree = rep.agree && r.verdict == rep.verdict && r.necessary == rep.necessary;
    rep.results.push_back({o, r.verdict, r.necessary});
  }
  rep.orderings = rep.results.size();
  return rep;
}

}  // namespace trel
