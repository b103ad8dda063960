#include "trel/tableau.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace trel {

std::string_view rule_name(RuleKind k) {
  switch (k) {
    case RuleKind::Alpha: return "alpha";
    case RuleKind::Delta: return "delta";
    case RuleKind::Beta: return "beta";
    case RuleKind::Gamma: return "gamma";
  }
  return "?";
}

std::string RuleOrder::str() const {
  std::string out;
  for (std::size_t i = 0; i < priority.size(); ++i) {
    if (i) out += '>';
    out += rule_name(priority[i]);
  }
  return out + (newest_first ? "/newest" : "/oldest");
}

std::string_view status_name(BranchStatus s) {
  switch (s) {
    case BranchStatus::Live: return "Live";
    case BranchStatus::ClosedSaturated: return "ClosedSaturated";
    case BranchStatus::OpenSaturated: return "OpenSaturated";
    case BranchStatus::DepthLimited: return "DepthLimited";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Identity classes and keys

void EquivClasses::add(const Term& t) { parent_.emplace(t, t); }

Term EquivClasses::find(const Term& t) const {
  Term cur = t;
  for (;;) {
    auto it = parent_.find(cur);
    if (it == parent_.end() || it->second == cur) return cur;
    cur = it->second;
  }
}

void EquivClasses::merge(const Term& a, const Term& b) {
  add(a);
  add(b);
  Term ra = find(a), rb = find(b);
  if (ra == rb) return;
  if (rb < ra) std::swap(ra, rb);
  parent_[rb] = ra;
}

std::vector<std::vector<Term>> EquivClasses::classes() const {
  std::map<Term, std::vector<Term>> groups;
  for (const auto& [t, _] : parent_) groups[find(t)].push_back(t);
  std::vector<std::vector<Term>> out;
  for (auto& [_, members] : groups) out.push_back(std::move(members));
  return out;
}

namespace {

Term rep(const Term& t, const EquivClasses& classes) {
  if (t.kind == Term::Kind::Constant || t.kind == Term::Kind::Fresh) return classes.find(t);
  return t;
}

void collect_names(const Atom& a, std::set<Term>& out) {
  auto take = [&](const Term& t) {
    if (t.kind == Term::Kind::Constant || t.kind == Term::Kind::Fresh) out.insert(t);
  };
  if (const auto* p = std::get_if<Predicate>(&a)) {
    for (const auto& t : p->args) take(t);
  } else if (const auto* id = std::get_if<Identity>(&a)) {
    take(id->left);
    take(id->right);
  }
}

void collect_names(const Formula& f, std::set<Term>& out) {
  switch (f.op()) {
    case Op::Atomic: collect_names(f.atom(), out); break;
    case Op::Not:
    case Op::ForAll:
    case Op::Exists: collect_names(f.sub(), out); break;
    default:
      collect_names(f.left(), out);
      collect_names(f.right(), out);
  }
}

}  // namespace

AtomKey key_of(const Atom& a, const EquivClasses& classes) {
  AtomKey key;
  if (const auto* p = std::get_if<Predicate>(&a)) {
    Predicate q = *p;
    for (auto& t : q.args) {
      t = rep(t, classes);
      key.schematic = key.schematic || t.is_fresh();
    }
    key.text = render(Atom(q));
  } else if (const auto* id = std::get_if<Identity>(&a)) {
    Term l = rep(id->left, classes), r = rep(id->right, classes);
    if (r < l) std::swap(l, r);
    key.schematic = l.is_fresh() || r.is_fresh();
    key.text = render(Atom(Identity{l, r}));
  } else {
    key.text = render(a);
  }
  return key;
}

ClosureState compute_closure(std::span<const Literal> literals, const std::set<Term>& names,
                             const std::set<std::string>& suppressed) {
  ClosureState st;
  for (const auto& n : names) st.classes.add(n);
  for (const auto& lit : literals) {
    std::set<Term> seen;
    collect_names(lit.atom, seen);
    for (const auto& t : seen) st.classes.add(t);
  }
  for (const auto& lit : literals) {
    if (!lit.positive || suppressed.contains(lit.templ)) continue;
    if (const auto* id = std::get_if<Identity>(&lit.atom)) st.classes.merge(id->left, id->right);
  }

  struct Signs {
    bool pos = false, neg = false;
    std::set<std::string> templates;
  };
  std::map<AtomKey, Signs> signs;
  for (const auto& lit : literals) {
    AtomKey key = key_of(lit.atom, st.classes);
    Signs& s = signs[key];
    if (const auto* id = std::get_if<Identity>(&lit.atom)) {
      if (st.classes.same(id->left, id->right)) s.pos = true;
    } else if (const auto* c = std::get_if<Comparison>(&lit.atom)) {
      if (is_ground(*c)) (holds(c->rel, eval(c->lhs), eval(c->rhs)) ? s.pos : s.neg) = true;
    }
    if (suppressed.contains(lit.templ)) continue;
    (lit.positive ? s.pos : s.neg) = true;
    s.templates.insert(lit.templ);
  }
  for (auto& [key, s] : signs) {
    if (s.pos && s.neg) {
      st.pairs.insert(key);
      st.credits[key] = std::move(s.templates);
    }
  }
  return st;
}

std::set<AtomKey> check_closure(const Branch& b) { return b.closure_pairs; }

// ---------------------------------------------------------------------------
// Rule tables

std::optional<RuleKind> classify(const Formula& f) {
  switch (f.op()) {
    case Op::Atomic: return std::nullopt;
    case Op::And: return RuleKind::Alpha;
    case Op::Or:
    case Op::Implies:
    case Op::Iff: return RuleKind::Beta;
    case Op::ForAll: return RuleKind::Gamma;
    case Op::Exists: return RuleKind::Delta;
    case Op::Not: break;
  }
  const Formula& g = f.sub();
  switch (g.op()) {
    case Op::Atomic: return std::nullopt;
    case Op::Not:
    case Op::Or:
    case Op::Implies: return RuleKind::Alpha;
    case Op::And:
    case Op::Iff: return RuleKind::Beta;
    case Op::ForAll: return RuleKind::Delta;
    case Op::Exists: return RuleKind::Gamma;
  }
  return std::nullopt;
}

namespace {

Formula neg(const Formula& f) { return Formula::negation(f); }

std::vector<Formula> alpha_parts(const Formula& f) {
  if (f.is(Op::And)) return {f.left(), f.right()};
  const Formula& g = f.sub();
  switch (g.op()) {
    case Op::Not: return {g.sub()};
    case Op::Or: return {neg(g.left()), neg(g.right())};
    case Op::Implies: return {g.left(), neg(g.right())};
    default: return {};
  }
}

std::pair<std::vector<Formula>, std::vector<Formula>> beta_parts(const Formula& f) {
  switch (f.op()) {
    case Op::Or: return {{f.left()}, {f.right()}};
    case Op::Implies: return {{neg(f.left())}, {f.right()}};
    case Op::Iff: return {{f.left(), f.right()}, {neg(f.left()), neg(f.right())}};
    default: break;
  }
  const Formula& g = f.sub();
  if (g.is(Op::And)) return {{neg(g.left())}, {neg(g.right())}};
  return {{g.left(), neg(g.right())}, {neg(g.left()), g.right()}};
}

// Instance of a delta or gamma entry at term t.
Formula instance(const Formula& f, const Term& t) {
  if (f.is_quantifier()) return substitute(f.sub(), f.var(), t);
  const Formula& q = f.sub();
  return neg(substitute(q.sub(), q.var(), t));
}

bool is_closed_formula(const Formula& f) { return free_variables(f).empty(); }

}  // namespace

// ---------------------------------------------------------------------------
// Tableau

Tableau::Tableau(const Formula& goal, std::span<const Formula> premises, TableauConfig config)
    : config_(std::move(config)) {
  std::vector<Formula> roots(premises.begin(), premises.end());
  std::vector<std::string> rules(premises.size(), "premise");
  roots.push_back(negate_to_root(goal));
  rules.push_back("goal");
  sources_.assign(premises.begin(), premises.end());
  sources_.push_back(goal);
  seed(roots, rules);
}

Tableau Tableau::from_roots(std::span<const Formula> roots, TableauConfig config) {
  Tableau t(std::move(config));
  std::vector<std::string> rules(roots.size(), "root");
  t.sources_.assign(roots.begin(), roots.end());
  t.seed(roots, rules);
  return t;
}

Tableau Tableau::restarted(TableauConfig config) const {
  Tableau t(std::move(config));
  t.sources_ = sources_;
  t.seed(roots_, root_rules_);
  return t;
}

void Tableau::seed(std::span<const Formula> roots, std::span<const std::string> rules) {
  root_rules_.assign(rules.begin(), rules.end());
  for (const auto& f : roots)
    if (!is_closed_formula(f)) throw std::invalid_argument("tableau roots must be closed: " + render(f));
  roots_.assign(roots.begin(), roots.end());
  Branch b;
  b.id = next_branch_id_++;
  std::set<Term> names;
  for (const auto& f : roots) collect_names(f, names);
  b.names = std::move(names);
  for (std::size_t i = 0; i < roots.size(); ++i) push_formula(b, roots[i], rules[i], -1);
  if (roots.empty()) refresh(b);
  branches_.push_back(std::move(b));
}

int Tableau::new_node(const Formula& f, std::string rule, int source, int parent) {
  nodes_.push_back(TreeNode{f, std::move(rule), source, parent, {}});
  int id = static_cast<int>(nodes_.size()) - 1;
  if (parent >= 0) nodes_[parent].children.push_back(id);
  return id;
}

void Tableau::push_formula(Branch& b, const Formula& f, std::string rule, int source) {
  int node = new_node(f, std::move(rule), source, b.leaf);
  b.leaf = node;
  Entry e;
  e.node = node;
  bool duplicate = std::any_of(b.entries.begin(), b.entries.end(),
                               [&](const Entry& o) { return nodes_[o.node].formula == f; });
  e.used = duplicate || !classify(f).has_value();
  b.entries.push_back(std::move(e));
  if (duplicate || !f.is_literal()) return;

  Literal lit;
  lit.positive = f.is(Op::Atomic);
  lit.atom = lit.positive ? f.atom() : f.sub().atom();
  lit.templ = atom_template(lit.atom);
  lit.node = node;
  collect_names(lit.atom, b.names);
  b.literals.push_back(std::move(lit));
  refresh(b);
}

void Tableau::refresh(Branch& b) const {
  ClosureState st = compute_closure(b.literals, b.names, config_.suppressed);
  b.classes = std::move(st.classes);
  b.closure_pairs = std::move(st.pairs);
  b.credits = std::move(st.credits);
}

Term Tableau::fresh_term() { return Term::fresh(++fresh_); }

namespace {

// One representative per identity class not yet instantiated.
std::vector<Term> pending_names(const Branch& b, const Entry& e) {
  std::set<Term> covered;
  for (const auto& t : e.instantiated) covered.insert(b.classes.find(t));
  std::set<Term> out;
  for (const auto& n : b.names) {
    Term r = b.classes.find(n);
    if (!covered.contains(r)) out.insert(r);
  }
  return {out.begin(), out.end()};
}

}  // namespace

bool Tableau::gamma_applicable(const Branch& b, const Entry& e) const {
  if (e.used || e.rounds >= config_.gamma_rounds) return false;
  if (b.names.empty()) return e.instantiated.empty();
  return !pending_names(b, e).empty();
}

std::optional<Tableau::Choice> Tableau::choose(Branch& b) const {
  for (RuleKind kind : config_.order.priority) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
      const Entry& e = b.entries[i];
      if (e.used) continue;
      if (classify(nodes_[e.node].formula) != kind) continue;
      if (kind == RuleKind::Gamma && !gamma_applicable(b, e)) continue;
      pick = i;
      if (!config_.order.newest_first) break;
    }
    if (pick) return Choice{kind, *pick};
  }
  for (const Entry& e : b.entries) {
    if (e.used || classify(nodes_[e.node].formula) != RuleKind::Gamma) continue;
    if (!pending_names(b, e).empty()) b.gamma_exhausted = true;
  }
  return std::nullopt;
}

void Tableau::finalize(Branch& b) const {
  if (b.closed())
    b.status = BranchStatus::ClosedSaturated;
  else if (b.gamma_exhausted)
    b.status = BranchStatus::DepthLimited;
  else
    b.status = BranchStatus::OpenSaturated;
}

std::vector<Formula> Tableau::instantiate_universal(std::size_t bi, std::size_t ei) {
  Branch& b = branches_.at(bi);
  const Formula f = nodes_[b.entries.at(ei).node].formula;
  if (classify(f) != RuleKind::Gamma) throw std::invalid_argument("not a universal: " + render(f));
  std::vector<Term> targets = pending_names(b, b.entries[ei]);
  if (b.entries[ei].rounds >= config_.gamma_rounds) {
    if (!targets.empty()) throw GammaBudgetExhausted();
    return {};
  }
  if (b.names.empty() && b.entries[ei].instantiated.empty()) {
    Term t = fresh_term();
    b.names.insert(t);
    targets.push_back(t);
  }
  if (targets.empty()) return {};
  ++b.entries[ei].rounds;
  int source = b.entries[ei].node;
  std::vector<Formula> added;
  for (const auto& t : targets) {
    b.entries[ei].instantiated.insert(t);
    Formula inst = instance(f, t);
    // An instance true by reflexivity alone cannot help close the branch.
    if (partial_eval(inst) == Truth::True) continue;
    push_formula(b, inst, "gamma", source);
    added.push_back(inst);
  }
  return added;
}

Formula Tableau::instantiate_existential(std::size_t bi, std::size_t ei) {
  Branch& b = branches_.at(bi);
  const Formula f = nodes_[b.entries.at(ei).node].formula;
  if (classify(f) != RuleKind::Delta) throw std::invalid_argument("not an existential: " + render(f));
  if (b.entries[ei].used) throw AlreadyInstantiated();
  Term t = fresh_term();
  if (config_.witness_override && !override_used_) {
    t = Term::constant(*config_.witness_override);
    override_used_ = true;
  }
  b.names.insert(t);
  b.entries[ei].used = true;
  Formula inst = instance(f, t);
  push_formula(b, inst, "delta", b.entries[ei].node);
  return inst;
}

void Tableau::merge_identity(std::size_t bi, const Identity& id) {
  Branch& b = branches_.at(bi);
  push_formula(b, Formula::atomic(id), "identity", -1);
}

void Tableau::add_formula(std::size_t bi, const Formula& f, std::string rule, int source) {
  push_formula(branches_.at(bi), f, std::move(rule), source);
}

void Tableau::apply(std::size_t index, Choice c) {
  Branch& b = branches_[index];
  ++b.steps;
  const Formula f = nodes_[b.entries[c.entry].node].formula;
  int source = b.entries[c.entry].node;
  switch (c.kind) {
    case RuleKind::Alpha:
      b.entries[c.entry].used = true;
      for (const auto& part : alpha_parts(f)) push_formula(b, part, "alpha", source);
      break;
    case RuleKind::Delta: instantiate_existential(index, c.entry); break;
    case RuleKind::Gamma: instantiate_universal(index, c.entry); break;
    case RuleKind::Beta: {
      b.entries[c.entry].used = true;
      auto [left, right] = beta_parts(f);
      Branch other = b;
      b.id = next_branch_id_++;
      other.id = next_branch_id_++;
      for (const auto& part : left) push_formula(b, part, "beta", source);
      for (const auto& part : right) push_formula(other, part, "beta", source);
      branches_.insert(branches_.begin() + static_cast<std::ptrdiff_t>(index) + 1, std::move(other));
      break;
    }
  }
}

bool Tableau::finished() const {
  return std::none_of(branches_.begin(), branches_.end(),
                      [](const Branch& b) { return b.status == BranchStatus::Live; });
}

void Tableau::expand_step() {
  for (std::size_t i = cursor_; i < branches_.size(); ++i) {
    Branch& b = branches_[i];
    if (b.status != BranchStatus::Live) {
      if (i == cursor_) ++cursor_;
      continue;
    }
    if (!config_.harvest && b.closed()) {
      finalize(b);
      continue;
    }
    auto choice = choose(b);
    if (!choice) {
      finalize(b);
      continue;
    }
    if (b.steps >= config_.max_depth ||
        (choice->kind == RuleKind::Beta && b.closed() && branches_.size() >= config_.max_branches)) {
      b.status = BranchStatus::DepthLimited;
      continue;
    }
    apply(i, *choice);
    return;
  }
  throw NoApplicableRule();
}

void Tableau::run() {
  while (!finished()) {
    try {
      expand_step();
    } catch (const NoApplicableRule&) {
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// Saturated trees

SaturatedTree::SaturatedTree(Tableau t) : tree_(std::move(t)) {
  if (!tree_.finished()) tree_.run();
}

bool SaturatedTree::all_closed() const {
  return std::all_of(branches().begin(), branches().end(),
                     [](const Branch& b) { return b.status == BranchStatus::ClosedSaturated; });
}

bool SaturatedTree::any_open() const {
  return std::any_of(branches().begin(), branches().end(),
                     [](const Branch& b) { return b.status == BranchStatus::OpenSaturated; });
}

bool SaturatedTree::any_depth_limited() const {
  return std::any_of(branches().begin(), branches().end(),
                     [](const Branch& b) { return b.status == BranchStatus::DepthLimited; });
}

SaturatedTree saturate(Tableau tree) {
  tree.run();
  return SaturatedTree(std::move(tree));
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string render_tree(const Tableau& tree, TreeFormat format, Style style) {
  const auto& nodes = tree.nodes();
  std::map<int, bool> leaf_closed;
  for (const auto& b : tree.branches()) leaf_closed[b.leaf] = b.closed();

  auto label = [&](int n) {
    const TreeNode& node = nodes[n];
    std::string s = "n" + std::to_string(n) + ": " + render(node.formula, style) + " [" + node.rule;
    if (node.source >= 0) s += " n" + std::to_string(node.source);
    s += "]";
    auto it = leaf_closed.find(n);
    if (it != leaf_closed.end() && it->second) s += format == TreeFormat::Dot || style == Style::Unicode ? " ⊗" : " (x)";
    return s;
  };

  std::ostringstream out;
  if (format == TreeFormat::Dot) {
    out << "digraph tableau {\n  node [shape=box];\n";
    for (std::size_t n = 0; n < nodes.size(); ++n)
      out << "  n" << n << " [label=\"" << dot_escape(label(static_cast<int>(n))) << "\"];\n";
    for (std::size_t n = 0; n < nodes.size(); ++n)
      for (int c : nodes[n].children) out << "  n" << n << " -> n" << c << ";\n";
    out << "}\n";
    return out.str();
  }
  if (nodes.empty()) return {};

  bool u = style == Style::Unicode;
  struct Item {
    int node;
    std::string first, rest;
  };
  std::vector<Item> stack{{0, "", ""}};
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    int n = it.node;
    std::string first = it.first;
    // Follow single-child chains iteratively.
    for (;;) {
      out << first << label(n) << "\n";
      const auto& kids = nodes[n].children;
      if (kids.size() == 1) {
        n = kids[0];
        first = it.rest;
        continue;
      }
      for (std::size_t k = kids.size(); k-- > 0;) {
        bool last = k + 1 == kids.size();
        std::string glyph = last ? (u ? "└ " : "\\- ") : (u ? "├ " : "|- ");
        std::string cont = last ? (u ? "  " : "   ") : (u ? "│ " : "|  ");
        stack.push_back({kids[k], it.rest + glyph, it.rest + cont});
      }
      break;
    }
  }
  return out.str();
}

}  // namespace trel
