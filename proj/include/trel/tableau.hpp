// Truth trees with identity classes and closure-pair harvesting.
//
// Closed branches keep expanding and record every closure pair they meet.

#ifndef TREL_TABLEAU_HPP_
#define TREL_TABLEAU_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trel/formula.hpp"

namespace trel {

enum class RuleKind { Alpha, Delta, Beta, Gamma };

std::string_view rule_name(RuleKind k);

struct RuleOrder {
  std::array<RuleKind, 4> priority{RuleKind::Alpha, RuleKind::Delta, RuleKind::Beta, RuleKind::Gamma};
  // Within one rule kind, pick the newest eligible entry instead of the oldest.
  bool newest_first = false;

  std::string str() const;
};

struct TableauConfig {
  std::size_t max_depth = 2000;   // rule applications per branch
  std::size_t gamma_rounds = 3;   // instantiation rounds per universal per branch
  RuleOrder order;
  bool harvest = true;            // closed branches keep expanding
  // Past this many branches a closed branch stops harvesting instead of
  // splitting and is reported DepthLimited. Open branches are unaffected.
  std::size_t max_branches = 4096;
  // Atom templates whose literals may not contribute to closure (and, for
  // positive identities, may not merge classes).
  std::set<std::string> suppressed;
  // Debug aid: the first delta witness reuses this constant instead of a fresh
  // name. Verdicts are never computed with it set.
  std::optional<std::string> witness_override;
};

class TableauError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoApplicableRule : public TableauError {
 public:
  NoApplicableRule() : TableauError("no applicable rule") {}
};

class AlreadyInstantiated : public TableauError {
 public:
  AlreadyInstantiated() : TableauError("existential already instantiated on this branch") {}
};

class GammaBudgetExhausted : public TableauError {
 public:
  GammaBudgetExhausted() : TableauError("gamma budget exhausted for this universal") {}
};

// Union-find over constant and witness names of one branch. The class
// representative is the least member: constants (lexicographic) before
// witnesses (by index).
class EquivClasses {
 public:
  void add(const Term& t);
  void merge(const Term& a, const Term& b);
  Term find(const Term& t) const;
  bool same(const Term& a, const Term& b) const { return find(a) == find(b); }
  std::vector<std::vector<Term>> classes() const;

 private:
  std::map<Term, Term> parent_;
};

struct AtomKey {
  std::string text;        // the atom printed over class representatives
  bool schematic = false;  // some representative is a witness

  auto operator<=>(const AtomKey& o) const { return text <=> o.text; }
  bool operator==(const AtomKey& o) const { return text == o.text; }
};

AtomKey key_of(const Atom& a, const EquivClasses& classes);

struct Literal {
  Atom atom;
  bool positive = true;
  std::string templ;
  int node = -1;
};

enum class BranchStatus { Live, ClosedSaturated, OpenSaturated, DepthLimited };

std::string_view status_name(BranchStatus s);

struct Entry {
  int node = -1;
  bool used = false;              // alpha/beta/delta applied, or literal/duplicate
  std::set<Term> instantiated;    // gamma log
  std::size_t rounds = 0;
};

struct Branch {
  int id = 0;
  int leaf = -1;
  std::vector<Entry> entries;
  std::vector<Literal> literals;
  std::set<Term> names;
  EquivClasses classes;
  std::set<AtomKey> closure_pairs;
  // Templates credited by each closure pair.
  std::map<AtomKey, std::set<std::string>> credits;
  std::size_t steps = 0;
  bool gamma_exhausted = false;
  BranchStatus status = BranchStatus::Live;

  bool closed() const { return !closure_pairs.empty(); }
};

struct TreeNode {
  Formula formula;
  std::string rule;   // premise, goal, alpha, beta, gamma, delta
  int source = -1;    // node the rule was applied to
  int parent = -1;
  std::vector<int> children;
};

// Closure state of a literal set: identity classes from active positive
// identities, keys carrying both signs, and the templates each such key
// credits. Ground comparisons and reflexive identities carry their truth
// value as an implicit sign.
struct ClosureState {
  EquivClasses classes;
  std::set<AtomKey> pairs;
  std::map<AtomKey, std::set<std::string>> credits;
};

ClosureState compute_closure(std::span<const Literal> literals, const std::set<Term>& names,
                             const std::set<std::string>& suppressed);

class Tableau {
 public:
  // Root: premises in order, then the negated goal.
  Tableau(const Formula& goal, std::span<const Formula> premises, TableauConfig config = {});
  // Root given directly (entries are taken as they are, no negation).
  static Tableau from_roots(std::span<const Formula> roots, TableauConfig config = {});
  // A fresh, unexpanded tableau over the same root under another config.
  Tableau restarted(TableauConfig config) const;

  // Applies one rule on the first live branch. Throws NoApplicableRule when
  // every branch is finished.
  void expand_step();
  // Runs expand_step until no branch is live.
  void run();
  bool finished() const;

  std::vector<Formula> instantiate_universal(std::size_t branch, std::size_t entry);
  Formula instantiate_existential(std::size_t branch, std::size_t entry);
  // Adds a positive identity literal to the branch and rekeys its literals.
  void merge_identity(std::size_t branch, const Identity& id);
  // Adds a formula to a branch as if derived by `rule` (used by tests and tools).
  void add_formula(std::size_t branch, const Formula& f, std::string rule, int source = -1);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<Branch>& branches() const { return branches_; }
  const TableauConfig& config() const { return config_; }
  const std::vector<Formula>& roots() const { return roots_; }
  // Premises and goal as given (without the goal's negation).
  const std::vector<Formula>& sources() const { return sources_; }
  std::uint64_t fresh_counter() const { return fresh_; }

 private:
  explicit Tableau(TableauConfig config) : config_(std::move(config)) {}
  void seed(std::span<const Formula> roots, std::span<const std::string> rules);

  struct Choice {
    RuleKind kind;
    std::size_t entry;
  };
  std::optional<Choice> choose(Branch& b) const;
  bool gamma_applicable(const Branch& b, const Entry& e) const;
  void refresh(Branch& b) const;
  int new_node(const Formula& f, std::string rule, int source, int parent);
  void push_formula(Branch& b, const Formula& f, std::string rule, int source);
  void apply(std::size_t index, Choice c);
  void finalize(Branch& b) const;
  Term fresh_term();

  TableauConfig config_;
  std::vector<Formula> roots_;
  std::vector<Formula> sources_;
  std::vector<std::string> root_rules_;
  std::vector<TreeNode> nodes_;
  std::vector<Branch> branches_;
  std::uint64_t fresh_ = 0;
  int next_branch_id_ = 0;
  bool override_used_ = false;
  std::size_t cursor_ = 0;  // branches before it are finished
};

// Rule kind of an entry formula; nullopt for literals.
std::optional<RuleKind> classify(const Formula& f);

// All keys of the branch holding both signs; the branch is closed iff this is
// nonempty.
std::set<AtomKey> check_closure(const Branch& b);

// A tableau after saturation: every branch is ClosedSaturated, OpenSaturated
// or DepthLimited. Immutable.
class SaturatedTree {
 public:
  explicit SaturatedTree(Tableau t);

  const Tableau& tableau() const { return tree_; }
  const std::vector<Branch>& branches() const { return tree_.branches(); }
  const TableauConfig& config() const { return tree_.config(); }

  bool all_closed() const;
  bool any_open() const;
  bool any_depth_limited() const;

 private:
  Tableau tree_;
};

SaturatedTree saturate(Tableau tree);

enum class TreeFormat { Text, Dot };

std::string render_tree(const Tableau& tree, TreeFormat format = TreeFormat::Text,
                        Style style = Style::Unicode);

}  // namespace trel

#endif  // TREL_TABLEAU_HPP_
