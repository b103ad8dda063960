// Brute-force checkers kept independent of the tableau engine.

#ifndef TREL_ORACLE_HPP_
#define TREL_ORACLE_HPP_

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trel/formula.hpp"
#include "trel/relevance.hpp"
#include "trel/tableau.hpp"

namespace trel {

class TooManyAtoms : public std::length_error {
 public:
  explicit TooManyAtoms(std::size_t n)
      : std::length_error("truth table over " + std::to_string(n) + " atoms (limit 20)") {}
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t needed, std::size_t limit)
      : std::runtime_error(std::to_string(needed) + " orderings exceed the limit of " + std::to_string(limit)) {}
};

inline constexpr std::size_t kMaxTableAtoms = 20;

// Quantifier-free formulas over named elements.
struct GroundProblem {
  std::vector<Formula> formulas;
  std::set<std::string> atoms;

  // Throws std::invalid_argument on a quantifier, TooManyAtoms past 20 atoms.
  static GroundProblem of(std::span<const Formula> fs);
};

// Predicate and identity atoms are propositional variables, restricted to
// assignments that respect some equality relation on the names (identity is
// reflexive, symmetric, transitive, and congruent for predicates). Ground
// comparisons are evaluated.
bool truth_table_satisfiable(std::span<const Formula> fs);
bool truth_table_tautology(const Formula& f);

// ∀ becomes a left-nested conjunction and ∃ a disjunction over `elements`.
Formula ground_expand(const Formula& f, std::span<const Term> elements);

struct OrderingResult {
  RuleOrder order;
  Verdict verdict = Verdict::NotValid;
  TemplateSet necessary;
};

struct OrderCheckReport {
  std::size_t orderings = 0;
  bool agree = true;
  Verdict verdict = Verdict::NotValid;  // of the default ordering
  TemplateSet necessary;
  std::vector<OrderingResult> results;
};

// Every rule-priority permutation, each with oldest- and newest-first entry
// selection (48 orderings).
std::vector<RuleOrder> admissible_orderings();

// Requires at most 8 root entries and quantifier depth at most 2
// (std::invalid_argument otherwise); BudgetExceeded if limit < 48.
OrderCheckReport exhaustive_order_check(const Formula& goal, std::span<const Formula> premises,
                                        std::size_t limit = 48, const TableauConfig& base = {});

}  // namespace trel

#endif  // TREL_ORACLE_HPP_
