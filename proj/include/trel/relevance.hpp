// Truth-relevance verdicts over saturated tableaux.
//
// An atom is self-contradicted when it takes part in a closure pair on some
// branch, and necessary when suppressing its contributions leaves a branch
// open. A valid formula is t-relevant iff every atom is necessary.

#ifndef TREL_RELEVANCE_HPP_
#define TREL_RELEVANCE_HPP_

#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "trel/formula.hpp"
#include "trel/tableau.hpp"

namespace trel {

enum class Verdict { NotValid, Inconclusive, ValidNotTRelevant, ValidTRelevant };

std::string_view verdict_name(Verdict v);

using TemplateSet = std::set<std::string>;

struct BranchReport {
  int id = 0;
  BranchStatus status = BranchStatus::Live;
  std::vector<std::string> pairs;
};

struct RelevanceReport {
  Verdict verdict = Verdict::NotValid;
  TemplateSet universe;
  TemplateSet self_contradicted;
  TemplateSet necessary;
  TemplateSet redundant;
  std::vector<TemplateSet> minimal_subsets;
  std::vector<BranchReport> branches;
};

nlohmann::ordered_json to_json(const RelevanceReport& r);

class NotClosed : public std::logic_error {
 public:
  NotClosed() : std::logic_error("relevance test needs a fully closed tree") {}
};

TemplateSet self_contradicted_atoms(const SaturatedTree& t);

// Atoms the verdict accounts for: the non-identity atoms of the premises and
// goal, plus every self-contradicted template (witness and identity atoms
// enter this way). Positive identities that only consolidate constants are
// not accounted.
TemplateSet relevance_universe(const SaturatedTree& t);

// Re-saturates with `atom` suppressed; true iff some branch then stays open.
bool necessity_test(const SaturatedTree& t, const std::string& atom);

// True iff every branch still closes when only the templates in `active`
// (among the universe) contribute to closure.
bool sufficient(const SaturatedTree& t, const TemplateSet& active);

// Inclusion-minimal sufficient subsets of the universe, by size then
// lexicographically. Throws std::length_error past 20 atoms.
std::vector<TemplateSet> minimal_relevant_subsets(const SaturatedTree& t);

RelevanceReport verdict(const SaturatedTree& t);

// Builds, saturates and judges premises ⊢ goal.
RelevanceReport prove(const Formula& goal, std::span<const Formula> premises, TableauConfig config = {});

enum class PrototypeTag { Case1_1, Case1_2, Case2_1, Case2_2, NotPrototypical };

std::string_view prototype_name(PrototypeTag t);

struct PrototypeCase {
  PrototypeTag tag = PrototypeTag::NotPrototypical;
  std::vector<Formula> presuppositions;
  bool sign_flip_applied = false;
  // Unnegated conjunction: the sentence being true already makes its
  // presuppositions true.
  bool presuppositions_auto_satisfied = false;
  std::string var;
  // The two literals over `var` after sign flipping: the sentence reads
  // (∼)∃var(first ∧/∨ second).
  std::vector<Formula> literals;
};

PrototypeCase classify_prototype(const Formula& f);

}  // namespace trel

#endif  // TREL_RELEVANCE_HPP_
