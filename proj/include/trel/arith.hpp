// Bounded-domain analysis of decidable arithmetic predicates: extensions,
// monadic classification and fiber analysis of ∼∃x∃y(F ∧ G).

#ifndef TREL_ARITH_HPP_
#define TREL_ARITH_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trel/formula.hpp"

namespace trel {

using IntPredicate = Comparison;

struct Domain {
  std::uint64_t lower = 1;
  std::uint64_t upper = 100;

  Domain() = default;
  Domain(std::uint64_t lo, std::uint64_t hi);  // throws std::invalid_argument if lo > hi

  bool contains(std::uint64_t n) const { return lower <= n && n <= upper; }
  std::size_t size() const { return upper - lower + 1; }
  std::vector<Term> numerals() const;
};

using Assignment = std::map<std::string, std::uint64_t>;

class UnboundVariable : public std::invalid_argument {
 public:
  explicit UnboundVariable(const std::string& v) : std::invalid_argument("unbound variable " + v), name(v) {}
  std::string name;
};

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OutOfDomain : public std::out_of_range {
 public:
  explicit OutOfDomain(std::uint64_t n) : std::out_of_range(std::to_string(n) + " is outside the domain") {}
};

bool eval_predicate(const IntPredicate& p, const Assignment& a);

// Satisfying assignments over p's variables, lexicographic by variable name.
std::vector<Assignment> extension(const IntPredicate& p, const Domain& d);
// Satisfying values of `var`; p may not mention other variables. A predicate
// without `var` yields the whole domain or nothing.
std::vector<std::uint64_t> extension_over(const IntPredicate& p, const std::string& var, const Domain& d);

enum class Shape { NegExistsAnd, NegExistsOr, ExistsAnd };

enum class InstanceVerdict { TRelevant, RedundantF, RedundantG, TwoSubsets, False, Satisfied, Unspecified };

std::string_view shape_name(Shape s);
std::string_view instance_name(InstanceVerdict v);

struct MonadicResult {
  InstanceVerdict verdict = InstanceVerdict::Unspecified;
  bool truth = false;
  std::vector<std::uint64_t> ext_f, ext_g;
  bool presuppositions_hold = false;  // both extensions nonempty
  bool boundary_sensitive = false;    // an extension reaches the upper bound
  std::optional<std::uint64_t> witness;
};

// `RedundantG` names G as the redundant conjunct (F is empty on its own).
// The disjunctive shape reports truth and extensions only; its verdict is
// False or Unspecified.
MonadicResult classify_monadic(Shape shape, const IntPredicate& f, const IntPredicate& g, const Domain& d,
                               const std::string& var = "x");

struct Fiber {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> ext_f, ext_g;
  InstanceVerdict verdict = InstanceVerdict::Unspecified;
};

enum class FamilyVerdict { TRelevant, NotTRelevant };

std::string_view family_name(FamilyVerdict v);

struct FiberReport {
  std::string fixed, free;
  std::vector<Fiber> fibers;
  FamilyVerdict family = FamilyVerdict::NotTRelevant;
  bool boundary_sensitive = false;

  const Fiber& at(std::uint64_t n) const;
  // Fiber indices with the given verdict, ascending.
  std::vector<std::uint64_t> indices(InstanceVerdict v) const;
};

FiberReport fiber_analysis(const IntPredicate& f, const IntPredicate& g, const Domain& d,
                           const std::string& fixed = "y", const std::string& free = "x");

// TRelevant iff some fiber is.
FamilyVerdict family_verdict(const std::vector<Fiber>& fibers);

// ∼∃free(F[fixed:=n] ∧ G[fixed:=n]), origins cleared.
Formula ground_instance(const IntPredicate& f, const IntPredicate& g, std::uint64_t n, const Domain& d,
                        const std::string& fixed = "y", const std::string& free = "x");

// A sentence (∼)Q v1 … Q vk (L1 ∘ L2) reduced to one of the three shapes,
// with ∀ dualized and negated comparison literals complemented.
struct ArithSentence {
  Shape shape = Shape::NegExistsAnd;
  std::vector<std::string> vars;
  IntPredicate f, g;
  bool sign_flip_applied = false;
};

ArithSentence decompose(const Formula& sentence);

// Rows run from the upper bound of `row_var` down, columns over `col_var`.
// 'F' F only, 'G' G only, '*' both, '.' neither.
std::string render_grid(const IntPredicate& f, const IntPredicate& g, const Domain& d,
                        const std::string& col_var = "x", const std::string& row_var = "y");

// Quantifiers expanded over the numerals of d.
Formula expand_over_domain(const Formula& f, const Domain& d);

}  // namespace trel

#endif  // TREL_ARITH_HPP_
