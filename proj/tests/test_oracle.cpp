#include <functional>
#include <map>

#include "doctest.h"
#include "support.hpp"
#include "trel/arith.hpp"
#include "trel/oracle.hpp"

using namespace trel;
using testing::parse_all;

namespace {

std::vector<Term> names(std::initializer_list<const char*> ns) {
  std::vector<Term> out;
  for (const char* n : ns) out.push_back(Term::constant(n));
  return out;
}

// Test-side evaluator over a finite model: unary predicate extensions only.
using Model = std::map<std::string, std::set<std::string>>;

bool holds_in(const Formula& f, const Model& m, const std::vector<std::string>& universe,
              std::map<std::string, std::string>& env) {
  auto arg = [&](const Term& t) { return t.is_variable() ? env.at(t.name) : t.name; };
  switch (f.op()) {
    case Op::Atomic: {
      const auto& p = std::get<Predicate>(f.atom());
      auto it = m.find(p.symbol);
      return it != m.end() && it->second.contains(arg(p.args[0]));
    }
    case Op::Not: return !holds_in(f.sub(), m, universe, env);
    case Op::And: return holds_in(f.left(), m, universe, env) && holds_in(f.right(), m, universe, env);
    case Op::Or: return holds_in(f.left(), m, universe, env) || holds_in(f.right(), m, universe, env);
    case Op::Implies: return !holds_in(f.left(), m, universe, env) || holds_in(f.right(), m, universe, env);
    case Op::Iff: return holds_in(f.left(), m, universe, env) == holds_in(f.right(), m, universe, env);
    case Op::ForAll:
    case Op::Exists: {
      bool all = true, any = false;
      for (const auto& u : universe) {
        env[f.var()] = u;
        bool v = holds_in(f.sub(), m, universe, env);
        all = all && v;
        any = any || v;
      }
      env.erase(f.var());
      return f.is(Op::ForAll) ? all : any;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("truth_table_tautology") {
  CHECK(truth_table_tautology(parse("(Pa -> Pb) -> (~Pb -> ~Pa)")));
  CHECK(truth_table_tautology(parse("Pa | ~Pa")));
  CHECK_FALSE(truth_table_tautology(parse("Pa")));
  CHECK(truth_table_tautology(parse("a = b & Pa -> Pb")));
  CHECK(truth_table_tautology(parse("a = b & b = c1 -> a = c1")));
  CHECK_FALSE(truth_table_tautology(parse("a = b")));
  CHECK(truth_table_tautology(parse("a = a")));
  CHECK(truth_table_tautology(parse("1+1=2", Grammar::Arith)));
  CHECK_THROWS_AS(truth_table_tautology(parse("forall x Px")), std::invalid_argument);
}

TEST_CASE("truth_table_satisfiable") {
  auto fs = parse_all({"Pa | Pb", "~Pa"});
  CHECK(truth_table_satisfiable(fs));
  auto gs = parse_all({"Pa", "a = b", "~Pb"});
  CHECK_FALSE(truth_table_satisfiable(gs));
}

TEST_CASE("atom cap") {
  std::string big;
  for (int i = 0; i < 21; ++i) big += (i ? " | " : "") + std::string("P") + std::to_string(i) + "a";
  CHECK_THROWS_AS(truth_table_tautology(parse(big)), TooManyAtoms);
  std::vector<Formula> one{parse(big)};
  CHECK_THROWS_AS(GroundProblem::of(one), TooManyAtoms);
  std::string twenty;
  for (int i = 0; i < 20; ++i) twenty += (i ? " | " : "") + std::string("P") + std::to_string(i) + "a";
  CHECK_FALSE(truth_table_tautology(parse(twenty)));
}

TEST_CASE("ground_expand") {
  auto mn = names({"m", "n"});
  CHECK(ground_expand(parse("forall x (Fx -> Gx)"), mn) == parse("(Fm -> Gm) & (Fn -> Gn)"));
  CHECK(ground_expand(parse("exists x Gx"), mn) == parse("Gm | Gn"));
  auto a = names({"a"});
  CHECK(ground_expand(parse("forall x Px"), a) == parse("Pa"));
  auto abc = names({"a", "b", "c1"});
  CHECK(ground_expand(parse("exists x Px"), abc) == parse("(Pa | Pb) | Pc1"));
  CHECK(ground_expand(parse("forall x exists y (Px -> Qy)"), mn) ==
        parse("((Pm -> Qm) | (Pm -> Qn)) & ((Pn -> Qm) | (Pn -> Qn))"));
}

TEST_CASE("ground_expand preserves truth over the elements") {
  testing::FormulaGen gen(31337);
  std::vector<std::string> universe{"a", "b", "c1"};
  auto elems = names({"a", "b", "c1"});
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    Formula f = gen.logic(4);
    if (atoms_of(f) != atoms_of(std::vector<Formula>{f}, AtomFilter::NoIdentity)) continue;
    bool unary = true;
    std::function<void(const Formula&)> scan = [&](const Formula& g) {
      if (g.is(Op::Atomic)) {
        const auto* p = std::get_if<Predicate>(&g.atom());
        unary = unary && p && p->args.size() == 1;
      } else if (g.is(Op::Not) || g.is_quantifier()) {
        scan(g.sub());
      } else {
        scan(g.left());
        scan(g.right());
      }
    };
    scan(f);
    if (!unary) continue;
    Formula e = ground_expand(f, elems);
    for (int k = 0; k < 4; ++k) {
      Model m;
      for (const char* sym : {"P", "Q"})
        for (const auto& u : universe)
          if (gen.pick(2)) m[sym].insert(u);
      std::map<std::string, std::string> env;
      REQUIRE(holds_in(f, m, universe, env) == holds_in(e, m, universe, env));
    }
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("exhaustive_order_check") {
  CHECK(admissible_orderings().size() == 48);
  std::vector<Formula> none;
  SUBCASE("contraposition") {
    auto r = exhaustive_order_check(parse("(Pa -> Pb) -> (~Pb -> ~Pa)"), none);
    CHECK(r.orderings == 48);
    CHECK(r.agree);
    CHECK(r.verdict == Verdict::ValidTRelevant);
  }
  SUBCASE("identity consolidation") {
    Parser p;
    std::vector<Formula> prem{p.parse("Fm & forall x (Fx -> x = m)"), p.parse("Fn & Gn")};
    auto r = exhaustive_order_check(p.parse("Gm"), prem);
    CHECK(r.agree);
    CHECK(r.verdict == Verdict::ValidNotTRelevant);
    for (const auto& o : r.results) {
      CHECK(o.verdict == Verdict::ValidNotTRelevant);
      CHECK(o.necessary == r.necessary);
    }
    CHECK_FALSE(r.necessary.contains("Fm"));
  }
  SUBCASE("open") {
    std::vector<Formula> prem{parse("Pa")};
    auto r = exhaustive_order_check(parse("Pb"), prem);
    CHECK(r.agree);
    CHECK(r.verdict == Verdict::NotValid);
  }
  SUBCASE("limits") {
    CHECK_THROWS_AS(exhaustive_order_check(parse("Pa | ~Pa"), none, 10), BudgetExceeded);
    auto nine = parse_all({"Pa", "Pb", "Pc", "Qa", "Qb", "Qc", "Sa", "Sb", "Sc"});
    CHECK_THROWS_AS(exhaustive_order_check(parse("Pa"), nine), std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_order_check(parse("forall x forall y forall z (Rxy | Pz)"), none),
                    std::invalid_argument);
  }
}
