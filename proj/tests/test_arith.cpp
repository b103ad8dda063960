#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "trel/arith.hpp"
#include "trel/formula.hpp"

using namespace trel;
using V = std::vector<std::uint64_t>;

namespace {

IntPredicate pred(const std::string& text) {
  Formula f = parse("exists x exists y (" + text + ")", Grammar::Arith);
  return std::get<Comparison>(f.sub().sub().atom());
}

// Independent evaluation: sums and relations written out here.
std::uint64_t value(const IntTerm& t, std::uint64_t x, std::uint64_t y) {
  std::uint64_t s = 0;
  for (const auto& term : t.summands) {
    if (term.kind == Term::Kind::Numeral)
      s += term.value;
    else
      s += term.name == "x" ? x : y;
  }
  return s;
}

bool truth(const IntPredicate& p, std::uint64_t x, std::uint64_t y = 0) {
  std::uint64_t l = value(p.lhs, x, y), r = value(p.rhs, x, y);
  switch (p.rel) {
    case Rel::Less: return l < r;
    case Rel::LessEq: return l <= r;
    case Rel::Eq: return l == r;
    case Rel::NotEq: return l != r;
    case Rel::GreaterEq: return l >= r;
    case Rel::Greater: return l > r;
  }
  return false;
}

V enumerate(const IntPredicate& p, const Domain& d, std::uint64_t y = 0) {
  V out;
  for (std::uint64_t x = d.lower; x <= d.upper; ++x)
    if (truth(p, x, y)) out.push_back(x);
  return out;
}

V range(std::uint64_t lo, std::uint64_t hi) {
  V out(hi - lo + 1);
  std::iota(out.begin(), out.end(), lo);
  return out;
}

MonadicResult classify(const std::string& sentence, const Domain& d = {}) {
  ArithSentence s = decompose(parse(sentence, Grammar::Arith));
  return classify_monadic(s.shape, s.f, s.g, d);
}

}  // namespace

TEST_CASE("eval_predicate") {
  CHECK(eval_predicate(pred("x+y<=8"), {{"x", 1}, {"y", 7}}));
  CHECK_FALSE(eval_predicate(pred("y=12"), {{"y", 7}}));
  for (std::uint64_t x : {0, 1, 5, 99}) CHECK_FALSE(eval_predicate(pred("x=x+1"), {{"x", x}}));
  try {
    eval_predicate(pred("x+y<=8"), {{"x", 1}});
    FAIL("expected UnboundVariable");
  } catch (const UnboundVariable& e) {
    CHECK(e.name == "y");
  }
}

TEST_CASE("extension") {
  Domain d;
  CHECK(extension(pred("x+12<=8"), d).empty());
  CHECK(extension_over(pred("x+3<8"), "x", d) == V{1, 2, 3, 4});
  CHECK(extension_over(pred("x+3>8"), "x", d) == range(6, 100));
  CHECK(extension_over(pred("12=12"), "x", d).size() == 100);
  CHECK(extension_over(pred("7=12"), "x", d).empty());
  auto pairs = extension(pred("x+y<=3"), d);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == Assignment{{"x", 1}, {"y", 1}});
  CHECK(pairs[1] == Assignment{{"x", 1}, {"y", 2}});
  CHECK(pairs[2] == Assignment{{"x", 2}, {"y", 1}});
  CHECK_THROWS_AS(Domain(5, 4), std::invalid_argument);
}

TEST_CASE("classify_monadic") {
  SUBCASE("x<5 against x>5") {
    auto m = classify("~exists x (x<5 & x>5)");
    CHECK(m.verdict == InstanceVerdict::TRelevant);
    CHECK(m.truth);
    CHECK(m.presuppositions_hold);
    CHECK(m.ext_f == V{1, 2, 3, 4});
    CHECK(m.boundary_sensitive);
  }
  SUBCASE("x<5 against x=x+1") {
    auto m = classify("~exists x (x<5 & x=x+1)");
    CHECK(m.verdict == InstanceVerdict::RedundantF);
    CHECK(m.ext_g.empty());
  }
  SUBCASE("universal disjunction") {
    ArithSentence s = decompose(parse("forall x (x>=5 | x<=5)", Grammar::Arith));
    CHECK(s.sign_flip_applied);
    CHECK(s.shape == Shape::NegExistsAnd);
    CHECK(classify_monadic(s.shape, s.f, s.g, Domain{}).verdict == InstanceVerdict::TRelevant);
  }
  SUBCASE("satisfied conjunction") {
    auto m = classify("exists x (x<=5 & x>=5)");
    CHECK(m.verdict == InstanceVerdict::Satisfied);
    CHECK(m.truth);
    CHECK(m.witness == 5U);
  }
  SUBCASE("clean board") {
    auto m = classify("~exists x (x=x+1 | x=x+2)");
    CHECK(m.truth);
    CHECK(m.ext_f.empty());
    CHECK(m.ext_g.empty());
    CHECK(m.verdict == InstanceVerdict::Unspecified);
  }
  SUBCASE("false and both empty") {
    CHECK(classify("~exists x (x<6 & x>4)").verdict == InstanceVerdict::False);
    CHECK_FALSE(classify("~exists x (x<6 & x>4)").truth);
    CHECK(classify("~exists x (x=x+1 & x+1=x)").verdict == InstanceVerdict::TwoSubsets);
    CHECK(classify("~exists x (x=x+1 | x<3)").verdict == InstanceVerdict::False);
    CHECK(classify("exists x (x<3 & x>3)").verdict == InstanceVerdict::False);
  }
  SUBCASE("shape mismatch") {
    CHECK_THROWS_AS(decompose(parse("exists x (x<3 | x>3)", Grammar::Arith)), ShapeMismatch);
    CHECK_THROWS_AS(decompose(parse("~exists x (x<3 -> x>3)", Grammar::Arith)), ShapeMismatch);
    CHECK_THROWS_AS(classify_monadic(Shape::NegExistsAnd, pred("x+y<3"), pred("x<2"), Domain{}), ShapeMismatch);
  }
}

TEST_CASE("fiber analysis, x+y<=8 and y=12") {
  Domain d;
  FiberReport r = fiber_analysis(pred("x+y<=8"), pred("y=12"), d);
  REQUIRE(r.fibers.size() == 100);
  CHECK(r.at(12).ext_f.empty());
  CHECK(r.at(12).verdict == InstanceVerdict::RedundantG);
  CHECK(r.at(7).ext_g.empty());
  CHECK(r.at(7).ext_f == V{1});
  CHECK(r.at(7).verdict == InstanceVerdict::RedundantF);
  CHECK(r.at(9).verdict == InstanceVerdict::TwoSubsets);
  CHECK(r.indices(InstanceVerdict::TRelevant).empty());
  CHECK(r.indices(InstanceVerdict::RedundantF) == range(1, 7));
  CHECK(r.indices(InstanceVerdict::RedundantG) == V{12});
  CHECK(r.family == FamilyVerdict::NotTRelevant);
  CHECK_THROWS_AS(r.at(0), OutOfDomain);
}

TEST_CASE("fiber analysis, x+y<8 and x+y>8") {
  Domain d;
  FiberReport r = fiber_analysis(pred("x+y<8"), pred("x+y>8"), d);
  CHECK(r.indices(InstanceVerdict::TRelevant) == range(1, 6));
  CHECK(r.at(7).ext_f.empty());
  CHECK(r.at(9).verdict == InstanceVerdict::RedundantG);
  CHECK(r.indices(InstanceVerdict::RedundantG) == range(7, 100));
  CHECK(r.family == FamilyVerdict::TRelevant);
  CHECK(r.boundary_sensitive);
  FiberReport zero = fiber_analysis(pred("x+y<8"), pred("x+y>8"), Domain(0, 100));
  CHECK(zero.indices(InstanceVerdict::TRelevant) == range(0, 7));
}

TEST_CASE("family_verdict") {
  std::vector<Fiber> fs(3);
  fs[0].verdict = InstanceVerdict::RedundantF;
  fs[1].verdict = InstanceVerdict::TwoSubsets;
  fs[2].verdict = InstanceVerdict::RedundantG;
  CHECK(family_verdict(fs) == FamilyVerdict::NotTRelevant);
  fs[1].verdict = InstanceVerdict::TRelevant;
  CHECK(family_verdict(fs) == FamilyVerdict::TRelevant);
  CHECK(family_verdict({}) == FamilyVerdict::NotTRelevant);
}

TEST_CASE("ground_instance") {
  Domain d;
  CHECK(ground_instance(pred("x+y<=8"), pred("y=12"), 12, d) ==
        parse("~exists x (x+12<=8 & 12=12)", Grammar::Arith));
  CHECK(render(ground_instance(pred("x+y<8"), pred("x+y>8"), 3, d)) == "~exists x (x+3<8 & x+3>8)");
  CHECK_THROWS_AS(ground_instance(pred("x+y<8"), pred("x+y>8"), 101, d), OutOfDomain);
  CHECK_THROWS_AS(ground_instance(pred("x+y<8"), pred("x+y>8"), 0, d), OutOfDomain);
}

TEST_CASE("render_grid") {
  Domain d(1, 10);
  IntPredicate f = pred("x+y<8"), g = pred("x+y>8");
  std::string grid = render_grid(f, g, d);
  std::size_t nf = 0, ng = 0;
  for (std::uint64_t y = 1; y <= 10; ++y)
    for (std::uint64_t x = 1; x <= 10; ++x) {
      nf += truth(f, x, y) && !truth(g, x, y);
      ng += truth(g, x, y) && !truth(f, x, y);
    }
  CHECK(static_cast<std::size_t>(std::count(grid.begin(), grid.end(), 'F')) == nf);
  CHECK(static_cast<std::size_t>(std::count(grid.begin(), grid.end(), 'G')) == ng);
  CHECK(std::count(grid.begin(), grid.end(), '*') == 0);
  std::string both = render_grid(pred("x<=y"), pred("x>=y"), Domain(1, 4));
  CHECK(std::count(both.begin(), both.end(), '*') == 4);
}

TEST_CASE("extensions agree with direct enumeration") {
  std::mt19937_64 rng(99);
  auto pick = [&](int n) { return static_cast<std::uint64_t>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  static const char* rels[] = {"<", "<=", "=", "!=", ">=", ">"};
  static const Rel relv[] = {Rel::Less, Rel::LessEq, Rel::Eq, Rel::NotEq, Rel::GreaterEq, Rel::Greater};
  Domain d(1, 40);
  V all = range(1, 40);
  for (int i = 0; i < 300; ++i) {
    int r = static_cast<int>(pick(6));
    std::string text = "x+" + std::to_string(pick(10)) + rels[r] + std::to_string(pick(30));
    IntPredicate p = pred(text);
    INFO(text);
    V e = extension_over(p, "x", d);
    REQUIRE(e == enumerate(p, d));
    IntPredicate c = p;
    c.rel = complement(relv[r]);
    V ce = extension_over(c, "x", d);
    V un;
    std::set_union(e.begin(), e.end(), ce.begin(), ce.end(), std::back_inserter(un));
    V in;
    std::set_intersection(e.begin(), e.end(), ce.begin(), ce.end(), std::back_inserter(in));
    CHECK(un == all);
    CHECK(in.empty());
  }
}

TEST_CASE("fiber reports mirror under swapping x and y") {
  const std::vector<std::pair<std::string, std::string>> fams{
      {"x+y<=8", "y=12"}, {"x+y<8", "x+y>8"}, {"x+3<y", "y<9"}};
  auto swap_xy = [](std::string s) {
    for (char& c : s) c = c == 'x' ? 'y' : c == 'y' ? 'x' : c;
    return s;
  };
  Domain d(1, 30);
  for (const auto& [f, g] : fams) {
    FiberReport a = fiber_analysis(pred(f), pred(g), d, "y", "x");
    FiberReport b = fiber_analysis(pred(swap_xy(f)), pred(swap_xy(g)), d, "x", "y");
    REQUIRE(a.fibers.size() == b.fibers.size());
    for (std::size_t i = 0; i < a.fibers.size(); ++i) {
      CHECK(a.fibers[i].ext_f == b.fibers[i].ext_f);
      CHECK(a.fibers[i].ext_g == b.fibers[i].ext_g);
      CHECK(a.fibers[i].verdict == b.fibers[i].verdict);
    }
    CHECK(a.family == b.family);
  }
  // x+y<8, x+y>8 is itself symmetric
  FiberReport by_y = fiber_analysis(pred("x+y<8"), pred("x+y>8"), d, "y", "x");
  FiberReport by_x = fiber_analysis(pred("x+y<8"), pred("x+y>8"), d, "x", "y");
  for (std::size_t i = 0; i < by_y.fibers.size(); ++i) CHECK(by_y.fibers[i].verdict == by_x.fibers[i].verdict);
}

TEST_CASE("fiber verdicts are stable from N=20 to N=100") {
  for (const auto& [f, g] : std::vector<std::pair<std::string, std::string>>{{"x+y<=8", "y=12"}, {"x+y<8", "x+y>8"}}) {
    FiberReport small = fiber_analysis(pred(f), pred(g), Domain(1, 20));
    FiberReport large = fiber_analysis(pred(f), pred(g), Domain(1, 100));
    CHECK(small.family == large.family);
    for (std::uint64_t n : {7, 9, 12}) CHECK(small.at(n).verdict == large.at(n).verdict);
  }
}

TEST_CASE("fiber extensions agree with direct enumeration") {
  Domain d(1, 25);
  IntPredicate f = pred("x+y<=8"), g = pred("x+4>y");
  FiberReport r = fiber_analysis(f, g, d);
  for (const auto& fib : r.fibers) {
    CHECK(fib.ext_f == enumerate(f, d, fib.n));
    CHECK(fib.ext_g == enumerate(g, d, fib.n));
  }
}

TEST_CASE("expand_over_domain") {
  Formula e = expand_over_domain(parse("exists x (x<2)", Grammar::Arith), Domain(1, 2));
  CHECK(render(clear_origins(e)) == "1<2 | 2<2");
  CHECK(atom_template(e.left().atom()) == "x<2");
}
