#include "trel/arith.hpp"

#include <algorithm>
#include <iterator>

#include "trel/oracle.hpp"

namespace trel {

Domain::Domain(std::uint64_t lo, std::uint64_t hi) : lower(lo), upper(hi) {
  if (lo > hi) throw std::invalid_argument("domain lower bound exceeds upper bound");
}

std::vector<Term> Domain::numerals() const {
  std::vector<Term> out;
  for (std::uint64_t n = lower; n <= upper; ++n) out.push_back(Term::numeral(n));
  return out;
}

std::string_view shape_name(Shape s) {
  switch (s) {
    case Shape::NegExistsAnd: return "NegExistsAnd";
    case Shape::NegExistsOr: return "NegExistsOr";
    case Shape::ExistsAnd: return "ExistsAnd";
  }
  return "?";
}

std::string_view instance_name(InstanceVerdict v) {
  switch (v) {
    case InstanceVerdict::TRelevant: return "TRelevant";
    case InstanceVerdict::RedundantF: return "RedundantF";
    case InstanceVerdict::RedundantG: return "RedundantG";
    case InstanceVerdict::TwoSubsets: return "TwoSubsets";
    case InstanceVerdict::False: return "False";
    case InstanceVerdict::Satisfied: return "Satisfied";
    case InstanceVerdict::Unspecified: return "Unspecified";
  }
  return "?";
}

std::string_view family_name(FamilyVerdict v) {
  return v == FamilyVerdict::TRelevant ? "TRelevant" : "NotTRelevant";
}

namespace {

std::uint64_t value_of(const IntTerm& t, const Assignment& a) {
  std::uint64_t sum = 0;
  for (const auto& s : t.summands) {
    if (s.kind == Term::Kind::Numeral) {
      sum += s.value;
      continue;
    }
    auto it = a.find(s.name);
    if (it == a.end()) throw UnboundVariable(s.name.empty() ? s.str() : s.name);
    sum += it->second;
  }
  return sum;
}

std::vector<std::uint64_t> intersect(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IntPredicate literal_predicate(const Formula& lit, bool& flipped) {
  bool neg = lit.is(Op::Not);
  const Formula& a = neg ? lit.sub() : lit;
  if (!a.is(Op::Atomic) || !std::holds_alternative<Comparison>(a.atom()))
    throw ShapeMismatch("expected an arithmetic comparison literal");
  IntPredicate p = std::get<Comparison>(a.atom());
  if (neg) {
    p.rel = complement(p.rel);
    p.origin.clear();
    flipped = true;
  }
  return p;
}

}  // namespace

bool eval_predicate(const IntPredicate& p, const Assignment& a) {
  return holds(p.rel, value_of(p.lhs, a), value_of(p.rhs, a));
}

std::vector<Assignment> extension(const IntPredicate& p, const Domain& d) {
  std::set<std::string> vs = free_variables(Atom{p});
  std::vector<std::string> vars(vs.begin(), vs.end());
  std::vector<Assignment> out;
  Assignment a;
  for (const auto& v : vars) a[v] = d.lower;
  for (;;) {
    if (eval_predicate(p, a)) out.push_back(a);
    // odometer, last variable fastest
    std::size_t i = vars.size();
    while (i > 0 && a[vars[i - 1]] == d.upper) a[vars[--i]] = d.lower;
    if (i == 0) break;
    ++a[vars[i - 1]];
  }
  return out;
}

std::vector<std::uint64_t> extension_over(const IntPredicate& p, const std::string& var, const Domain& d) {
  for (const auto& v : free_variables(Atom{p}))
    if (v != var) throw UnboundVariable(v);
  std::vector<std::uint64_t> out;
  Assignment a;
  for (std::uint64_t n = d.lower; n <= d.upper; ++n) {
    a[var] = n;
    if (eval_predicate(p, a)) out.push_back(n);
  }
  return out;
}

MonadicResult classify_monadic(Shape shape, const IntPredicate& f, const IntPredicate& g, const Domain& d,
                               const std::string& var) {
  for (const auto* p : {&f, &g})
    for (const auto& v : free_variables(Atom{*p}))
      if (v != var) throw ShapeMismatch("predicate " + render(Atom{*p}) + " is not over " + var + " alone");
  MonadicResult r;
  r.ext_f = extension_over(f, var, d);
  r.ext_g = extension_over(g, var, d);
  auto touches = [&](const std::vector<std::uint64_t>& e) { return !e.empty() && e.back() == d.upper; };
  r.boundary_sensitive = touches(r.ext_f) || touches(r.ext_g);
  r.presuppositions_hold = !r.ext_f.empty() && !r.ext_g.empty();
  auto both = intersect(r.ext_f, r.ext_g);
  if (!both.empty()) r.witness = both.front();

  switch (shape) {
    case Shape::NegExistsAnd:
      r.truth = both.empty();
      if (!r.truth)
        r.verdict = InstanceVerdict::False;
      else if (r.presuppositions_hold)
        r.verdict = InstanceVerdict::TRelevant;
      else if (r.ext_f.empty() && r.ext_g.empty())
        r.verdict = InstanceVerdict::TwoSubsets;
      else if (r.ext_f.empty())
        r.verdict = InstanceVerdict::RedundantG;
      else
        r.verdict = InstanceVerdict::RedundantF;
      break;
    case Shape::NegExistsOr:
      r.truth = r.ext_f.empty() && r.ext_g.empty();
      r.verdict = r.truth ? InstanceVerdict::Unspecified : InstanceVerdict::False;
      break;
    case Shape::ExistsAnd:
      r.truth = !both.empty();
      r.verdict = r.truth ? InstanceVerdict::Satisfied : InstanceVerdict::False;
      break;
  }
  return r;
}

const Fiber& FiberReport::at(std::uint64_t n) const {
  for (const auto& f : fibers)
    if (f.n == n) return f;
  throw OutOfDomain(n);
}

std::vector<std::uint64_t> FiberReport::indices(InstanceVerdict v) const {
  std::vector<std::uint64_t> out;
  for (const auto& f : fibers)
    if (f.verdict == v) out.push_back(f.n);
  return out;
}

FamilyVerdict family_verdict(const std::vector<Fiber>& fibers) {
  bool any = std::any_of(fibers.begin(), fibers.end(),
                         [](const Fiber& f) { return f.verdict == InstanceVerdict::TRelevant; });
  return any ? FamilyVerdict::TRelevant : FamilyVerdict::NotTRelevant;
}

FiberReport fiber_analysis(const IntPredicate& f, const IntPredicate& g, const Domain& d,
                           const std::string& fixed, const std::string& free) {
  FiberReport rep{fixed, free, {}, FamilyVerdict::NotTRelevant, false};
  for (std::uint64_t n = d.lower; n <= d.upper; ++n) {
    auto fn = std::get<Comparison>(substitute(Atom{f}, fixed, Term::numeral(n)));
    auto gn = std::get<Comparison>(substitute(Atom{g}, fixed, Term::numeral(n)));
    MonadicResult m = classify_monadic(Shape::NegExistsAnd, fn, gn, d, free);
    rep.boundary_sensitive = rep.boundary_sensitive || m.boundary_sensitive;
    rep.fibers.push_back({n, std::move(m.ext_f), std::move(m.ext_g), m.verdict});
  }
  rep.family = family_verdict(rep.fibers);
  return rep;
}

Formula ground_instance(const IntPredicate& f, const IntPredicate& g, std::uint64_t n, const Domain& d,
                        const std::string& fixed, const std::string& free) {
  if (!d.contains(n)) throw OutOfDomain(n);
  Formula body = Formula::conj(Formula::atomic(f), Formula::atomic(g));
  body = clear_origins(substitute(body, fixed, Term::numeral(n)));
  return Formula::negation(Formula::exists(free, body));
}

ArithSentence decompose(const Formula& sentence) {
  ArithSentence s;
  bool negated = false;
  const Formula* q = &sentence;
  if (q->is(Op::Not)) {
    negated = true;
    q = &q->sub();
  }
  if (!q->is_quantifier()) throw ShapeMismatch("expected a quantified sentence");
  const Op kind = q->op();
  while (q->is(kind)) {
    s.vars.push_back(q->var());
    q = &q->sub();
  }
  if (!(q->is(Op::And) || q->is(Op::Or))) throw ShapeMismatch("expected a conjunction or disjunction of two comparisons");
  bool conjunctive = q->is(Op::And);
  bool flipped = false;
  s.f = literal_predicate(q->left(), flipped);
  s.g = literal_predicate(q->right(), flipped);
  if (kind == Op::ForAll) {
    // ∀v B = ∼∃v∼B
    negated = !negated;
    conjunctive = !conjunctive;
    s.f.rel = complement(s.f.rel);
    s.g.rel = complement(s.g.rel);
    s.f.origin.clear();
    s.g.origin.clear();
    flipped = true;
  }
  s.sign_flip_applied = flipped;
  if (negated && conjunctive)
    s.shape = Shape::NegExistsAnd;
  else if (negated)
    s.shape = Shape::NegExistsOr;
  else if (conjunctive)
    s.shape = Shape::ExistsAnd;
  else
    throw ShapeMismatch("∃(F ∨ G) has no arithmetic classification");
  return s;
}

std::string render_grid(const IntPredicate& f, const IntPredicate& g, const Domain& d, const std::string& col_var,
                        const std::string& row_var) {
  const std::size_t width = std::to_string(d.upper).size();
  std::string out;
  Assignment a;
  for (std::uint64_t y = d.upper + 1; y-- > d.lower;) {
    a[row_var] = y;
    std::string label = std::to_string(y);
    out += std::string(width - label.size(), ' ') + label + " ";
    for (std::uint64_t x = d.lower; x <= d.upper; ++x) {
      a[col_var] = x;
      bool in_f = eval_predicate(f, a), in_g = eval_predicate(g, a);
      out += in_f && in_g ? '*' : in_f ? 'F' : in_g ? 'G' : '.';
    }
    out += '\n';
  }
  return out;
}

Formula expand_over_domain(const Formula& f, const Domain& d) {
  std::vector<Term> elems = d.numerals();
  return ground_expand(f, elems);
}

}  // namespace trel
