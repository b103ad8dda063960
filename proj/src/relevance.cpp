#include "trel/relevance.hpp"

#include <algorithm>
#include <map>

namespace trel {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotValid: return "NotValid";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::ValidNotTRelevant: return "ValidNotTRelevant";
    case Verdict::ValidTRelevant: return "ValidTRelevant";
  }
  return "?";
}

std::string_view prototype_name(PrototypeTag t) {
  switch (t) {
    case PrototypeTag::Case1_1: return "Case1_1";
    case PrototypeTag::Case1_2: return "Case1_2";
    case PrototypeTag::Case2_1: return "Case2_1";
    case PrototypeTag::Case2_2: return "Case2_2";
    case PrototypeTag::NotPrototypical: return "NotPrototypical";
  }
  return "?";
}

nlohmann::ordered_json to_json(const RelevanceReport& r) {
  nlohmann::ordered_json j;
  j["verdict"] = verdict_name(r.verdict);
  j["selfContradicted"] = r.self_contradicted;
  j["necessary"] = r.necessary;
  j["redundant"] = r.redundant;
  j["minimalSubsets"] = nlohmann::ordered_json::array();
  for (const auto& s : r.minimal_subsets) j["minimalSubsets"].push_back(s);
  j["branches"] = nlohmann::ordered_json::array();
  for (const auto& b : r.branches)
    j["branches"].push_back({{"id", b.id}, {"status", status_name(b.status)}, {"pairs", b.pairs}});
  return j;
}

TemplateSet self_contradicted_atoms(const SaturatedTree& t) {
  TemplateSet out;
  for (const auto& b : t.branches())
    for (const auto& [_, templates] : b.credits) out.insert(templates.begin(), templates.end());
  return out;
}

namespace {

// A source atom that never reaches a branch and, on every branch, names the
// same key as an atom that does.
bool aliased(const SaturatedTree& t, const std::string& templ, const std::map<std::string, Atom>& present) {
  Atom atom;
  try {
    Formula f = parse(templ);
    if (!f.is(Op::Atomic)) return false;
    atom = f.atom();
  } catch (const ParseError&) {
    return false;
  }
  for (const auto& b : t.branches()) {
    AtomKey k = key_of(atom, b.classes);
    bool hit = std::any_of(present.begin(), present.end(),
                           [&](const auto& p) { return key_of(p.second, b.classes) == k; });
    if (!hit) return false;
  }
  return !t.branches().empty();
}

}  // namespace

TemplateSet relevance_universe(const SaturatedTree& t) {
  std::map<std::string, Atom> present;
  for (const auto& b : t.branches())
    for (const auto& l : b.literals) present.emplace(l.templ, l.atom);
  TemplateSet u;
  for (const auto& a : atoms_of(t.tableau().sources(), AtomFilter::NoIdentity))
    if (present.contains(a) || !aliased(t, a, present)) u.insert(a);
  u.merge(self_contradicted_atoms(t));
  return u;
}

bool necessity_test(const SaturatedTree& t, const std::string& atom) {
  if (!t.all_closed()) throw NotClosed();
  TableauConfig cfg = t.config();
  cfg.suppressed.insert(atom);
  SaturatedTree rerun = saturate(t.tableau().restarted(cfg));
  return !rerun.all_closed();
}

bool sufficient(const SaturatedTree& t, const TemplateSet& active) {
  TemplateSet off = t.config().suppressed;
  for (const auto& a : relevance_universe(t))
    if (!active.contains(a)) off.insert(a);
  for (const auto& b : t.branches())
    if (compute_closure(b.literals, b.names, off).pairs.empty()) return false;
  return true;
}

std::vector<TemplateSet> minimal_relevant_subsets(const SaturatedTree& t) {
  if (!t.all_closed()) throw NotClosed();
  TemplateSet universe = relevance_universe(t);
  std::vector<std::string> atoms(universe.begin(), universe.end());
  const std::size_t n = atoms.size();
  if (n > 20) throw std::length_error("hitting-set enumeration is capped at 20 atoms");

  TemplateSet base = t.config().suppressed;
  auto closes = [&](const std::vector<bool>& in) {
    TemplateSet off = base;
    for (std::size_t i = 0; i < n; ++i)
      if (!in[i]) off.insert(atoms[i]);
    for (const auto& b : t.branches())
      if (compute_closure(b.literals, b.names, off).pairs.empty()) return false;
    return true;
  };

  std::vector<std::vector<std::size_t>> found;
  std::vector<TemplateSet> out;
  for (std::size_t k = 0; k <= n; ++k) {
    // Index combinations of size k in lexicographic order.
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      bool covers_found = std::any_of(found.begin(), found.end(), [&](const auto& f) {
        return std::includes(idx.begin(), idx.end(), f.begin(), f.end());
      });
      if (!covers_found) {
        std::vector<bool> in(n, false);
        for (auto i : idx) in[i] = true;
        if (closes(in)) {
          found.push_back(idx);
          TemplateSet s;
          for (auto i : idx) s.insert(atoms[i]);
          out.push_back(std::move(s));
        }
      }
      // next combination
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

RelevanceReport verdict(const SaturatedTree& t) {
  RelevanceReport r;
  for (const auto& b : t.branches()) {
    BranchReport br{b.id, b.status, {}};
    for (const auto& k : b.closure_pairs) br.pairs.push_back(k.text);
    r.branches.push_back(std::move(br));
  }
  r.self_contradicted = self_contradicted_atoms(t);
  r.universe = relevance_universe(t);
  if (t.any_open()) {
    r.verdict = Verdict::NotValid;
    return r;
  }
  if (t.any_depth_limited()) {
    r.verdict = Verdict::Inconclusive;
    return r;
  }
  for (const auto& a : r.universe) {
    if (necessity_test(t, a))
      r.necessary.insert(a);
    else
      r.redundant.insert(a);
  }
  r.minimal_subsets = minimal_relevant_subsets(t);
  r.verdict = r.necessary == r.universe ? Verdict::ValidTRelevant : Verdict::ValidNotTRelevant;
  return r;
}

RelevanceReport prove(const Formula& goal, std::span<const Formula> premises, TableauConfig config) {
  return verdict(saturate(Tableau(goal, premises, std::move(config))));
}

// ---------------------------------------------------------------------------
// Prototypical forms

namespace {

bool monadic_literal(const Formula& f, const std::string& var) {
  const Formula& a = f.is(Op::Not) ? f.sub() : f;
  if (!a.is(Op::Atomic)) return false;
  auto vars = free_variables(a.atom());
  if (vars.size() > 1 || (vars.size() == 1 && !vars.contains(var))) return false;
  if (const auto* p = std::get_if<Predicate>(&a.atom()))
    return p->args.size() == 1 && p->args[0].is_variable();
  return std::holds_alternative<Comparison>(a.atom());
}

Formula flip(const Formula& lit) { return lit.is(Op::Not) ? lit.sub() : Formula::negation(lit); }

}  // namespace

PrototypeCase classify_prototype(const Formula& f) {
  PrototypeCase pc;
  bool negated = false;
  bool dualize = false;
  const Formula* q = &f;
  if (f.is(Op::Not) && f.sub().is_quantifier()) {
    negated = true;
    q = &f.sub();
  }
  if (q->is(Op::ForAll)) {
    // ∀xB = ∼∃x∼B and ∼∀xB = ∃x∼B
    negated = !negated;
    dualize = true;
  } else if (!q->is(Op::Exists)) {
    return pc;
  }
  const Formula& body = q->sub();
  if (!(body.is(Op::And) || body.is(Op::Or))) return pc;
  const std::string& var = q->var();
  if (!monadic_literal(body.left(), var) || !monadic_literal(body.right(), var)) return pc;

  bool conjunctive = body.is(Op::And);
  Formula first = body.left(), second = body.right();
  if (dualize) {
    conjunctive = !conjunctive;
    first = flip(first);
    second = flip(second);
  }
  pc.var = var;
  pc.sign_flip_applied = dualize || first.is(Op::Not) || second.is(Op::Not);
  pc.literals = {first, second};
  if (negated)
    pc.tag = conjunctive ? PrototypeTag::Case1_1 : PrototypeTag::Case1_2;
  else
    pc.tag = conjunctive ? PrototypeTag::Case2_1 : PrototypeTag::Case2_2;
  if (conjunctive) {
    pc.presuppositions = {Formula::exists(var, first), Formula::exists(var, second)};
    pc.presuppositions_auto_satisfied = !negated;
  }
  return pc;
}

}  // namespace trel
