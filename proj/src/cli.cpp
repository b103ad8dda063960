#include "trel/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "trel/oracle.hpp"
#include "trel/relevance.hpp"
#include "trel/tableau.hpp"

namespace trel {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_natural(std::string_view s, const char* what) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size())
    throw std::invalid_argument(std::string("bad ") + what + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

Domain parse_domain(std::string_view text) {
  auto dots = text.find("..");
  if (dots == std::string_view::npos) throw std::invalid_argument("domain must look like lo..hi");
  return Domain(parse_natural(text.substr(0, dots), "domain bound"),
                parse_natural(text.substr(dots + 2), "domain bound"));
}

ProblemFile parse_problem(std::string_view text) {
  ProblemFile p;
  bool have_goal = false;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ProblemError("expected 'premise:', 'goal:' or 'domain:'", lineno);
    std::string_view key = trim(line.substr(0, colon));
    std::string value(trim(line.substr(colon + 1)));
    if (value.empty()) throw ProblemError("empty " + std::string(key), lineno);
    if (key == "premise") {
      p.premises.push_back(value);
    } else if (key == "goal") {
      if (have_goal) throw ProblemError("second goal", lineno);
      p.goal = value;
      have_goal = true;
    } else if (key == "domain") {
      try {
        p.domain = parse_domain(value);
      } catch (const std::invalid_argument& e) {
        throw ProblemError(e.what(), lineno);
      }
    } else {
      throw ProblemError("unknown key '" + std::string(key) + "'", lineno);
    }
  }
  if (!have_goal) throw ProblemError("no goal", lineno);
  return p;
}

namespace {

struct Options {
  std::string file;
  std::string expr;
  std::vector<std::string> premises;
  std::string domain;
  std::size_t max_depth = TableauConfig{}.max_depth;
  std::size_t gamma_rounds = TableauConfig{}.gamma_rounds;
  bool json = false;
  bool ascii = false;
  // render
  std::string format = "text";
  // arith
  std::string fix;
  bool fibers = false;
  bool grid = false;
  std::string var = "y";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Problem {
  std::vector<Formula> premises;
  Formula goal = Formula::atomic(Predicate{"P", {}});
  bool arith = false;
  Domain domain;
};

std::string read_input(const std::string& file) {
  if (file == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) throw UsageError("cannot read " + file);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Parse errors are reported with the offending text and a caret.
Formula parse_reported(Parser& parser, const std::string& text, const std::string& where) {
  try {
    return parser.parse(text);
  } catch (const ParseError& e) {
    std::ostringstream msg;
    msg << where << ": " << e.what() << "\n  " << text << "\n  "
        << std::string(std::min(e.position(), text.size()), ' ') << "^";
    throw UsageError(msg.str());
  }
}

Problem load_problem(const Options& o) {
  ProblemFile pf;
  if (!o.file.empty()) {
    if (!o.expr.empty()) throw UsageError("give either a problem file or --expr, not both");
    try {
      pf = parse_problem(read_input(o.file));
    } catch (const ProblemError& e) {
      throw UsageError(o.file + ": " + e.what());
    }
  } else if (!o.expr.empty()) {
    pf.goal = o.expr;
  } else {
    throw UsageError("no problem given (file argument or --expr)");
  }
  pf.premises.insert(pf.premises.end(), o.premises.begin(), o.premises.end());

  Problem p;
  Parser parser;
  for (const auto& s : pf.premises) {
    p.premises.push_back(parse_reported(parser, s, "premise"));
    p.arith = p.arith || parser.last_grammar() == Grammar::Arith;
  }
  p.goal = parse_reported(parser, pf.goal, "goal");
  p.arith = p.arith || parser.last_grammar() == Grammar::Arith;

  if (!o.domain.empty())
    p.domain = parse_domain(o.domain);
  else if (pf.domain)
    p.domain = *pf.domain;
  if (p.arith) {
    for (auto& f : p.premises) f = expand_over_domain(f, p.domain);
    p.goal = expand_over_domain(p.goal, p.domain);
  }
  return p;
}

TableauConfig config_of(const Options& o) {
  TableauConfig c;
  c.max_depth = o.max_depth;
  c.gamma_rounds = o.gamma_rounds;
  return c;
}

std::string join(const TemplateSet& s, std::string_view sep = " ") {
  std::string out;
  for (const auto& a : s) {
    if (!out.empty()) out += sep;
    out += a;
  }
  return out;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::ValidTRelevant: return kExitTRelevant;
    case Verdict::ValidNotTRelevant: return kExitNotTRelevant;
    case Verdict::NotValid: return kExitNotValid;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitUsage;
}

int cmd_prove(const Options& o, std::ostream& out) {
  Problem p = load_problem(o);
  SaturatedTree tree = saturate(Tableau(p.goal, p.premises, config_of(o)));
  RelevanceReport r = verdict(tree);
  if (o.json) {
    out << to_json(r).dump(2) << "\n";
    return exit_code(r.verdict);
  }
  std::size_t open = 0, limited = 0;
  for (const auto& b : r.branches) {
    open += b.status == BranchStatus::OpenSaturated;
    limited += b.status == BranchStatus::DepthLimited;
  }
  switch (r.verdict) {
    case Verdict::ValidTRelevant:
      out << "valid, t-relevant; self-contradicted: " << join(r.self_contradicted) << "\n";
      break;
    case Verdict::ValidNotTRelevant:
      out << "valid, not t-relevant; redundant: " << join(r.redundant)
          << "; self-contradicted: " << join(r.self_contradicted) << "\n";
      break;
    case Verdict::NotValid:
      out << "not valid; open branches: " << open << "\n";
      return exit_code(r.verdict);
    case Verdict::Inconclusive:
      out << "inconclusive; depth-limited branches: " << limited << "\n";
      return exit_code(r.verdict);
  }
  out << "necessary: " << join(r.necessary) << "\n";
  out << "minimal subsets:";
  for (const auto& s : r.minimal_subsets) out << " {" << join(s, ", ") << "}";
  out << "\n";
  return exit_code(r.verdict);
}

int cmd_render(const Options& o, std::ostream& out) {
  Problem p = load_problem(o);
  TreeFormat format;
  if (o.format == "text")
    format = TreeFormat::Text;
  else if (o.format == "dot")
    format = TreeFormat::Dot;
  else
    throw UsageError("--format must be text or dot");
  SaturatedTree tree = saturate(Tableau(p.goal, p.premises, config_of(o)));
  out << render_tree(tree.tableau(), format, o.ascii ? Style::Ascii : Style::Unicode);
  return kExitTRelevant;
}

// "1..6, 9"
std::string ranges(const std::vector<std::uint64_t>& xs, bool ascii) {
  if (xs.empty()) return ascii ? "{}" : "∅";
  std::string out;
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j + 1 < xs.size() && xs[j + 1] == xs[j] + 1) ++j;
    if (!out.empty()) out += ", ";
    out += std::to_string(xs[i]);
    if (j > i) out += ".." + std::to_string(xs[j]);
    i = j + 1;
  }
  return out;
}

std::string redundant_note(InstanceVerdict v, const IntPredicate& f, const IntPredicate& g, Style st) {
  if (v == InstanceVerdict::RedundantF) return " (" + render(Atom{f}, st) + " is redundant)";
  if (v == InstanceVerdict::RedundantG) return " (" + render(Atom{g}, st) + " is redundant)";
  if (v == InstanceVerdict::TwoSubsets)
    return " ({" + render(Atom{f}, st) + "} and {" + render(Atom{g}, st) + "})";
  return "";
}

nlohmann::ordered_json monadic_json(const MonadicResult& m) {
  nlohmann::ordered_json j;
  j["verdict"] = instance_name(m.verdict);
  j["truth"] = m.truth;
  j["extF"] = m.ext_f;
  j["extG"] = m.ext_g;
  j["presuppositionsHold"] = m.presuppositions_hold;
  j["boundarySensitive"] = m.boundary_sensitive;
  if (m.witness) j["witness"] = *m.witness;
  return j;
}

int cmd_arith(const Options& o, std::ostream& out) {
  if (o.expr.empty()) throw UsageError("arith needs a sentence");
  Parser parser(Grammar::Arith);
  Formula f = parse_reported(parser, o.expr, "sentence");
  ArithSentence s = decompose(f);
  Domain d;
  if (!o.domain.empty()) d = parse_domain(o.domain);
  const Style st = o.ascii ? Style::Ascii : Style::Unicode;

  if (s.vars.size() == 1) {
    if (!o.fix.empty() || o.fibers || o.grid) throw UsageError("--fix, --fibers and --grid need two variables");
    MonadicResult m = classify_monadic(s.shape, s.f, s.g, d, s.vars[0]);
    if (o.json) {
      auto j = monadic_json(m);
      j["shape"] = shape_name(s.shape);
      j["signFlipApplied"] = s.sign_flip_applied;
      out << j.dump(2) << "\n";
      return 0;
    }
    out << "shape: " << shape_name(s.shape) << (s.sign_flip_applied ? " (after sign flip)" : "") << "\n";
    out << "F = " << render(Atom{s.f}, st) << ": " << ranges(m.ext_f, o.ascii) << "\n";
    out << "G = " << render(Atom{s.g}, st) << ": " << ranges(m.ext_g, o.ascii) << "\n";
    out << "truth: " << (m.truth ? "true" : "false");
    if (m.witness && s.shape == Shape::ExistsAnd) out << " (at " << s.vars[0] << "=" << *m.witness << ")";
    out << "\n";
    out << "verdict: " << instance_name(m.verdict) << redundant_note(m.verdict, s.f, s.g, st) << "\n";
    if (m.boundary_sensitive) out << "note: an extension reaches the upper bound " << d.upper << "\n";
    return 0;
  }
  if (s.vars.size() != 2) throw ShapeMismatch("expected one or two quantified variables");
  if (s.shape != Shape::NegExistsAnd) throw ShapeMismatch("fiber analysis needs the shape ~exists x exists y (F & G)");

  std::string fixed = o.var, value;
  if (!o.fix.empty()) {
    auto eq = o.fix.find('=');
    if (eq == std::string::npos) throw UsageError("--fix must look like y=N");
    fixed = std::string(trim(std::string_view(o.fix).substr(0, eq)));
    value = o.fix.substr(eq + 1);
  }
  if (fixed != s.vars[0] && fixed != s.vars[1]) throw UsageError("variable '" + fixed + "' is not quantified");
  const std::string free = fixed == s.vars[0] ? s.vars[1] : s.vars[0];

  if (!o.fix.empty()) {
    std::uint64_t n = parse_natural(value, "fiber index");
    Formula inst = ground_instance(s.f, s.g, n, d, fixed, free);
    const Formula& body = inst.sub().sub();
    IntPredicate fn = std::get<Comparison>(body.left().atom());
    IntPredicate gn = std::get<Comparison>(body.right().atom());
    MonadicResult m = classify_monadic(Shape::NegExistsAnd, fn, gn, d, free);
    if (o.json) {
      auto j = monadic_json(m);
      j["instance"] = render(inst, Style::Ascii);
      out << j.dump(2) << "\n";
      return 0;
    }
    out << render(inst, st) << "\n";
    out << "F: " << ranges(m.ext_f, o.ascii) << "\n";
    out << "G: " << ranges(m.ext_g, o.ascii) << "\n";
    out << "verdict: " << instance_name(m.verdict) << redundant_note(m.verdict, fn, gn, st) << "\n";
    return 0;
  }
  if (o.grid) {
    out << render_grid(s.f, s.g, d, free, fixed);
    if (!o.fibers) return 0;
  }
  FiberReport rep = fiber_analysis(s.f, s.g, d, fixed, free);
  if (o.json) {
    nlohmann::ordered_json j;
    j["fixed"] = fixed;
    j["free"] = free;
    j["fibers"] = nlohmann::ordered_json::array();
    for (const auto& fb : rep.fibers)
      j["fibers"].push_back({{"n", fb.n}, {"extF", fb.ext_f}, {"extG", fb.ext_g}, {"verdict", instance_name(fb.verdict)}});
    j["family"] = family_name(rep.family);
    j["boundarySensitive"] = rep.boundary_sensitive;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << fixed << "\tF\tG\tverdict\n";
  for (const auto& fb : rep.fibers)
    out << fb.n << "\t" << ranges(fb.ext_f, o.ascii) << "\t" << ranges(fb.ext_g, o.ascii) << "\t"
        << instance_name(fb.verdict) << "\n";
  for (auto v : {InstanceVerdict::TRelevant, InstanceVerdict::RedundantF, InstanceVerdict::RedundantG,
                 InstanceVerdict::TwoSubsets, InstanceVerdict::False}) {
    auto ix = rep.indices(v);
    if (!ix.empty()) out << instance_name(v) << ": " << ranges(ix, true) << "\n";
  }
  out << "family: " << family_name(rep.family) << "\n";
  if (rep.boundary_sensitive) out << "note: an extension reaches the upper bound " << d.upper << "\n";
  return 0;
}

void add_common(CLI::App* c, Options& o) {
  c->add_option("--max-depth", o.max_depth, "Rule applications per branch")->check(CLI::PositiveNumber);
  c->add_option("--gamma-rounds", o.gamma_rounds, "Instantiation rounds per universal")->check(CLI::PositiveNumber);
  c->add_option("--domain", o.domain, "Arithmetic domain lo..hi");
  c->add_flag("--ascii", o.ascii, "ASCII output");
}

void add_problem(CLI::App* c, Options& o) {
  c->add_option("file", o.file, "Problem file ('-' for stdin)");
  c->add_option("-e,--expr", o.expr, "Goal formula");
  c->add_option("-p,--premise", o.premises, "Premise formula (repeatable)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tableau prover with truth-relevance analysis", "trel"};
  app.require_subcommand(1);
  Options o;

  auto* prove = app.add_subcommand("prove", "Decide validity and t-relevance");
  add_problem(prove, o);
  add_common(prove, o);
  prove->add_flag("--json", o.json, "Print the report as JSON");

  auto* render_cmd = app.add_subcommand("render", "Print the saturated tree");
  add_problem(render_cmd, o);
  add_common(render_cmd, o);
  render_cmd->add_option("--format", o.format, "text or dot");

  auto* arith = app.add_subcommand("arith", "Classify an arithmetic sentence");
  arith->add_option("sentence", o.expr, "Sentence in the arithmetic grammar")->required();
  arith->add_option("--fix", o.fix, "Fix one variable, e.g. y=7");
  arith->add_flag("--fibers", o.fibers, "Fiber table and family verdict");
  arith->add_flag("--grid", o.grid, "Character grid of the extensions");
  arith->add_option("--var", o.var, "Variable to fix for fibers");
  arith->add_option("--domain", o.domain, "Domain lo..hi");
  arith->add_flag("--json", o.json, "Print JSON");
  arith->add_flag("--ascii", o.ascii, "ASCII output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (prove->parsed()) return cmd_prove(o, out);
    if (render_cmd->parsed()) return cmd_render(o, out);
    return cmd_arith(o, out);
  } catch (const UsageError& e) {
    err << "trel: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "trel: " << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << "trel: " << e.what() << "\n";
  } catch (const std::length_error& e) {
    err << "trel: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace trel
