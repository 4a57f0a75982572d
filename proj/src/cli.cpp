#include "relatio/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

#include "relatio/error.hpp"
#include "relatio/logic_file.hpp"
#include "relatio/props.hpp"

namespace relatio {

namespace {

constexpr int kErrorExit = 3;
constexpr std::size_t kDefaultDepth = 3;

struct ProveArgs {
  std::string logic;
  std::string companion = "base";
  std::string premises;
  std::string goal;
  std::optional<std::size_t> depth;
  std::size_t steps = Budget{}.steps;
  std::size_t max_premises = Limits{}.max_premises;
};

struct DumpArgs {
  std::string logic;
  std::string companion = "base";
  std::optional<std::size_t> depth;
  std::string variables;
  std::string formulas;
  std::size_t cap = 1;
  std::size_t steps = Budget{}.steps;
  std::string out = "-";
};

struct CheckArgs {
  std::vector<std::string> names;
  PropertyConfig cfg;
  bool no_hypotheses = false;
  std::string report;
  bool list = false;
};

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Hilbert: return "hilbert";
    case Backend::Matrix: return "matrix";
    case Backend::Extensional: return "extensional";
  }
  return "?";
}

int cmd_prove(const ProveArgs& a, std::ostream& out) {
  // The signature is needed before the query can be parsed.
  const auto path = resolve_logic_path(a.logic);
  const LogicDefinition def = load_logic(path);
  const auto premises = parse_list(a.premises, def.signature);
  const Formula goal = parse(a.goal, def.signature);
  std::vector<Formula> query = premises;
  query.push_back(goal);

  Session s;
  s.logic = def;
  s.directory = path.parent_path();
  s.budget.steps = a.steps;
  s.limits.max_premises = a.max_premises;
  s.universe = session_universe(def, a.depth.value_or(def.depth.value_or(kDefaultDepth)), query);
  const StructurePtr structure = build_structure(a.companion, s);

  const FormulaSet gamma(premises.begin(), premises.end());
  out << "logic: " << def.name << " (" << backend_name(def.backend) << ")\n";
  out << "structure: " << structure->describe() << "\n";
  if (def.backend != Backend::Matrix) out << "universe: " << s.universe.size() << " formulas\n";
  out << "query: " << print_set(gamma) << " |- " << print(goal) << "\n";
  const Verdict v = structure->entail(gamma, goal, s.budget);
  out << describe(v);
  if (v.refuted()) out << "scope: " << to_string(v.scope) << "\n";
  return v.proved() ? 0 : v.refuted() ? 1 : 2;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

int cmd_dump(const DumpArgs& a, std::ostream& out, std::ostream& err) {
  const auto path = resolve_logic_path(a.logic);
  Session s;
  s.logic = load_logic(path);
  s.directory = path.parent_path();
  s.budget.steps = a.steps;
  if (!a.variables.empty()) {
    s.logic.variables = split_names(a.variables);
    for (const auto& v : s.logic.variables)
      if (!is_variable_token(v)) throw Error(ErrorCode::InvalidDefinition, "'" + v + "' is not a variable name");
  }
  if (!a.formulas.empty()) {
    Universe u;
    for (const auto& f : parse_list(a.formulas, s.logic.signature)) u.insert_with_subformulas(f);
    if (s.logic.universe)
      for (const auto& f : *s.logic.universe) u.insert_with_subformulas(f);
    s.universe = std::move(u);
  } else {
    s.universe = session_universe(s.logic, a.depth.value_or(s.logic.depth.value_or(kDefaultDepth)), {});
  }
  const StructurePtr structure = build_structure(a.companion, s);
  const auto start = std::chrono::steady_clock::now();
  const TableDump table = dump(*structure, s.universe, a.cap, s.budget, s.limits);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  const std::string text = write_table(table, s.logic.name + " " + a.companion, s.logic.signature, s.logic.variables);
  if (a.out == "-") {
    out << text;
  } else {
    std::ofstream file(a.out, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot write " + a.out);
    file << text;
    out << "wrote " << table.pair_count() << " pairs over " << s.universe.size() << " formulas (cap " << a.cap
        << ") to " << a.out << "\n";
  }
  err << "dump: " << structure->describe() << ", " << ms << " ms" << (table.complete() ? "" : ", incomplete")
      << "\n";
  return table.complete() ? 0 : 2;
}

std::string report_block(const PropertyReport& r) {
  std::ostringstream out;
  out << "property " << r.name << "\n";
  out << "  result " << to_string(r.result) << "\n";
  out << "  instances " << r.instances_run << "\n";
  out << "  seed " << r.config.seed << "\n";
  out << "  universe " << r.config.universe_size << "\n";
  out << "  cap " << r.config.premise_cap << "\n";
  out << "  hypotheses " << (r.config.enforce_hypotheses ? "enforced" : "ignored") << "\n";
  for (const auto& [k, v] : r.counters) out << "  counter " << v << " " << k << "\n";
  if (!r.detail.empty()) out << "  detail " << r.detail << "\n";
  if (!r.witness.empty()) {
    out << "  witness\n";
    std::istringstream lines(r.witness);
    for (std::string line; std::getline(lines, line);) out << "    " << line << "\n";
    out << "  end\n";
  }
  out << "end\n";
  return out.str();
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  if (a.list) {
    for (const auto& p : list_properties()) out << p.name << "  " << p.law << "\n";
    return 0;
  }
  std::vector<std::string> names;
  for (const auto& n : a.names) {
    if (n == "all") {
      for (const auto& p : list_properties())
        if (p.name != "companion_idempotent") names.push_back(p.name);
    } else {
      if (!has_property(n)) throw Error(ErrorCode::UnknownProperty, "no property named '" + n + "'");
      names.push_back(n);
    }
  }
  PropertyConfig cfg = a.cfg;
  cfg.enforce_hypotheses = !a.no_hypotheses;
  std::size_t passed = 0, failed = 0, inconclusive = 0;
  std::string report = "relatio-report v1\n";
  for (const auto& name : names) {
    const auto start = std::chrono::steady_clock::now();
    const PropertyReport r = run_property(name, cfg);
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    out << name << ": " << to_string(r.result) << " (" << r.instances_run << " instances, " << ms << " ms)\n";
    for (const auto& [k, v] : r.counters) out << "  " << k << ": " << v << "\n";
    if (!r.detail.empty()) out << "  " << r.detail << "\n";
    if (!r.witness.empty()) {
      std::istringstream lines(r.witness);
      for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
    }
    report += report_block(r);
    switch (r.result) {
      case PropertyResult::Pass: ++passed; break;
      case PropertyResult::Fail: ++failed; break;
      case PropertyResult::Inconclusive: ++inconclusive; break;
    }
  }
  out << passed << " passed, " << failed << " failed, " << inconclusive << " inconclusive\n";
  if (!a.report.empty()) {
    std::ofstream file(a.report, std::ios::binary);
    if (!file) throw Error(ErrorCode::Io, "cannot write " + a.report);
    file << report;
  }
  return failed ? 1 : inconclusive ? 2 : 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Companions of logical structures: entailment queries, law checks and table dumps", "relatio"};
  app.require_subcommand(1);

  ProveArgs prove;
  auto* p = app.add_subcommand("prove", "Decide one entailment query");
  p->add_option("--logic", prove.logic, "Logic-definition file (bundled names are found too)")->required();
  p->add_option("--companion", prove.companion, "base | re | pi:<rel>,.. | rho:<rel> | prho:<rel>, chained with '/'");
  p->add_option("--premises", prove.premises, "Comma-separated premises");
  p->add_option("--goal", prove.goal, "Goal formula")->required();
  p->add_option("--depth", prove.depth, "Search-universe depth (default: the file's, else 3)");
  p->add_option("--steps", prove.steps, "Step cap for Hilbert search");
  p->add_option("--max-premises", prove.max_premises, "Largest premise set a companion sweeps");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Run named laws on generated instances");
  c->add_option("names", check.names, "Property names, or 'all'");
  c->add_option("--seed", check.cfg.seed, "Generator seed");
  c->add_option("--universe", check.cfg.universe_size, "Formulas per generated universe");
  c->add_option("--cap", check.cfg.premise_cap, "Premise-set cap");
  c->add_option("--instances", check.cfg.instances, "Instances per property");
  c->add_flag("--no-hypotheses", check.no_hypotheses, "Assert laws on every instance");
  c->add_flag("--force-violation", check.cfg.force_violation, "Generate instances that break the hypotheses");
  c->add_option("--report", check.report, "Write a relatio-report v1 file");
  c->add_flag("--list", check.list, "List the registered properties");

  DumpArgs dump_args;
  auto* d = app.add_subcommand("dump", "Write the entailment table of a structure");
  d->add_option("--logic", dump_args.logic, "Logic-definition file")->required();
  d->add_option("--companion", dump_args.companion, "Companion spec");
  d->add_option("--depth", dump_args.depth, "Universe depth (default: the file's, else 3)");
  d->add_option("--variables", dump_args.variables, "Comma-separated variables replacing the file's");
  d->add_option("--formulas", dump_args.formulas, "Comma-separated formulas spanning the universe instead");
  d->add_option("--cap", dump_args.cap, "Largest premise set listed");
  d->add_option("--steps", dump_args.steps, "Step cap for Hilbert search");
  d->add_option("--out", dump_args.out, "Output file, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sub->help();
    return kErrorExit;
  }

  try {
    if (p->parsed()) return cmd_prove(prove, out);
    if (c->parsed()) {
      if (check.names.empty() && !check.list) throw Error(ErrorCode::UnknownProperty, "name a property or 'all'");
      return cmd_check(check, out);
    }
    if (d->parsed()) return cmd_dump(dump_args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kErrorExit;
  }
  return kErrorExit;
}

}  // namespace relatio
