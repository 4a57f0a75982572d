#include "relatio/logic_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

#include "relatio/error.hpp"
#include "relatio/samples.hpp"

#ifndef RELATIO_LOGIC_DIR
#define RELATIO_LOGIC_DIR "logics"
#endif

namespace relatio {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// One meaningful line: comment stripped, trimmed, with its 1-based position.
struct Line {
  std::size_t number = 0;
  std::size_t column = 1;
  std::string text;

  std::string key() const { return text.substr(0, text.find_first_of(" \t")); }
  std::string_view rest() const {
    const auto k = key().size();
    return trim(std::string_view(text).substr(k));
  }
  std::size_t rest_column() const {
    const auto k = key().size();
    std::size_t i = k;
    while (i < text.size() && is_space(text[i])) ++i;
    return column + i;
  }
};

[[noreturn]] void fail_at(const Line& line, const std::string& message, std::size_t column = 0) {
  throw SyntaxError(ErrorCode::InvalidDefinition, message, line.number, column ? column : line.column);
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::size_t lead = 0;
    while (lead < raw.size() && is_space(raw[lead])) ++lead;
    const auto body = trim(raw);
    if (!body.empty()) out.push_back({number, lead + 1, std::string(body)});
    if (text.empty()) break;
  }
  return out;
}

// Formula text at a known position; parse errors are moved to file
// coordinates.
template <typename Fn>
auto at_position(const Line& line, std::size_t column, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.code(), e.detail(), line.number, column + e.column() - 1);
  } catch (const Error& e) {
    throw SyntaxError(e.code(), e.what(), line.number, column);
  }
}

Formula formula_at(const Line& line, std::string_view text, std::size_t column, const Signature& sig) {
  return at_position(line, column, [&] { return parse(text, sig); });
}

// Lines between a block opener and its "end", with nested blocks kept intact.
std::vector<Line> block_body(const std::vector<Line>& lines, std::size_t& i, const std::vector<std::string>& openers) {
  const Line& open = lines[i];
  std::vector<Line> body;
  int depth = 0;
  for (++i; i < lines.size(); ++i) {
    const auto key = lines[i].key();
    if (lines[i].text == "end") {
      if (depth == 0) return body;
      --depth;
    } else if (std::find(openers.begin(), openers.end(), key) != openers.end() && lines[i].rest().empty()) {
      ++depth;
    }
    body.push_back(lines[i]);
  }
  fail_at(open, "block '" + open.key() + "' has no matching 'end'");
}

std::size_t parse_count(const Line& line, std::string_view text) {
  std::size_t value = 0;
  const std::string s(trim(text));
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail_at(line, "expected a number, got '" + s + "'");
  value = std::stoul(s);
  return value;
}

// "{f, g} |- h"
Pair parse_pair(const Line& line, const Universe& u, const Signature& sig) {
  const std::string& t = line.text;
  if (t.front() != '{') fail_at(line, "pairs are written '{premises} |- goal'");
  std::size_t close = std::string::npos;
  int depth = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] == '(') ++depth;
    else if (t[i] == ')') --depth;
    else if (t[i] == '}' && depth == 0) {
      close = i;
      break;
    }
  }
  if (close == std::string::npos) fail_at(line, "unclosed '{'");
  const std::string inner = t.substr(1, close - 1);
  auto premises = at_position(line, line.column + 1, [&] { return parse_list(inner, sig); });
  std::size_t j = close + 1;
  while (j < t.size() && is_space(t[j])) ++j;
  if (t.compare(j, 2, "|-") != 0) fail_at(line, "expected '|-'", line.column + j);
  j += 2;
  while (j < t.size() && is_space(t[j])) ++j;
  const Formula goal = formula_at(line, std::string_view(t).substr(j), line.column + j, sig);
  Pair p;
  for (const auto& f : premises) {
    const auto idx = u.index_of(f);
    if (!idx) throw SyntaxError(ErrorCode::OutOfUniverse, print(f) + " is not in the universe", line.number, line.column);
    p.premises.push_back(*idx);
  }
  std::sort(p.premises.begin(), p.premises.end());
  p.premises.erase(std::unique(p.premises.begin(), p.premises.end()), p.premises.end());
  const auto g = u.index_of(goal);
  if (!g) throw SyntaxError(ErrorCode::OutOfUniverse, print(goal) + " is not in the universe", line.number, line.column);
  p.conclusion = *g;
  return p;
}

void parse_signature(const std::vector<Line>& body, Signature& sig) {
  for (const auto& line : body) {
    const auto w = words(line.text);
    if (w.size() != 2) fail_at(line, "signature lines are '<symbol> <arity>'");
    if (w[0].find_first_of("#{}") != std::string::npos) fail_at(line, "symbol '" + w[0] + "' uses a reserved character");
    if (w[0] == "|-") fail_at(line, "'|-' is reserved");
    try {
      sig.add({w[0], parse_count(line, w[1])});
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      throw SyntaxError(e.code(), e.what(), line.number, line.column);
    }
  }
}

Matrix parse_matrix(const std::string& name, const std::vector<Line>& body, const Signature& sig, const Line& open) {
  std::vector<std::string> values, designated;
  std::vector<const Line*> tables;
  for (const auto& line : body) {
    const auto key = line.key();
    if (key == "values") values = words(line.rest());
    else if (key == "designated") designated = words(line.rest());
    else if (key == "table") tables.push_back(&line);
    else fail_at(line, "unknown matrix entry '" + key + "'");
  }
  auto guarded = [](const Line& line, auto&& fn) {
    try {
      return fn();
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      throw SyntaxError(e.code(), e.what(), line.number, line.column);
    }
  };
  Matrix m = guarded(open, [&] { return Matrix(name, values, designated); });
  for (const Line* line : tables) {
    auto w = words(line->rest());
    if (w.empty()) fail_at(*line, "table needs a connective");
    const auto arity = sig.arity(w[0]);
    if (!arity) fail_at(*line, "table for undeclared connective '" + w[0] + "'");
    const std::vector<std::string> outputs(w.begin() + 1, w.end());
    guarded(*line, [&] {
      m.add_table(w[0], *arity, outputs);
      return 0;
    });
  }
  for (const auto& c : sig.connectives())
    if (!m.has_table(c.symbol))
      throw SyntaxError(ErrorCode::MissingTable, "matrix has no table for '" + c.symbol + "'", open.number,
                        open.column);
  return m;
}

}  // namespace

LogicDefinition parse_logic(std::string_view text) {
  const auto lines = split_lines(text);
  LogicDefinition def;
  std::size_t backends = 0;
  std::vector<Line> schemata;
  const Line* schemata_open = nullptr;
  std::vector<Line> matrix_body;
  const Line* matrix_open = nullptr;
  std::vector<Line> ext_body;
  const Line* ext_open = nullptr;
  bool have_signature = false;

  const std::vector<std::string> openers = {"signature", "schemata", "matrix", "extensional", "universe", "pairs"};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const auto key = line.key();
    if (i == 0 && (line.text == "relatio-logic v1" || line.text == "relatio-table v1")) continue;
    if (key == "logic") {
      def.name = std::string(line.rest());
    } else if (key == "signature") {
      if (have_signature) fail_at(line, "second signature block");
      have_signature = true;
      parse_signature(block_body(lines, i, openers), def.signature);
    } else if (key == "variables") {
      for (const auto& v : words(line.rest())) {
        if (!is_variable_token(v)) fail_at(line, "'" + v + "' is not a variable name");
        def.variables.push_back(v);
      }
    } else if (key == "depth") {
      def.depth = parse_count(line, line.rest());
    } else if (key == "cap") {
      def.cap = parse_count(line, line.rest());
    } else if (key == "complete") {
      const auto v = std::string(line.rest());
      if (v != "yes" && v != "no") fail_at(line, "complete is 'yes' or 'no'");
      def.complete = v == "yes";
    } else if (key == "schemata" || key == "matrix" || key == "extensional") {
      if (!line.rest().empty()) fail_at(line, "'" + key + "' opens a block and takes no arguments");
      ++backends;
      if (backends > 1) fail_at(line, "a logic has exactly one backend block");
      auto body = block_body(lines, i, openers);
      if (key == "schemata") schemata = std::move(body), schemata_open = &line;
      else if (key == "matrix") matrix_body = std::move(body), matrix_open = &line;
      else ext_body = std::move(body), ext_open = &line;
    } else {
      fail_at(line, "unknown entry '" + key + "'");
    }
  }
  if (backends == 0) {
    const Line at{lines.empty() ? 1 : lines.back().number, 1, ""};
    fail_at(at, "no backend block (schemata, matrix or extensional)");
  }

  // Backends are read after the whole file so the signature may come later.
  if (schemata_open) {
    def.backend = Backend::Hilbert;
    std::vector<RuleSchema> rules;
    for (const auto& line : schemata)
      rules.push_back(at_position(line, line.column, [&] { return parse_schema(line.text, def.signature); }));
    def.hilbert = at_position(*schemata_open, schemata_open->column,
                              [&] { return HilbertStructure(def.signature, std::move(rules)); });
  } else if (matrix_open) {
    def.backend = Backend::Matrix;
    def.matrix = parse_matrix(def.name.empty() ? "matrix" : def.name, matrix_body, def.signature, *matrix_open);
  } else {
    def.backend = Backend::Extensional;
    std::vector<Formula> formulas;
    std::vector<const Line*> pair_lines;
    bool have_universe = false;
    for (std::size_t i = 0; i < ext_body.size(); ++i) {
      const Line& line = ext_body[i];
      if (line.text == "universe" || line.text == "pairs") {
        const bool universe = line.text == "universe";
        if (universe) have_universe = true;
        std::size_t j = i;
        int depth = 0;
        for (++j; j < ext_body.size(); ++j) {
          if (ext_body[j].text == "end") {
            if (depth == 0) break;
            --depth;
          }
          if (universe) formulas.push_back(formula_at(ext_body[j], ext_body[j].text, ext_body[j].column, def.signature));
          else pair_lines.push_back(&ext_body[j]);
        }
        if (j == ext_body.size()) fail_at(line, "block '" + line.text + "' has no matching 'end'");
        i = j;
      } else {
        fail_at(line, "extensional blocks hold 'universe' and 'pairs'");
      }
    }
    if (!have_universe) fail_at(*ext_open, "extensional block without a universe");
    def.universe = Universe(std::move(formulas));
    for (const Line* line : pair_lines) def.pairs.push_back(parse_pair(*line, *def.universe, def.signature));
  }
  return def;
}

LogicDefinition load_logic(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    auto def = parse_logic(buffer.str());
    if (def.name.empty()) def.name = path.stem().string();
    return def;
  } catch (const SyntaxError& e) {
    throw SyntaxError(e.code(), path.string() + ": " + e.detail(), e.line(), e.column());
  }
}

std::string write_table(const TableDump& table, const std::string& name, const Signature& sig,
                        const std::vector<std::string>& variables) {
  std::ostringstream out;
  out << "relatio-table v1\n";
  out << "logic " << name << "\n";
  out << "signature\n";
  for (const auto& c : sig.connectives()) out << "  " << c.symbol << " " << c.arity << "\n";
  out << "end\n";
  if (!variables.empty()) {
    out << "variables";
    for (const auto& v : variables) out << " " << v;
    out << "\n";
  }
  out << "cap " << table.cap() << "\n";
  out << "complete " << (table.complete() ? "yes" : "no") << "\n";
  out << "extensional\n  universe\n";
  for (const auto& f : table.universe()) out << "    " << print(f) << "\n";
  out << "  end\n  pairs\n";
  for (const auto& p : table.pairs())
    out << "    " << print_set(table.universe().formulas_of(p.premises)) << " |- " << print(table.universe()[p.conclusion])
        << "\n";
  out << "  end\nend\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Sessions

Universe session_universe(const LogicDefinition& logic, std::size_t depth, const std::vector<Formula>& extra) {
  Universe u;
  if (logic.universe) {
    u = *logic.universe;
  } else {
    u = Universe::up_to_depth(logic.signature, logic.variables, depth);
  }
  for (const auto& f : extra) u.insert_with_subformulas(f);
  return u;
}

StructurePtr base_structure(const Session& s) {
  switch (s.logic.backend) {
    case Backend::Hilbert: return std::make_shared<const HilbertLogic>(*s.logic.hilbert, s.universe);
    case Backend::Matrix: return std::make_shared<const MatrixStructure>(*s.logic.matrix, s.limits);
    case Backend::Extensional:
      // The session universe extends the table's own; the pairs keep their
      // formulas.
      {
        const Universe& own = *s.logic.universe;
        std::vector<Pair> pairs;
        for (const auto& p : s.logic.pairs) {
          Pair q;
          for (auto i : p.premises) q.premises.push_back(s.universe.index(own[i]));
          std::sort(q.premises.begin(), q.premises.end());
          q.conclusion = s.universe.index(own[p.conclusion]);
          pairs.push_back(std::move(q));
        }
        return std::make_shared<const ExtensionalStructure>(s.universe, pairs);
      }
  }
  throw Error(ErrorCode::InvalidDefinition, "unknown backend");
}

namespace {

[[noreturn]] void bad_spec(const std::string& message) { throw Error(ErrorCode::InvalidCompanionSpec, message); }

// Splits at `sep` outside parentheses and braces.
std::vector<std::string> split_top(std::string_view text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(' || c == '{') ++depth;
    else if (c == ')' || c == '}') --depth;
    else if (c == sep && depth == 0) {
      out.emplace_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) bad_spec("unbalanced brackets in '" + std::string(text) + "'");
  out.emplace_back(trim(text.substr(start)));
  return out;
}

// "name(args)" -> {name, args}; plain names get no args.
std::pair<std::string, std::optional<std::string>> call_form(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos) return {std::string(text), std::nullopt};
  if (text.back() != ')') bad_spec("expected ')' at the end of '" + std::string(text) + "'");
  return {std::string(trim(text.substr(0, open))), std::string(text.substr(open + 1, text.size() - open - 2))};
}

std::string keyed(const std::string& args, const std::string& key) {
  const auto t = std::string(trim(args));
  if (t.rfind(key + "=", 0) != 0) bad_spec("expected '" + key + "=' in '" + t + "'");
  return std::string(trim(std::string_view(t).substr(key.size() + 1)));
}

std::filesystem::path relative_to(const Session& s, const std::string& file) {
  const std::filesystem::path p(file);
  if (p.is_absolute() || std::filesystem::exists(p)) return p;
  if (std::filesystem::exists(s.directory / p)) return s.directory / p;
  return resolve_logic_path(p);
}

std::vector<Substitution> variable_renamings(const std::vector<std::string>& vars, std::size_t limit) {
  std::vector<Substitution> out;
  std::vector<std::size_t> choice(vars.size(), 0);
  while (out.size() < limit) {
    Substitution s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.bind(Formula::var(vars[i]), Formula::var(vars[choice[i]]));
    out.push_back(std::move(s));
    std::size_t i = 0;
    while (i < vars.size() && ++choice[i] == vars.size()) choice[i++] = 0;
    if (i == vars.size()) break;
  }
  return out;
}

}  // namespace

Relation parse_relspec(std::string_view text, const Session& s) {
  const auto [name, args] = call_form(text);
  const auto& sig = s.logic.signature;
  auto formulas = [&](const std::string& list) {
    try {
      return parse_list(list, sig);
    } catch (const Error& e) {
      bad_spec(std::string("in '") + std::string(text) + "': " + e.what());
    }
  };
  if (name == "L" && !args) return left_inclusion();
  if (name == "PR" && !args) return right_inclusion();
  if (name == "R") {
    const std::string anti = args ? keyed(*args, "anti") : "never";
    if (anti == "never") return right_inclusion_with(std::make_shared<NoAntitheorems>());
    if (anti == "matrix") {
      if (!s.logic.matrix) bad_spec("R(anti=matrix) needs a matrix logic");
      return right_inclusion_with(std::make_shared<MatrixAntitheorems>(*s.logic.matrix, s.limits));
    }
    if (anti == "sample") {
      std::vector<std::string> vars = s.logic.variables;
      if (vars.empty()) vars = vars_set(s.universe.formulas()).names();
      return right_inclusion_with(std::make_shared<SampledAntitheorems>(
          base_structure(s), variable_renamings(vars, 64), s.universe.formulas(), s.budget));
    }
    std::vector<FormulaSet> sets;
    for (const auto& part : split_top(anti, ';')) {
      if (part.size() < 2 || part.front() != '{' || part.back() != '}')
        bad_spec("antitheorem sets are written {f, g};{h}");
      const auto fs = formulas(part.substr(1, part.size() - 2));
      sets.emplace_back(fs.begin(), fs.end());
    }
    return right_inclusion_with(std::make_shared<DeclaredAntitheorems>(std::move(sets)));
  }
  if (name == "P") {
    const std::string probes = args ? keyed(*args, "probes") : "universe";
    std::vector<Formula> list;
    if (probes == "universe") {
      list = s.universe.formulas();
    } else {
      for (const auto& part : split_top(probes, ';')) {
        const auto fs = formulas(part);
        list.insert(list.end(), fs.begin(), fs.end());
      }
    }
    if (list.empty()) bad_spec("P needs at least one probe");
    return paraconsistentization(base_structure(s), std::move(list), s.budget);
  }
  if ((name == "union" || name == "intersect") && args) {
    const auto parts = split_top(*args, ',');
    if (parts.size() < 2) bad_spec(name + " needs at least two relations");
    Relation acc = parse_relspec(parts[0], s);
    for (std::size_t i = 1; i < parts.size(); ++i)
      acc = name == "union" ? union_of(acc, parse_relspec(parts[i], s)) : intersection_of(acc, parse_relspec(parts[i], s));
    return acc;
  }
  if (name == "struct" && args) {
    Session other = s;
    other.logic = load_logic(relative_to(s, std::string(trim(*args))));
    other.directory = relative_to(s, std::string(trim(*args))).parent_path();
    if (other.logic.universe) other.universe = session_universe(other.logic, 0, s.universe.formulas());
    return from_structure(base_structure(other), s.budget);
  }
  if (name == "table" && args) {
    const auto def = load_logic(relative_to(s, std::string(trim(*args))));
    if (!def.universe) bad_spec("table(" + *args + ") is not a table file");
    return table_relation("table(" + std::string(trim(*args)) + ")", *def.universe, def.pairs);
  }
  bad_spec("unknown relation '" + std::string(text) + "'");
}

StructurePtr build_structure(std::string_view spec, const Session& s) {
  const auto links = split_top(spec, '/');
  std::optional<HilbertStructure> hilbert = s.logic.hilbert;
  StructurePtr current;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const std::string& link = links[i];
    if (link.empty()) bad_spec("empty link in '" + std::string(spec) + "'");
    if (link == "base") {
      if (i != 0) bad_spec("'base' can only start a spec");
      continue;
    }
    if (link == "re" || link.rfind("pi:", 0) == 0) {
      if (i != 0) bad_spec("'" + link + "' can only start a spec");
      if (!hilbert) bad_spec("'" + link + "' needs a logic with schemata");
      if (link == "re") {
        hilbert = restrict_rules(*hilbert);
      } else {
        std::vector<Relation> pi;
        const auto body = link.substr(3);
        if (!trim(body).empty())
          for (const auto& r : split_top(body, ',')) pi.push_back(parse_relspec(r, s));
        hilbert = restrict_by(*hilbert, std::move(pi));
      }
      continue;
    }
    const bool pure = link.rfind("prho:", 0) == 0;
    if (!pure && link.rfind("rho:", 0) != 0) bad_spec("unknown link '" + link + "'");
    if (!current) {
      if (hilbert) current = std::make_shared<const HilbertLogic>(*hilbert, s.universe);
      else current = base_structure(s);
    }
    current = std::make_shared<const CompanionStructure>(current, parse_relspec(link.substr(pure ? 5 : 4), s), pure,
                                                         s.limits);
  }
  if (!current) current = hilbert ? std::make_shared<const HilbertLogic>(*hilbert, s.universe) : base_structure(s);
  return current;
}

std::filesystem::path resolve_logic_path(const std::filesystem::path& path) {
  if (std::filesystem::exists(path)) return path;
  const auto bundled = std::filesystem::path(RELATIO_LOGIC_DIR) / path;
  if (std::filesystem::exists(bundled)) return bundled;
  return path;
}

}  // namespace relatio
