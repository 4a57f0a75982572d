#pragma once

// Logic-definition files, table files ("relatio-table v1") and the
// companion-spec mini-language used by the command line.
//
// See docs/logic-format.md for the grammar.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relatio/companion.hpp"
#include "relatio/hilbert.hpp"
#include "relatio/matrix.hpp"
#include "relatio/oracle.hpp"

namespace relatio {

enum class Backend { Hilbert, Matrix, Extensional };

struct LogicDefinition {
  std::string name;
  Signature signature;
  std::vector<std::string> variables;
  std::optional<std::size_t> depth;  // default search-universe depth
  Backend backend = Backend::Hilbert;
  std::optional<HilbertStructure> hilbert;
  std::optional<Matrix> matrix;
  std::optional<Universe> universe;  // extensional backend
  std::vector<Pair> pairs;
  // Table files only.
  std::optional<std::size_t> cap;
  bool complete = true;
};

/// Parse errors are SyntaxErrors carrying the file line and column.
LogicDefinition parse_logic(std::string_view text);
LogicDefinition load_logic(const std::filesystem::path& path);

/// A table file, loadable again with load_logic as an extensional logic.
std::string write_table(const TableDump& table, const std::string& name, const Signature& sig,
                        const std::vector<std::string>& variables);

/// Everything a command needs to turn a logic file and a companion spec
/// into a structure: the definition, its directory (for relative struct()
/// and table() references), the search and probe universe, and budgets.
struct Session {
  LogicDefinition logic;
  std::filesystem::path directory;
  Universe universe;
  Budget budget;
  Limits limits;
};

/// Universe of the session: the extensional universe, or every formula over
/// the logic's variables up to `depth`, plus `extra` with its subformulas.
Universe session_universe(const LogicDefinition& logic, std::size_t depth, const std::vector<Formula>& extra);

/// The logic's own structure (Hilbert closure over the session universe,
/// matrix consequence or table lookup).
StructurePtr base_structure(const Session& s);

/// "L", "PR", "R(anti=never|matrix|sample|{..};{..})",
/// "P(probes=universe|f;g)", "union(a,b)", "intersect(a,b)", "struct(file)",
/// "table(file)". Throws InvalidCompanionSpec.
Relation parse_relspec(std::string_view text, const Session& s);

/// "base", "re", "pi:<rel>(,<rel>)*", "rho:<relspec>", "prho:<relspec>",
/// chained with '/' from the inside out ("re/rho:L" is (S^re)^L). "re" and
/// "pi" apply to Hilbert logics and only as the first link.
StructurePtr build_structure(std::string_view spec, const Session& s);

/// Resolves a logic path: as given if it exists, otherwise inside the
/// bundled logics directory.
std::filesystem::path resolve_logic_path(const std::filesystem::path& path);

}  // namespace relatio
