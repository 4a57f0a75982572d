#pragma once

// Brute-force ground truth: exhaustive entailment tables, literal companion
// evaluation over them, and table comparison with witnesses.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "relatio/extensional.hpp"
#include "relatio/relation.hpp"
#include "relatio/structure.hpp"
#include "relatio/universe.hpp"

namespace relatio {

/// Every (Δ, α) with |Δ| ≤ cap and Δ ∪ {α} ⊆ U answered Proved.
class TableDump {
 public:
  TableDump(Universe universe, std::size_t cap);

  const Universe& universe() const { return universe_; }
  std::size_t cap() const { return cap_; }
  /// False when some query came back Exhausted; comparisons involving an
  /// incomplete dump are inconclusive.
  bool complete() const { return complete_; }
  void mark_incomplete() { complete_ = false; }

  bool holds(const IndexSet& premises, std::uint32_t goal) const;
  void set(const IndexSet& premises, std::uint32_t goal);
  /// Listed pairs, ordered by premise-set size, then lexicographically.
  std::vector<Pair> pairs() const;
  std::size_t pair_count() const;

  /// The table as an extensional structure (pairs outside the cap are absent).
  ExtensionalStructure as_structure() const;

 private:
  Universe universe_;
  std::size_t cap_;
  bool complete_ = true;
  std::unordered_map<IndexSet, std::vector<bool>, IndexSetHash> rows_;
};

/// Sweeps all premise sets of size ≤ k. Throws UniverseTooLarge when the
/// number of premise sets exceeds limits.max_dump_rows.
TableDump dump(const LogicalStructure& s, const Universe& u, std::size_t k, const Budget& budget = {},
               const Limits& limits = {});

/// Γ ⊢^ρ α evaluated literally over `base`: some Δ ⊆ Γ (Δ ≠ ∅ when pure)
/// with (Δ, α) ∈ ρ and (Δ, α) listed in the base table.
TableDump brute_companion(const TableDump& base, const Relation& rho, bool pure = false);

/// ρ tabulated over the premise sets of size ≤ k, for reuse across
/// brute_companion calls.
TableDump relation_table(const Relation& rho, const Universe& u, std::size_t k, const Limits& limits = {});

/// Same, with ρ given as a table over the dump's universe.
TableDump brute_companion(const TableDump& base, const TableDump& rho, bool pure = false);

struct TableWitness {
  IndexSet premises;
  std::uint32_t goal = 0;
  /// "left" when only the first table lists the pair, "right" otherwise.
  std::string side;
};

struct TableComparison {
  bool holds = false;       // the compared relation (equality or inclusion) holds
  bool conclusive = true;   // false when either dump is incomplete
  std::optional<TableWitness> witness;
};

/// Throws CapMismatch unless both dumps share universe and cap.
TableComparison equal_tables(const TableDump& a, const TableDump& b);
/// a ⊆ b, witness on the left side.
TableComparison subset_tables(const TableDump& a, const TableDump& b);

std::string describe(const TableWitness& w, const Universe& u);

}  // namespace relatio
