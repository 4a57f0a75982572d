#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "relatio/structure.hpp"
#include "relatio/universe.hpp"

namespace relatio {

struct Pair {
  IndexSet premises;
  std::uint32_t conclusion = 0;

  friend auto operator<=>(const Pair&, const Pair&) = default;
  friend bool operator==(const Pair&, const Pair&) = default;
};

/// Explicit finite consequence table over a formula universe. No closure
/// conditions are assumed.
class ExtensionalStructure : public LogicalStructure {
 public:
  ExtensionalStructure(Universe universe, const std::vector<Pair>& pairs);

  const Universe& universe() const { return universe_; }
  bool holds(const IndexSet& premises, std::uint32_t conclusion) const;
  /// All pairs in (premise set, conclusion) order.
  std::vector<Pair> pairs() const;
  std::size_t pair_count() const { return count_; }

  /// Proved iff listed, Refuted(full) otherwise; OutOfUniverse for foreign
  /// formulas.
  Verdict entail(const FormulaSet& premises, const Formula& goal, const Budget& budget) const override;
  bool monotone() const override { return monotone_; }
  std::string describe() const override;

 private:
  Universe universe_;
  std::unordered_map<IndexSet, std::vector<bool>, IndexSetHash> rows_;
  std::size_t count_ = 0;
  bool monotone_ = false;
};

Verdict ext_entails(const ExtensionalStructure& s, const FormulaSet& premises, const Formula& goal);

struct TarskiReport {
  bool reflexive = false;
  bool monotonic = false;
  bool transitive = false;
  bool finitary = false;
  // First violation found for each failed property, human readable.
  std::optional<std::string> reflexive_violation;
  std::optional<std::string> monotonic_violation;
  std::optional<std::string> transitive_violation;
};

/// Exhaustive check over P(U) x U.
///  reflexive:  α ∈ Γ ⇒ Γ ⊢ α
///  monotonic:  Γ ⊢ α and Γ ⊆ Σ ⇒ Σ ⊢ α
///  transitive: Γ ⊢ β for all β ∈ Δ and Γ ∪ Δ ⊢ α ⇒ Γ ⊢ α
/// Over a finite universe every premise set is finite, so finitary holds.
/// Throws UniverseTooLarge above limits.max_subset_universe.
TarskiReport check_tarski(const ExtensionalStructure& s, const Limits& limits = {});

}  // namespace relatio
