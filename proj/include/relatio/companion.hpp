#pragma once

// ρ-companions: Γ ⊢^ρ α iff some Δ ⊆ Γ has (Δ, α) ∈ ρ and Δ ⊢ α in the base.
// Pure companions additionally require Δ ≠ ∅.

#include <memory>
#include <string>

#include "relatio/relation.hpp"
#include "relatio/structure.hpp"

namespace relatio {

class CompanionStructure : public LogicalStructure {
 public:
  CompanionStructure(StructurePtr base, Relation rho, bool pure = false, Limits limits = {},
                     bool allow_shortcut = true);

  const LogicalStructure& base() const { return *base_; }
  const StructurePtr& base_ptr() const { return base_; }
  const Relation& relation() const { return rho_; }
  bool pure() const { return pure_; }

  /// True when queries avoid the full subset sweep: the base declares
  /// monotonicity and ρ is declared downward-directed.
  bool uses_shortcut() const;

  Verdict entail(const FormulaSet& premises, const Formula& goal, const Budget& budget) const override;
  /// Every ρ-companion is monotonic, whatever the base.
  bool monotone() const override { return true; }
  std::string describe() const override;

 private:
  StructurePtr base_;
  Relation rho_;
  bool pure_;
  Limits limits_;
  bool allow_shortcut_;
};

Verdict companion_entails(const CompanionStructure& c, const FormulaSet& premises, const Formula& goal,
                          const Budget& budget = {});

}  // namespace relatio
