#pragma once

// Hilbert-type structures induced by rule schemata, grounded over a finite
// universe and searched by forward chaining.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "relatio/relation.hpp"
#include "relatio/structure.hpp"
#include "relatio/universe.hpp"

namespace relatio {

/// Premise and conclusion patterns over metavariables ("?A"). An axiom is a
/// schema without premises.
struct RuleSchema {
  std::string name;
  std::vector<Formula> premises;
  Formula conclusion;
};

struct RuleInstance {
  std::string schema;
  FormulaSet premises;
  Formula conclusion;

  friend auto operator<=>(const RuleInstance&, const RuleInstance&) = default;
  friend bool operator==(const RuleInstance&, const RuleInstance&) = default;
};

/// An instance survives a filter iff some relation of the filter contains
/// (premises, conclusion).
struct InstanceFilter {
  std::vector<Relation> any_of;

  bool admits(const RuleInstance& instance) const;
  std::string describe() const;
};

class HilbertStructure {
 public:
  HilbertStructure() = default;
  HilbertStructure(Signature sig, std::vector<RuleSchema> schemata, std::vector<InstanceFilter> filters = {});

  const Signature& signature() const { return sig_; }
  const std::vector<RuleSchema>& schemata() const { return schemata_; }
  const std::vector<InstanceFilter>& filters() const { return filters_; }
  const RuleSchema* find_schema(const std::string& name) const;

  /// Filters only ever remove instances.
  bool admits(const RuleInstance& instance) const;
  HilbertStructure with_filter(InstanceFilter filter) const;
  std::string describe() const;

 private:
  Signature sig_;
  std::vector<RuleSchema> schemata_;
  std::vector<InstanceFilter> filters_;
};

/// Every instance of `schema` whose premises and conclusion lie in `u`.
std::set<RuleInstance> instances(const RuleSchema& schema, const Universe& u);

/// Instances of all schemata of `h` over `u` that pass its filters.
std::set<RuleInstance> surviving_instances(const HilbertStructure& h, const Universe& u);

/// Keeps an instance iff var(premises) ⊆ var(conclusion). Axioms always
/// survive since var(∅) = ∅.
HilbertStructure restrict_rules(const HilbertStructure& h);

/// Keeps an instance iff some relation in `pi` contains it; an empty `pi`
/// removes every instance.
HilbertStructure restrict_by(const HilbertStructure& h, std::vector<Relation> pi);

/// Instances of `h` over `u`, indexed by universe position, with a
/// forward-chaining closure over them.
class Grounding {
 public:
  Grounding(const HilbertStructure& h, Universe u);

  const Universe& universe() const { return universe_; }
  const std::vector<RuleInstance>& instances() const { return instances_; }

  struct Result {
    std::vector<bool> known;  // by universe index
    bool capped = false;      // the step cap stopped the search before a fixpoint
    std::size_t steps = 0;
    // justification[i] = instance index that produced formula i, or -1 for hypotheses
    std::vector<long> justification;
    std::vector<std::size_t> order;  // universe indices in the order they became known
  };

  /// Least fixpoint of `premises` within the universe, or a partial set when
  /// more than `step_cap` conclusions would be needed. Stops early once
  /// `stop_at` (if given) is known.
  Result close(const IndexSet& premises, std::size_t step_cap, long stop_at = -1) const;

  /// Replayable derivation of `goal` from a closure result that knows it.
  Derivation derivation(const Result& r, std::uint32_t goal) const;

 private:
  struct Ground {
    std::vector<std::uint32_t> premises;
    std::uint32_t conclusion;
  };

  Universe universe_;
  std::vector<RuleInstance> instances_;
  std::vector<Ground> ground_;
  std::vector<std::vector<std::uint32_t>> watchers_;  // formula -> instances using it as premise
};

struct ClosureResult {
  FormulaSet formulas;
  bool capped = false;
  std::size_t steps = 0;
};

ClosureResult closure(const HilbertStructure& h, const FormulaSet& premises, const Universe& u,
                      std::size_t step_cap);

/// Proved with a derivation, Refuted(within-universe) at a fixpoint without
/// the goal, Exhausted when the step cap stops the search first.
Verdict derive(const HilbertStructure& h, const FormulaSet& premises, const Formula& goal, const Universe& u,
               std::size_t step_cap);

/// Re-checks a derivation without the universe or grounding: each step is a
/// hypothesis or an admitted instance of the named schema whose premises sit
/// at earlier steps, and the last step is the goal. On failure, `why` (if
/// given) receives the reason.
bool check_derivation(const HilbertStructure& h, const FormulaSet& premises, const Formula& goal,
                      const Derivation& d, std::string* why = nullptr);

/// Hilbert entailment over a fixed search universe.
class HilbertLogic : public LogicalStructure {
 public:
  HilbertLogic(HilbertStructure h, Universe u);

  const HilbertStructure& structure() const { return h_; }
  const Universe& universe() const { return grounding_.universe(); }

  Verdict entail(const FormulaSet& premises, const Formula& goal, const Budget& budget) const override;
  std::vector<Verdict> entail_each(const FormulaSet& premises, std::span<const Formula> goals,
                                   const Budget& budget) const override;
  bool monotone() const override { return true; }
  std::string describe() const override;

 private:
  HilbertStructure h_;
  Grounding grounding_;
};

}  // namespace relatio
