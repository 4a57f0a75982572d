#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "relatio/syntax.hpp"
#include "relatio/verdict.hpp"

namespace relatio {

struct Budget {
  /// Upper bound on derivation steps for search backends.
  std::size_t steps = 1'000'000;
};

/// Sweep caps shared by the exhaustive checkers.
struct Limits {
  std::size_t max_subset_universe = 12;   // |U| for sweeps over P(U)
  std::size_t max_premises = 12;          // |Γ| for companion subset sweeps
  std::size_t max_dump_rows = 1u << 20;   // premise sets per dump
  std::size_t max_valuations = 1u << 24;  // matrix valuation sweep
};

/// A logical structure answering finite entailment queries. Implementations
/// are immutable and deterministic for fixed inputs and budget.
class LogicalStructure {
 public:
  virtual ~LogicalStructure() = default;

  virtual Verdict entail(const FormulaSet& premises, const Formula& goal, const Budget& budget) const = 0;

  /// Answers `premises ⊢ g` for every goal. Backends that can share work
  /// across goals (forward chaining) override this.
  virtual std::vector<Verdict> entail_each(const FormulaSet& premises, std::span<const Formula> goals,
                                           const Budget& budget) const;

  /// Declared monotonicity; only ever true when it is guaranteed.
  virtual bool monotone() const { return false; }

  virtual std::string describe() const = 0;
};

using StructurePtr = std::shared_ptr<const LogicalStructure>;

}  // namespace relatio
