#pragma once

// Relations ρ ⊆ P(L) × L, the concrete relations used to build companions,
// combinators and the exhaustive classifier.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relatio/extensional.hpp"
#include "relatio/matrix.hpp"
#include "relatio/structure.hpp"
#include "relatio/universe.hpp"

namespace relatio {

enum class Tri { No, Yes, Unknown };

std::string to_string(Tri t);

struct RelationFlags {
  Tri downward_directed = Tri::Unknown;
  Tri contains_empty = Tri::Unknown;
  Tri finite_reach = Tri::Unknown;
  /// Membership may miss pairs (e.g. a budget-bounded structure relation).
  bool conservative = false;
};

/// A membership predicate over (finite premise set, formula) plus declared
/// flags. Yes/No flags are only declared when they are guaranteed.
class Relation {
 public:
  using Test = std::function<bool(const FormulaSet&, const Formula&)>;

  Relation(std::string name, Test test, RelationFlags flags = {});

  bool contains(const FormulaSet& delta, const Formula& alpha) const { return (*test_)(delta, alpha); }
  bool operator()(const FormulaSet& delta, const Formula& alpha) const { return contains(delta, alpha); }

  const std::string& name() const { return name_; }
  const RelationFlags& flags() const { return flags_; }

 private:
  std::string name_;
  std::shared_ptr<const Test> test_;
  RelationFlags flags_;
};

/// (Δ, α) ∈ L iff var(Δ) ⊆ var(α).
bool rel_L(const FormulaSet& delta, const Formula& alpha);
/// (Δ, α) ∈ PR iff var(α) ⊆ var(Δ).
bool rel_PR(const FormulaSet& delta, const Formula& alpha);

/// Decides (sometimes) whether a premise set is an antitheorem: every
/// substitution instance of it entails every formula.
class AntitheoremOracle {
 public:
  virtual ~AntitheoremOracle() = default;
  virtual Tri is_antitheorem(const FormulaSet& delta) const = 0;
  virtual std::string describe() const = 0;
};

using AntitheoremOraclePtr = std::shared_ptr<const AntitheoremOracle>;

/// Never confirms an antitheorem.
class NoAntitheorems : public AntitheoremOracle {
 public:
  Tri is_antitheorem(const FormulaSet&) const override { return Tri::No; }
  std::string describe() const override { return "never"; }
};

/// Yes for the listed sets, Unknown otherwise.
class DeclaredAntitheorems : public AntitheoremOracle {
 public:
  explicit DeclaredAntitheorems(std::vector<FormulaSet> certified) : certified_(std::move(certified)) {}
  Tri is_antitheorem(const FormulaSet& delta) const override;
  std::string describe() const override;

 private:
  std::vector<FormulaSet> certified_;
};

/// For matrix consequence: Δ is an antitheorem iff no valuation designates
/// all of Δ. Unsatisfiability survives substitution, and a satisfiable Δ
/// fails to entail a fresh variable.
class MatrixAntitheorems : public AntitheoremOracle {
 public:
  explicit MatrixAntitheorems(Matrix matrix, Limits limits = {}) : matrix_(std::move(matrix)), limits_(limits) {}
  Tri is_antitheorem(const FormulaSet& delta) const override;
  std::string describe() const override { return "matrix " + matrix_.name(); }

 private:
  Matrix matrix_;
  Limits limits_;
};

/// Checks explosion of σ(Δ) against `probes` for a finite sample of
/// substitutions. A non-exploding instance proves No; otherwise Unknown,
/// since a sample never establishes Yes.
class SampledAntitheorems : public AntitheoremOracle {
 public:
  SampledAntitheorems(StructurePtr base, std::vector<Substitution> sample, std::vector<Formula> probes,
                      Budget budget = {});
  Tri is_antitheorem(const FormulaSet& delta) const override;
  std::string describe() const override { return "sampled"; }

 private:
  StructurePtr base_;
  std::vector<Substitution> sample_;
  std::vector<Formula> probes_;
  Budget budget_;
};

/// (Δ, α) ∈ R iff the oracle confirms Δ is an antitheorem, or (Δ, α) ∈ PR.
bool rel_R(const FormulaSet& delta, const Formula& alpha, const AntitheoremOracle& anti);

/// Δ is nontrivial iff some probe φ has base ⊢ Δ ⊢ φ Refuted. Throws
/// IndeterminateNontriviality when nothing is refuted and some query ran
/// out of budget.
bool rel_nontrivial(const LogicalStructure& base, const FormulaSet& delta, const std::vector<Formula>& probes,
                    const Budget& budget = {});

Relation left_inclusion();
Relation right_inclusion();
Relation right_inclusion_with(AntitheoremOraclePtr anti);
/// ℙ: (Δ, α) ∈ ℙ iff Δ is nontrivial in `base` (checked against `probes`).
Relation paraconsistentization(StructurePtr base, std::vector<Formula> probes, Budget budget = {});
Relation total_relation();
Relation empty_relation();
Relation union_of(const Relation& a, const Relation& b);
Relation intersection_of(const Relation& a, const Relation& b);
/// (Δ, α) ∈ ρ iff T proves Δ ⊢ α within `budget`. Answers are memoized;
/// the relation is flagged conservative.
Relation from_structure(StructurePtr t, Budget budget = {});

/// Relation given by an explicit table over a universe; pairs mentioning
/// foreign formulas are never members. Flags are computed exactly when the
/// universe is small enough to sweep.
Relation table_relation(std::string name, const Universe& universe, const std::vector<Pair>& pairs);

struct RelationReport {
  bool downward_directed = true;
  bool contains_empty = true;
  /// reach[mask] = |{α ∈ U | (Δ_mask, α) ∈ ρ}|, masks over universe indices.
  std::vector<std::size_t> reach;
  std::size_t max_reach = 0;
  std::optional<std::string> downward_violation;
};

/// Exhaustive sweep over P(U) × U. Throws UniverseTooLarge above the cap.
RelationReport classify(const Relation& rho, const Universe& universe, const Limits& limits = {});

}  // namespace relatio
