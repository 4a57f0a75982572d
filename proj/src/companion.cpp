#include "relatio/companion.hpp"

#include <algorithm>
#include <bit>
#include <vector>

#include "relatio/error.hpp"

namespace relatio {

CompanionStructure::CompanionStructure(StructurePtr base, Relation rho, bool pure, Limits limits,
                                       bool allow_shortcut)
    : base_(std::move(base)), rho_(std::move(rho)), pure_(pure), limits_(limits), allow_shortcut_(allow_shortcut) {
  if (!base_) throw Error(ErrorCode::InvalidCompanionSpec, "companion needs a base structure");
}

bool CompanionStructure::uses_shortcut() const {
  return allow_shortcut_ && base_->monotone() && rho_.flags().downward_directed == Tri::Yes;
}

std::string CompanionStructure::describe() const {
  return "(" + base_->describe() + ")^" + (pure_ ? "p" : "") + rho_.name();
}

namespace {

// Masks over n elements ordered by size, then numerically.
std::vector<std::uint32_t> masks_by_size(std::size_t n) {
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  return masks;
}

FormulaSet pick(const std::vector<Formula>& elems, std::uint32_t mask) {
  FormulaSet out;
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (mask >> i & 1u) out.insert(elems[i]);
  return out;
}

// Accumulates base answers for candidate subsets: Proved wins outright,
// then Exhausted, then Refuted.
struct Sweep {
  bool exhausted = false;
  bool within_universe = false;
  std::string report;

  std::optional<Verdict> offer(const LogicalStructure& base, const FormulaSet& delta, const Formula& goal,
                               const Budget& budget) {
    Verdict v = base.entail(delta, goal, budget);
    if (v.proved()) {
      SubsetCertificate cert{delta, std::make_shared<const Verdict>(std::move(v))};
      return Verdict::proved(std::move(cert));
    }
    if (v.exhausted()) {
      if (!exhausted) report = "base exhausted on " + print_set(delta) + ": " + v.report;
      exhausted = true;
    } else if (v.scope == Scope::WithinUniverse) {
      within_universe = true;
    }
    return std::nullopt;
  }

  Verdict finish() const {
    if (exhausted) return Verdict::exhausted(report);
    return Verdict::refuted(within_universe ? Scope::WithinUniverse : Scope::Full);
  }
};

}  // namespace

Verdict CompanionStructure::entail(const FormulaSet& premises, const Formula& goal, const Budget& budget) const {
  if (premises.size() > limits_.max_premises || premises.size() > 24)
    throw Error(ErrorCode::PremiseSetTooLarge, "premise set of " + std::to_string(premises.size()) +
                                                   " formulas exceeds the subset-sweep limit");
  Sweep sweep;

  if (uses_shortcut()) {
    // Every member of ρ below Γ lies inside Δ* = {γ | ({γ}, α) ∈ ρ}, and the
    // monotone base only needs the maximal members.
    std::vector<Formula> star;
    for (const auto& g : premises)
      if (rho_({g}, goal)) star.push_back(g);
    const FormulaSet whole(star.begin(), star.end());
    if (rho_(whole, goal)) {
      if (pure_ && whole.empty()) return sweep.finish();
      if (auto v = sweep.offer(*base_, whole, goal, budget)) return *v;
      return sweep.finish();
    }
    // Δ* itself is not a member: query each maximal member inside it.
    const auto masks = masks_by_size(star.size());
    std::vector<std::uint32_t> maximal;
    for (auto it = masks.rbegin(); it != masks.rend(); ++it) {
      const auto m = *it;
      if (pure_ && m == 0) continue;
      if (std::any_of(maximal.begin(), maximal.end(), [m](std::uint32_t big) { return (m & ~big) == 0; })) continue;
      if (!rho_(pick(star, m), goal)) continue;
      maximal.push_back(m);
      if (auto v = sweep.offer(*base_, pick(star, m), goal, budget)) return *v;
    }
    return sweep.finish();
  }

  const std::vector<Formula> elems(premises.begin(), premises.end());
  for (const auto m : masks_by_size(elems.size())) {
    if (pure_ && m == 0) continue;
    const FormulaSet delta = pick(elems, m);
    if (!rho_(delta, goal)) continue;
    if (auto v = sweep.offer(*base_, delta, goal, budget)) return *v;
  }
  return sweep.finish();
}

Verdict companion_entails(const CompanionStructure& c, const FormulaSet& premises, const Formula& goal,
                          const Budget& budget) {
  return c.entail(premises, goal, budget);
}

}  // namespace relatio
