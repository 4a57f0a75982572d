#include "relatio/structure.hpp"

namespace relatio {

std::vector<Verdict> LogicalStructure::entail_each(const FormulaSet& premises, std::span<const Formula> goals,
                                                   const Budget& budget) const {
  std::vector<Verdict> out;
  out.reserve(goals.size());
  for (const auto& g : goals) out.push_back(entail(premises, g, budget));
  return out;
}

}  // namespace relatio
