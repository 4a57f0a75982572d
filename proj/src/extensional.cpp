#include "relatio/extensional.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "relatio/error.hpp"

namespace relatio {

namespace {

using Mask = std::uint32_t;

IndexSet to_indices(Mask m) {
  IndexSet out;
  for (std::uint32_t i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

std::string show(const Universe& u, Mask premises, std::uint32_t conclusion) {
  return print_set(u.formulas_of(to_indices(premises))) + " |- " + print(u[conclusion]);
}

// rows[mask] = bitmask of conclusions
std::vector<Mask> dense_rows(const ExtensionalStructure& s) {
  const auto n = static_cast<std::uint32_t>(s.universe().size());
  std::vector<Mask> rows(std::size_t{1} << n, 0);
  for (const auto& p : s.pairs()) {
    Mask m = 0;
    for (auto i : p.premises) m |= Mask{1} << i;
    rows[m] |= Mask{1} << p.conclusion;
  }
  return rows;
}

}  // namespace

ExtensionalStructure::ExtensionalStructure(Universe universe, const std::vector<Pair>& pairs)
    : universe_(std::move(universe)) {
  const auto n = universe_.size();
  for (const auto& p : pairs) {
    if (p.conclusion >= n || std::any_of(p.premises.begin(), p.premises.end(), [&](auto i) { return i >= n; }))
      throw Error(ErrorCode::OutOfUniverse, "pair references a formula outside the universe");
    IndexSet key = p.premises;
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    auto& row = rows_[key];
    row.resize(n, false);
    if (!row[p.conclusion]) {
      row[p.conclusion] = true;
      ++count_;
    }
  }
  if (n <= Limits{}.max_subset_universe) monotone_ = check_tarski(*this).monotonic;
}

bool ExtensionalStructure::holds(const IndexSet& premises, std::uint32_t conclusion) const {
  auto it = rows_.find(premises);
  return it != rows_.end() && it->second[conclusion];
}

std::vector<Pair> ExtensionalStructure::pairs() const {
  std::vector<Pair> out;
  out.reserve(count_);
  for (const auto& [premises, row] : rows_)
    for (std::uint32_t i = 0; i < row.size(); ++i)
      if (row[i]) out.push_back({premises, i});
  std::sort(out.begin(), out.end());
  return out;
}

Verdict ExtensionalStructure::entail(const FormulaSet& premises, const Formula& goal, const Budget&) const {
  return holds(universe_.indices(premises), universe_.index(goal)) ? Verdict::proved(TableCertificate{})
                                                                    : Verdict::refuted(Scope::Full);
}

std::string ExtensionalStructure::describe() const {
  return "extensional table (" + std::to_string(universe_.size()) + " formulas, " + std::to_string(count_) +
         " pairs)";
}

Verdict ext_entails(const ExtensionalStructure& s, const FormulaSet& premises, const Formula& goal) {
  return s.entail(premises, goal, Budget{});
}

TarskiReport check_tarski(const ExtensionalStructure& s, const Limits& limits) {
  const auto n = static_cast<std::uint32_t>(s.universe().size());
  if (n > limits.max_subset_universe || n > 24)
    throw Error(ErrorCode::UniverseTooLarge, "universe of " + std::to_string(n) + " formulas exceeds the sweep cap");
  const auto rows = dense_rows(s);
  const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  const auto& u = s.universe();

  TarskiReport r;
  r.finitary = true;
  r.reflexive = r.monotonic = r.transitive = true;

  for (Mask g = 0; g < rows.size(); ++g) {
    if (r.reflexive && (rows[g] & g) != g) {
      r.reflexive = false;
      r.reflexive_violation = show(u, g, std::countr_zero(g & ~rows[g])) + " missing";
    }
    // Monotonicity reduces to single-element extensions.
    if (r.monotonic) {
      for (std::uint32_t i = 0; i < n && r.monotonic; ++i) {
        const Mask bigger = g | (Mask{1} << i);
        if (bigger == g) continue;
        if (Mask lost = rows[g] & ~rows[bigger]) {
          r.monotonic = false;
          r.monotonic_violation = show(u, g, std::countr_zero(lost)) + " holds but " +
                                  show(u, bigger, std::countr_zero(lost)) + " does not";
        }
      }
    }
    if (r.transitive) {
      // Every Δ ⊆ C(Γ) matters only through Γ ∪ Δ; enumerate the extra part.
      const Mask extra = rows[g] & ~g & full;
      for (Mask d = extra;; d = (d - 1) & extra) {
        if (Mask gained = rows[g | d] & ~rows[g]) {
          r.transitive = false;
          r.transitive_violation = show(u, g | d, std::countr_zero(gained)) + " holds and " +
                                   print_set(u.formulas_of(to_indices(d))) + " follows from " +
                                   print_set(u.formulas_of(to_indices(g))) + ", but " +
                                   show(u, g, std::countr_zero(gained)) + " does not";
          break;
        }
        if (d == 0) break;
      }
    }
  }
  return r;
}

}  // namespace relatio
