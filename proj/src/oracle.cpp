#include "relatio/oracle.hpp"

#include <algorithm>

#include "relatio/error.hpp"

namespace relatio {

TableDump::TableDump(Universe universe, std::size_t cap) : universe_(std::move(universe)), cap_(cap) {}

bool TableDump::holds(const IndexSet& premises, std::uint32_t goal) const {
  auto it = rows_.find(premises);
  return it != rows_.end() && it->second[goal];
}

void TableDump::set(const IndexSet& premises, std::uint32_t goal) {
  auto& row = rows_[premises];
  if (row.empty()) row.assign(universe_.size(), false);
  row[goal] = true;
}

std::vector<Pair> TableDump::pairs() const {
  std::vector<Pair> out;
  for (const auto& [premises, row] : rows_)
    for (std::uint32_t a = 0; a < row.size(); ++a)
      if (row[a]) out.push_back({premises, a});
  std::sort(out.begin(), out.end(), [](const Pair& x, const Pair& y) {
    if (x.premises.size() != y.premises.size()) return x.premises.size() < y.premises.size();
    return x < y;
  });
  return out;
}

std::size_t TableDump::pair_count() const {
  std::size_t n = 0;
  for (const auto& [premises, row] : rows_) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
  return n;
}

ExtensionalStructure TableDump::as_structure() const { return ExtensionalStructure(universe_, pairs()); }

TableDump dump(const LogicalStructure& s, const Universe& u, std::size_t k, const Budget& budget,
               const Limits& limits) {
  const auto n = static_cast<std::uint32_t>(u.size());
  if (count_subsets_up_to(n, k, limits.max_dump_rows) > limits.max_dump_rows)
    throw Error(ErrorCode::UniverseTooLarge, "dump of " + std::to_string(n) + " formulas with premise cap " +
                                                 std::to_string(k) + " exceeds the row limit");
  TableDump out(u, k);
  const auto& goals = u.formulas();
  for_each_subset_up_to(n, k, [&](const IndexSet& premises) {
    const auto verdicts = s.entail_each(u.formulas_of(premises), goals, budget);
    for (std::uint32_t a = 0; a < n; ++a) {
      if (verdicts[a].proved()) out.set(premises, a);
      else if (verdicts[a].exhausted()) out.mark_incomplete();
    }
  });
  return out;
}

TableDump relation_table(const Relation& rho, const Universe& u, std::size_t k, const Limits& limits) {
  const auto n = static_cast<std::uint32_t>(u.size());
  if (count_subsets_up_to(n, k, limits.max_dump_rows) > limits.max_dump_rows)
    throw Error(ErrorCode::UniverseTooLarge, "relation table exceeds the row limit");
  TableDump out(u, k);
  for_each_subset_up_to(n, k, [&](const IndexSet& delta) {
    const FormulaSet set = u.formulas_of(delta);
    for (std::uint32_t a = 0; a < n; ++a)
      if (rho(set, u[a])) out.set(delta, a);
  });
  return out;
}

namespace {

// Literal ∃Δ ⊆ Γ over bitmasks of Γ's positions; `admits(Δ, α)` is the
// relation test.
template <typename Admits>
TableDump brute(const TableDump& base, bool pure, Admits&& admits) {
  const auto& u = base.universe();
  const auto n = static_cast<std::uint32_t>(u.size());
  TableDump out(u, base.cap());
  if (!base.complete()) out.mark_incomplete();
  IndexSet delta;
  for_each_subset_up_to(n, base.cap(), [&](const IndexSet& gamma) {
    const std::uint32_t subsets = 1u << gamma.size();
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t m = pure ? 1 : 0; m < subsets; ++m) {
        delta.clear();
        for (std::uint32_t i = 0; i < gamma.size(); ++i)
          if (m >> i & 1u) delta.push_back(gamma[i]);
        if (base.holds(delta, a) && admits(delta, a)) {
          out.set(gamma, a);
          break;
        }
      }
    }
  });
  return out;
}

}  // namespace

TableDump brute_companion(const TableDump& base, const Relation& rho, bool pure) {
  const auto& u = base.universe();
  return brute(base, pure, [&](const IndexSet& delta, std::uint32_t a) { return rho(u.formulas_of(delta), u[a]); });
}

TableDump brute_companion(const TableDump& base, const TableDump& rho, bool pure) {
  if (!(base.universe().formulas() == rho.universe().formulas()) || base.cap() != rho.cap())
    throw Error(ErrorCode::CapMismatch, "relation table does not match the base dump");
  auto out = brute(base, pure, [&](const IndexSet& delta, std::uint32_t a) { return rho.holds(delta, a); });
  if (!rho.complete()) out.mark_incomplete();
  return out;
}

namespace {

void require_same_shape(const TableDump& a, const TableDump& b) {
  if (a.cap() != b.cap())
    throw Error(ErrorCode::CapMismatch,
                "premise caps differ: " + std::to_string(a.cap()) + " vs " + std::to_string(b.cap()));
  if (!(a.universe().formulas() == b.universe().formulas()))
    throw Error(ErrorCode::CapMismatch, "dumps are over different universes");
}

TableComparison compare(const TableDump& a, const TableDump& b, bool both_ways) {
  require_same_shape(a, b);
  TableComparison out;
  out.conclusive = a.complete() && b.complete();
  const auto n = static_cast<std::uint32_t>(a.universe().size());
  bool done = false;
  for_each_subset_up_to(n, a.cap(), [&](const IndexSet& premises) {
    if (done) return;
    for (std::uint32_t g = 0; g < n; ++g) {
      const bool in_a = a.holds(premises, g), in_b = b.holds(premises, g);
      if (in_a && !in_b) out.witness = TableWitness{premises, g, "left"};
      else if (both_ways && in_b && !in_a) out.witness = TableWitness{premises, g, "right"};
      if (out.witness) {
        done = true;
        return;
      }
    }
  });
  out.holds = !out.witness;
  return out;
}

}  // namespace

TableComparison equal_tables(const TableDump& a, const TableDump& b) { return compare(a, b, true); }

TableComparison subset_tables(const TableDump& a, const TableDump& b) { return compare(a, b, false); }

std::string describe(const TableWitness& w, const Universe& u) {
  return "(" + print_set(u.formulas_of(w.premises)) + ", " + print(u[w.goal]) + ") only in " + w.side;
}

}  // namespace relatio
