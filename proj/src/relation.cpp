#include "relatio/relation.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <unordered_map>

#include "relatio/error.hpp"

namespace relatio {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::No: return "no";
    case Tri::Yes: return "yes";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

Relation::Relation(std::string name, Test test, RelationFlags flags)
    : name_(std::move(name)), test_(std::make_shared<const Test>(std::move(test))), flags_(flags) {}

bool rel_L(const FormulaSet& delta, const Formula& alpha) { return vars_set(delta).subset_of(vars(alpha)); }

bool rel_PR(const FormulaSet& delta, const Formula& alpha) { return vars(alpha).subset_of(vars_set(delta)); }

// ---------------------------------------------------------------------------
// Antitheorem oracles

Tri DeclaredAntitheorems::is_antitheorem(const FormulaSet& delta) const {
  return std::find(certified_.begin(), certified_.end(), delta) != certified_.end() ? Tri::Yes : Tri::Unknown;
}

std::string DeclaredAntitheorems::describe() const {
  std::string out;
  for (const auto& s : certified_) {
    if (!out.empty()) out += ";";
    out += print_set(s);
  }
  return "declared " + out;
}

Tri MatrixAntitheorems::is_antitheorem(const FormulaSet& delta) const {
  // Satisfiable iff Δ does not entail a variable foreign to Δ.
  std::string fresh = "z";
  const VarSet used = vars_set(delta);
  while (used.contains(fresh)) fresh += "z";
  return matrix_entails(matrix_, delta, Formula::var(fresh), limits_).proved() ? Tri::Yes : Tri::No;
}

SampledAntitheorems::SampledAntitheorems(StructurePtr base, std::vector<Substitution> sample,
                                         std::vector<Formula> probes, Budget budget)
    : base_(std::move(base)), sample_(std::move(sample)), probes_(std::move(probes)), budget_(budget) {
  if (sample_.empty()) sample_.emplace_back();  // identity
}

Tri SampledAntitheorems::is_antitheorem(const FormulaSet& delta) const {
  for (const auto& s : sample_) {
    FormulaSet image;
    for (const auto& f : delta) image.insert(substitute(s, f));
    for (const auto& probe : probes_)
      if (base_->entail(image, probe, budget_).refuted()) return Tri::No;
  }
  return Tri::Unknown;
}

bool rel_R(const FormulaSet& delta, const Formula& alpha, const AntitheoremOracle& anti) {
  return anti.is_antitheorem(delta) == Tri::Yes || rel_PR(delta, alpha);
}

bool rel_nontrivial(const LogicalStructure& base, const FormulaSet& delta, const std::vector<Formula>& probes,
                    const Budget& budget) {
  if (probes.empty()) throw Error(ErrorCode::InvalidDefinition, "nontriviality needs at least one probe");
  bool exhausted = false;
  for (const auto& v : base.entail_each(delta, probes, budget)) {
    if (v.refuted()) return true;
    exhausted = exhausted || v.exhausted();
  }
  if (exhausted)
    throw Error(ErrorCode::IndeterminateNontriviality,
                "no probe refuted from " + print_set(delta) + " and some query ran out of budget");
  return false;
}

// ---------------------------------------------------------------------------
// Named relations and combinators

Relation left_inclusion() {
  RelationFlags f;
  f.downward_directed = Tri::Yes;
  f.contains_empty = Tri::Yes;
  return Relation("L", rel_L, f);
}

Relation right_inclusion() { return Relation("PR", rel_PR); }

Relation right_inclusion_with(AntitheoremOraclePtr anti) {
  std::string name = "R(anti=" + anti->describe() + ")";
  return Relation(std::move(name),
                  [anti = std::move(anti)](const FormulaSet& d, const Formula& a) { return rel_R(d, a, *anti); });
}

Relation paraconsistentization(StructurePtr base, std::vector<Formula> probes, Budget budget) {
  // Membership ignores α; it is a property of Δ alone.
  return Relation("P", [base = std::move(base), probes = std::move(probes), budget](const FormulaSet& d,
                                                                                    const Formula&) {
    return rel_nontrivial(*base, d, probes, budget);
  });
}

Relation total_relation() {
  RelationFlags f;
  f.downward_directed = Tri::Yes;
  f.contains_empty = Tri::Yes;
  f.finite_reach = Tri::No;
  return Relation("total", [](const FormulaSet&, const Formula&) { return true; }, f);
}

Relation empty_relation() {
  RelationFlags f;
  f.downward_directed = Tri::Yes;
  f.contains_empty = Tri::No;
  f.finite_reach = Tri::Yes;
  return Relation("empty", [](const FormulaSet&, const Formula&) { return false; }, f);
}

namespace {

Tri both(Tri a, Tri b) {
  if (a == Tri::Yes && b == Tri::Yes) return Tri::Yes;
  return Tri::Unknown;
}

}  // namespace

Relation union_of(const Relation& a, const Relation& b) {
  RelationFlags f;
  f.downward_directed = both(a.flags().downward_directed, b.flags().downward_directed);
  f.contains_empty = (a.flags().contains_empty == Tri::Yes || b.flags().contains_empty == Tri::Yes)
                         ? Tri::Yes
                         : Tri::Unknown;
  f.finite_reach = both(a.flags().finite_reach, b.flags().finite_reach);
  f.conservative = a.flags().conservative || b.flags().conservative;
  return Relation("union(" + a.name() + "," + b.name() + ")",
                  [a, b](const FormulaSet& d, const Formula& x) { return a(d, x) || b(d, x); }, f);
}

Relation intersection_of(const Relation& a, const Relation& b) {
  RelationFlags f;
  f.downward_directed = both(a.flags().downward_directed, b.flags().downward_directed);
  f.contains_empty = both(a.flags().contains_empty, b.flags().contains_empty);
  f.finite_reach = (a.flags().finite_reach == Tri::Yes || b.flags().finite_reach == Tri::Yes)
                       ? Tri::Yes
                       : Tri::Unknown;
  f.conservative = a.flags().conservative || b.flags().conservative;
  return Relation("intersect(" + a.name() + "," + b.name() + ")",
                  [a, b](const FormulaSet& d, const Formula& x) { return a(d, x) && b(d, x); }, f);
}

namespace {

struct QueryKey {
  FormulaSet premises;
  Formula goal;
  friend bool operator==(const QueryKey&, const QueryKey&) = default;
};

struct QueryKeyHash {
  std::size_t operator()(const QueryKey& k) const noexcept {
    std::size_t h = k.goal.hash();
    for (const auto& f : k.premises) h = h * 31u + f.hash();
    return h;
  }
};

struct Memo {
  std::mutex mutex;
  std::unordered_map<QueryKey, bool, QueryKeyHash> answers;
};

}  // namespace

Relation from_structure(StructurePtr t, Budget budget) {
  RelationFlags f;
  f.conservative = true;
  std::string name = "struct(" + t->describe() + ")";
  auto memo = std::make_shared<Memo>();
  return Relation(
      std::move(name),
      [t = std::move(t), budget, memo](const FormulaSet& d, const Formula& a) {
        QueryKey key{d, a};
        {
          std::lock_guard lock(memo->mutex);
          if (auto it = memo->answers.find(key); it != memo->answers.end()) return it->second;
        }
        const bool member = t->entail(d, a, budget).proved();
        std::lock_guard lock(memo->mutex);
        memo->answers.emplace(std::move(key), member);
        return member;
      },
      f);
}

Relation table_relation(std::string name, const Universe& universe, const std::vector<Pair>& pairs) {
  auto table = std::make_shared<const ExtensionalStructure>(universe, pairs);
  Relation::Test test = [table](const FormulaSet& d, const Formula& a) {
    const auto& u = table->universe();
    const auto goal = u.index_of(a);
    if (!goal) return false;
    IndexSet premises;
    premises.reserve(d.size());
    for (const auto& f : d) {
      const auto i = u.index_of(f);
      if (!i) return false;
      premises.push_back(*i);
    }
    std::sort(premises.begin(), premises.end());
    return table->holds(premises, *goal);
  };
  RelationFlags f;
  f.finite_reach = Tri::Yes;
  if (universe.size() <= Limits{}.max_subset_universe) {
    const auto report = classify(Relation(name, test), universe);
    f.downward_directed = report.downward_directed ? Tri::Yes : Tri::No;
    f.contains_empty = report.contains_empty ? Tri::Yes : Tri::No;
  }
  return Relation(std::move(name), std::move(test), f);
}

RelationReport classify(const Relation& rho, const Universe& universe, const Limits& limits) {
  const auto n = static_cast<std::uint32_t>(universe.size());
  if (n > limits.max_subset_universe || n > 24)
    throw Error(ErrorCode::UniverseTooLarge, "universe of " + std::to_string(n) + " formulas exceeds the sweep cap");
  const std::size_t masks = std::size_t{1} << n;
  std::vector<std::uint32_t> rows(masks, 0);
  for (std::uint32_t m = 0; m < masks; ++m) {
    FormulaSet delta;
    for (std::uint32_t i = 0; i < n; ++i)
      if (m >> i & 1u) delta.insert(universe[i]);
    for (std::uint32_t a = 0; a < n; ++a)
      if (rho(delta, universe[a])) rows[m] |= std::uint32_t{1} << a;
  }

  RelationReport r;
  r.reach.resize(masks);
  r.contains_empty = n == 0 || rows[0] == (n == 32 ? ~0u : (1u << n) - 1);
  for (std::uint32_t m = 0; m < masks; ++m) {
    r.reach[m] = static_cast<std::size_t>(std::popcount(rows[m]));
    r.max_reach = std::max(r.max_reach, r.reach[m]);
    if (!r.downward_directed) continue;
    // Down-closure reduces to removing one element at a time.
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!(m >> i & 1u)) continue;
      if (const auto lost = rows[m] & ~rows[m & ~(1u << i)]) {
        r.downward_directed = false;
        IndexSet big, small;
        for (std::uint32_t j = 0; j < n; ++j)
          if (m >> j & 1u) {
            big.push_back(j);
            if (j != i) small.push_back(j);
          }
        const auto& alpha = universe[static_cast<std::uint32_t>(std::countr_zero(lost))];
        r.downward_violation = "(" + print_set(universe.formulas_of(big)) + ", " + print(alpha) + ") in " +
                               rho.name() + " but (" + print_set(universe.formulas_of(small)) + ", " +
                               print(alpha) + ") is not";
        break;
      }
    }
  }
  return r;
}

}  // namespace relatio
