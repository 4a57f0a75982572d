#include "relatio/hilbert.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

#include "relatio/error.hpp"

namespace relatio {

bool InstanceFilter::admits(const RuleInstance& instance) const {
  return std::any_of(any_of.begin(), any_of.end(),
                     [&](const Relation& r) { return r.contains(instance.premises, instance.conclusion); });
}

std::string InstanceFilter::describe() const {
  std::string out = "{";
  for (std::size_t i = 0; i < any_of.size(); ++i) out += (i ? "," : "") + any_of[i].name();
  return out + "}";
}

HilbertStructure::HilbertStructure(Signature sig, std::vector<RuleSchema> schemata,
                                   std::vector<InstanceFilter> filters)
    : sig_(std::move(sig)), schemata_(std::move(schemata)), filters_(std::move(filters)) {
  for (std::size_t i = 0; i < schemata_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (schemata_[i].name == schemata_[j].name)
        throw Error(ErrorCode::InvalidDefinition, "duplicate schema name '" + schemata_[i].name + "'");
}

const RuleSchema* HilbertStructure::find_schema(const std::string& name) const {
  for (const auto& s : schemata_)
    if (s.name == name) return &s;
  return nullptr;
}

bool HilbertStructure::admits(const RuleInstance& instance) const {
  return std::all_of(filters_.begin(), filters_.end(), [&](const InstanceFilter& f) { return f.admits(instance); });
}

HilbertStructure HilbertStructure::with_filter(InstanceFilter filter) const {
  HilbertStructure out = *this;
  out.filters_.push_back(std::move(filter));
  return out;
}

std::string HilbertStructure::describe() const {
  std::string out = "hilbert[";
  for (std::size_t i = 0; i < schemata_.size(); ++i) out += (i ? "," : "") + schemata_[i].name;
  out += "]";
  for (const auto& f : filters_) out += "^" + f.describe();
  return out;
}

HilbertStructure restrict_rules(const HilbertStructure& h) { return h.with_filter({{left_inclusion()}}); }

HilbertStructure restrict_by(const HilbertStructure& h, std::vector<Relation> pi) {
  return h.with_filter({std::move(pi)});
}

// ---------------------------------------------------------------------------
// Grounding

namespace {

// Narrows the formulas a partly ground pattern can match: by a ground
// argument when there is one, else by the head connective.
class CandidateIndex {
 public:
  explicit CandidateIndex(const Universe& u) {
    for (std::uint32_t i = 0; i < u.size(); ++i) {
      all_.push_back(i);
      const Formula& f = u[i];
      if (f.is_leaf()) continue;
      by_head_[f.symbol()].push_back(i);
      const auto args = f.args();
      for (std::size_t k = 0; k < args.size(); ++k) parents_[Key{f.symbol(), k, args[k]}].push_back(i);
    }
  }

  const std::vector<std::uint32_t>& candidates(const Formula& pattern) const {
    if (pattern.is_leaf()) return all_;
    const auto args = pattern.args();
    for (std::size_t k = 0; k < args.size(); ++k) {
      if (args[k].has_metavariables()) continue;
      const auto it = parents_.find(Key{pattern.symbol(), k, args[k]});
      return it == parents_.end() ? none_ : it->second;
    }
    const auto it = by_head_.find(pattern.symbol());
    return it == by_head_.end() ? none_ : it->second;
  }

 private:
  struct Key {
    std::string symbol;
    std::size_t position;
    Formula child;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return std::hash<std::string>{}(k.symbol) * 31 + k.position * 1000003u + k.child.hash();
    }
  };

  std::vector<std::uint32_t> all_, none_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_head_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> parents_;
};

void instances_into(const RuleSchema& schema, const Universe& u, const CandidateIndex& index,
                    std::set<RuleInstance>& out) {
  std::function<void(std::size_t, const Substitution&, const Formula&)> premises_from;
  premises_from = [&](std::size_t i, const Substitution& binding, const Formula& conclusion) {
    if (i == schema.premises.size()) {
      RuleInstance inst{schema.name, {}, conclusion};
      for (const auto& p : schema.premises) inst.premises.insert(substitute(binding, p));
      out.insert(std::move(inst));
      return;
    }
    const Formula image = substitute(binding, schema.premises[i]);
    if (!image.has_metavariables()) {
      if (u.contains(image)) premises_from(i + 1, binding, conclusion);
      return;
    }
    for (auto c : index.candidates(image)) {
      Substitution extended = binding;
      if (match(image, u[c], extended)) premises_from(i + 1, extended, conclusion);
    }
  };
  for (auto c : index.candidates(schema.conclusion)) {
    Substitution binding;
    if (match(schema.conclusion, u[c], binding)) premises_from(0, binding, u[c]);
  }
}

}  // namespace

std::set<RuleInstance> instances(const RuleSchema& schema, const Universe& u) {
  std::set<RuleInstance> out;
  instances_into(schema, u, CandidateIndex(u), out);
  return out;
}

std::set<RuleInstance> surviving_instances(const HilbertStructure& h, const Universe& u) {
  const CandidateIndex index(u);
  std::set<RuleInstance> out;
  for (const auto& schema : h.schemata()) {
    std::set<RuleInstance> all;
    instances_into(schema, u, index, all);
    for (auto& inst : all)
      if (h.admits(inst)) out.insert(inst);
  }
  return out;
}

Grounding::Grounding(const HilbertStructure& h, Universe u) : universe_(std::move(u)) {
  const auto all = surviving_instances(h, universe_);
  instances_.assign(all.begin(), all.end());
  watchers_.resize(universe_.size());
  ground_.reserve(instances_.size());
  for (std::uint32_t k = 0; k < instances_.size(); ++k) {
    Ground g{universe_.indices(instances_[k].premises), universe_.index(instances_[k].conclusion)};
    for (auto p : g.premises) watchers_[p].push_back(k);
    ground_.push_back(std::move(g));
  }
}

Grounding::Result Grounding::close(const IndexSet& premises, std::size_t step_cap, long stop_at) const {
  Result r;
  r.known.assign(universe_.size(), false);
  r.justification.assign(universe_.size(), -1);
  std::vector<std::size_t> missing(ground_.size());
  std::deque<std::uint32_t> fireable;
  for (std::uint32_t k = 0; k < ground_.size(); ++k) {
    missing[k] = ground_[k].premises.size();
    if (missing[k] == 0) fireable.push_back(k);
  }

  auto learn = [&](std::uint32_t f) {
    r.known[f] = true;
    r.order.push_back(f);
    for (auto k : watchers_[f])
      if (--missing[k] == 0) fireable.push_back(k);
  };

  for (auto p : premises)
    if (!r.known[p]) learn(p);

  while (!fireable.empty()) {
    if (stop_at >= 0 && r.known[static_cast<std::size_t>(stop_at)]) break;
    const auto k = fireable.front();
    const auto c = ground_[k].conclusion;
    if (r.known[c]) {
      fireable.pop_front();
      continue;
    }
    if (r.steps >= step_cap) {
      r.capped = true;
      break;
    }
    fireable.pop_front();
    ++r.steps;
    r.justification[c] = static_cast<long>(k);
    learn(c);
  }
  return r;
}

Derivation Grounding::derivation(const Result& r, std::uint32_t goal) const {
  // Collect the ancestors of the goal, then emit them in the order learned.
  std::vector<bool> needed(universe_.size(), false);
  std::vector<std::uint32_t> stack{goal};
  while (!stack.empty()) {
    const auto f = stack.back();
    stack.pop_back();
    if (needed[f]) continue;
    needed[f] = true;
    if (r.justification[f] >= 0)
      for (auto p : ground_[static_cast<std::size_t>(r.justification[f])].premises) stack.push_back(p);
  }
  Derivation d;
  std::vector<std::size_t> step_of(universe_.size(), 0);
  for (auto f : r.order) {
    if (!needed[f]) continue;
    Derivation::Step step{universe_[f], std::nullopt, {}};
    if (r.justification[f] >= 0) {
      const auto k = static_cast<std::size_t>(r.justification[f]);
      step.rule = instances_[k].schema;
      for (auto p : ground_[k].premises) step.premises.push_back(step_of[p]);
    }
    step_of[f] = d.steps.size();
    d.steps.push_back(std::move(step));
  }
  return d;
}

ClosureResult closure(const HilbertStructure& h, const FormulaSet& premises, const Universe& u,
                      std::size_t step_cap) {
  const Grounding g(h, u);
  const auto r = g.close(u.indices(premises), step_cap);
  ClosureResult out;
  out.capped = r.capped;
  out.steps = r.steps;
  for (std::uint32_t i = 0; i < u.size(); ++i)
    if (r.known[i]) out.formulas.insert(u[i]);
  return out;
}

namespace {

Verdict verdict_for(const Grounding& g, const Grounding::Result& r, std::uint32_t goal, std::size_t step_cap) {
  if (r.known[goal]) return Verdict::proved(g.derivation(r, goal));
  if (r.capped) return Verdict::exhausted("step cap " + std::to_string(step_cap) + " reached");
  return Verdict::refuted(Scope::WithinUniverse);
}

}  // namespace

Verdict derive(const HilbertStructure& h, const FormulaSet& premises, const Formula& goal, const Universe& u,
               std::size_t step_cap) {
  const auto gamma = u.indices(premises);
  const auto target = u.index(goal);
  const Grounding g(h, u);
  return verdict_for(g, g.close(gamma, step_cap, target), target, step_cap);
}

// ---------------------------------------------------------------------------
// Replay

namespace {

// Assigns each schema premise to some ground premise so that the images
// cover `ground` exactly.
bool match_premises(const std::vector<Formula>& patterns, std::size_t i, const std::vector<Formula>& ground,
                    std::vector<bool>& used, Substitution& binding) {
  if (i == patterns.size()) return std::all_of(used.begin(), used.end(), [](bool b) { return b; });
  for (std::size_t j = 0; j < ground.size(); ++j) {
    Substitution extended = binding;
    if (!match(patterns[i], ground[j], extended)) continue;
    const bool was = used[j];
    used[j] = true;
    if (match_premises(patterns, i + 1, ground, used, extended)) {
      binding = std::move(extended);
      return true;
    }
    used[j] = was;
  }
  return false;
}

}  // namespace

bool check_derivation(const HilbertStructure& h, const FormulaSet& premises, const Formula& goal,
                      const Derivation& d, std::string* why) {
  auto fail = [&](std::string reason) {
    if (why) *why = std::move(reason);
    return false;
  };
  if (d.steps.empty()) return fail("empty derivation");
  if (!(d.steps.back().formula == goal)) return fail("last step is not the goal");
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& step = d.steps[i];
    const std::string at = "step " + std::to_string(i + 1) + ": ";
    if (!step.rule) {
      if (!premises.contains(step.formula)) return fail(at + print(step.formula) + " is not a hypothesis");
      continue;
    }
    const RuleSchema* schema = h.find_schema(*step.rule);
    if (!schema) return fail(at + "unknown rule " + *step.rule);
    RuleInstance inst{schema->name, {}, step.formula};
    for (auto p : step.premises) {
      if (p >= i) return fail(at + "premise does not precede the step");
      inst.premises.insert(d.steps[p].formula);
    }
    Substitution binding;
    if (!match(schema->conclusion, step.formula, binding))
      return fail(at + "conclusion does not match " + schema->name);
    const std::vector<Formula> ground(inst.premises.begin(), inst.premises.end());
    std::vector<bool> used(ground.size(), false);
    if (!match_premises(schema->premises, 0, ground, used, binding))
      return fail(at + "premises do not match " + schema->name);
    if (!h.admits(inst)) return fail(at + "instance of " + schema->name + " is filtered out");
  }
  return true;
}

// ---------------------------------------------------------------------------
// HilbertLogic

HilbertLogic::HilbertLogic(HilbertStructure h, Universe u) : h_(std::move(h)), grounding_(h_, std::move(u)) {}

Verdict HilbertLogic::entail(const FormulaSet& premises, const Formula& goal, const Budget& budget) const {
  const auto& u = grounding_.universe();
  const auto gamma = u.indices(premises);
  const auto target = u.index(goal);
  return verdict_for(grounding_, grounding_.close(gamma, budget.steps, target), target, budget.steps);
}

std::vector<Verdict> HilbertLogic::entail_each(const FormulaSet& premises, std::span<const Formula> goals,
                                               const Budget& budget) const {
  const auto& u = grounding_.universe();
  const auto gamma = u.indices(premises);
  std::vector<std::uint32_t> targets;
  targets.reserve(goals.size());
  for (const auto& g : goals) targets.push_back(u.index(g));
  const auto r = grounding_.close(gamma, budget.steps);
  std::vector<Verdict> out;
  out.reserve(goals.size());
  for (auto t : targets) out.push_back(verdict_for(grounding_, r, t, budget.steps));
  return out;
}

std::string HilbertLogic::describe() const {
  return h_.describe() + " over " + std::to_string(grounding_.universe().size()) + " formulas";
}

}  // namespace relatio
