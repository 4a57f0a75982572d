#include "relatio/universe.hpp"

#include <algorithm>

#include "relatio/error.hpp"

namespace relatio {

Universe::Universe(std::vector<Formula> formulas) {
  for (const auto& f : formulas) push(f);
}

void Universe::push(const Formula& f) {
  if (index_.contains(f)) return;
  index_.emplace(f, static_cast<std::uint32_t>(formulas_.size()));
  formulas_.push_back(f);
}

Universe Universe::up_to_depth(const Signature& sig, const std::vector<std::string>& variables, std::size_t depth) {
  Universe u;
  for (const auto& v : variables) u.push(Formula::var(v));
  for (const auto& c : sig.connectives())
    if (c.arity == 0) u.push(Formula::app(c.symbol));

  for (std::size_t level = 1; level <= depth; ++level) {
    const std::vector<Formula> previous = u.formulas_;
    const std::size_t n = previous.size();
    for (const auto& c : sig.connectives()) {
      if (c.arity == 0) continue;
      // Odometer over previous^arity; only tuples containing a formula of the
      // previous level produce new members, push() drops the rest.
      std::vector<std::size_t> digits(c.arity, 0);
      while (true) {
        bool fresh = false;
        std::vector<Formula> args;
        args.reserve(c.arity);
        for (auto d : digits) {
          args.push_back(previous[d]);
          fresh = fresh || previous[d].depth() + 1 == level;
        }
        if (fresh) u.push(Formula::app(c.symbol, std::move(args)));
        std::size_t i = c.arity;
        while (i > 0 && ++digits[i - 1] == n) digits[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  return u;
}

std::optional<std::uint32_t> Universe::index_of(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Universe::index(const Formula& f) const {
  auto i = index_of(f);
  if (!i) throw Error(ErrorCode::OutOfUniverse, print(f) + " is not in the universe");
  return *i;
}

IndexSet Universe::indices(const FormulaSet& set) const {
  IndexSet out;
  out.reserve(set.size());
  for (const auto& f : set) out.push_back(index(f));
  std::sort(out.begin(), out.end());
  return out;
}

FormulaSet Universe::formulas_of(const IndexSet& set) const {
  FormulaSet out;
  for (auto i : set) out.insert(formulas_.at(i));
  return out;
}

void Universe::insert_with_subformulas(const Formula& f) {
  for (const auto& a : f.args()) insert_with_subformulas(a);
  push(f);
}

std::size_t count_subsets_up_to(std::size_t n, std::size_t k, std::size_t limit) {
  std::size_t total = 0;
  std::size_t binom = 1;  // C(n, i)
  for (std::size_t i = 0; i <= k && i <= n; ++i) {
    // binom <= total <= limit here, so the product cannot overflow for sane limits
    if (i > 0) binom = binom * (n - i + 1) / i;
    total += binom;
    if (total > limit) return limit + 1;
  }
  return total;
}

}  // namespace relatio
