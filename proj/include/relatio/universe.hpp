#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "relatio/syntax.hpp"

namespace relatio {

/// Sorted indices into a Universe; the finite premise sets of extensional
/// tables and dumps.
using IndexSet = std::vector<std::uint32_t>;

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const noexcept {
    std::size_t h = s.size();
    for (auto i : s) h = h * 1000003u ^ i;
    return h;
  }
};

/// Finite, duplicate-free, ordered list of formulas with index lookup.
class Universe {
 public:
  Universe() = default;
  /// Keeps the first occurrence of each formula.
  explicit Universe(std::vector<Formula> formulas);

  /// Every formula over `variables` and `sig` whose connective nesting depth
  /// is at most `depth` (variables and constants have depth 0), ordered by
  /// depth, then connective order, then argument order.
  static Universe up_to_depth(const Signature& sig, const std::vector<std::string>& variables, std::size_t depth);

  std::size_t size() const { return formulas_.size(); }
  bool empty() const { return formulas_.empty(); }
  const Formula& operator[](std::size_t i) const { return formulas_[i]; }
  auto begin() const { return formulas_.begin(); }
  auto end() const { return formulas_.end(); }
  const std::vector<Formula>& formulas() const { return formulas_; }

  std::optional<std::uint32_t> index_of(const Formula& f) const;
  bool contains(const Formula& f) const { return index_of(f).has_value(); }

  /// Throws OutOfUniverse if some member is missing.
  IndexSet indices(const FormulaSet& set) const;
  std::uint32_t index(const Formula& f) const;
  FormulaSet formulas_of(const IndexSet& set) const;

  /// Adds `f` and all of its subformulas that are not yet present.
  void insert_with_subformulas(const Formula& f);

  friend bool operator==(const Universe& a, const Universe& b) { return a.formulas_ == b.formulas_; }

 private:
  void push(const Formula& f);

  std::vector<Formula> formulas_;
  std::unordered_map<Formula, std::uint32_t, FormulaHash> index_;
};

/// Calls `fn(const IndexSet&)` for every subset of {0..n-1} with at most
/// `max_size` elements, in order of size and then lexicographically.
template <typename Fn>
void for_each_subset_up_to(std::uint32_t n, std::size_t max_size, Fn&& fn) {
  IndexSet current;
  fn(static_cast<const IndexSet&>(current));
  for (std::size_t k = 1; k <= max_size && k <= n; ++k) {
    current.resize(k);
    for (std::uint32_t i = 0; i < k; ++i) current[i] = i;
    while (true) {
      fn(static_cast<const IndexSet&>(current));
      std::size_t i = k;
      while (i > 0 && current[i - 1] == n - k + (i - 1)) --i;
      if (i == 0) break;
      ++current[i - 1];
      for (std::size_t j = i; j < k; ++j) current[j] = current[j - 1] + 1;
    }
  }
}

/// Number of subsets of an n-set with at most k elements, saturating at
/// `limit + 1`.
std::size_t count_subsets_up_to(std::size_t n, std::size_t k, std::size_t limit);

}  // namespace relatio
