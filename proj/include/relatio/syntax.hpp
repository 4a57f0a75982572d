#pragma once

// Formula algebra over a declared signature: construction, parsing, printing,
// variable extraction, substitution and pattern matching.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace relatio {

struct Connective {
  std::string symbol;
  std::size_t arity = 0;

  friend bool operator==(const Connective&, const Connective&) = default;
};

/// A finite list of connectives with pairwise distinct symbols.
///
/// A symbol is either an identifier that cannot be read as a variable (it
/// starts with an uppercase letter or '_') or a run of punctuation that does
/// not contain parentheses, commas, '?' or whitespace.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<Connective> connectives);

  void add(Connective connective);

  std::optional<std::size_t> arity(std::string_view symbol) const;
  bool contains(std::string_view symbol) const { return arity(symbol).has_value(); }

  const std::vector<Connective>& connectives() const { return connectives_; }
  bool empty() const { return connectives_.empty(); }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Connective> connectives_;
};

bool is_variable_token(std::string_view token);

/// Immutable formula value. Leaves are object variables or metavariables
/// ("?A"); inner nodes apply a connective to its arguments. Equality is
/// structural; copies share nodes.
class Formula {
 public:
  enum class Kind : std::uint8_t { Variable, Metavariable, Application };

  static Formula var(std::string name);
  static Formula meta(std::string name);
  static Formula app(std::string symbol, std::vector<Formula> args = {});

  Kind kind() const { return node_->kind; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_meta() const { return kind() == Kind::Metavariable; }
  bool is_leaf() const { return kind() != Kind::Application; }

  /// Variable name, metavariable name (without '?') or connective symbol.
  const std::string& symbol() const { return node_->symbol; }
  std::span<const Formula> args() const { return node_->args; }

  /// Sorted, duplicate-free object variables occurring in the formula.
  const std::vector<std::string>& variables() const { return node_->vars; }
  std::size_t depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }
  bool has_metavariables() const { return node_->has_meta; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string symbol;
    std::vector<Formula> args;
    std::vector<std::string> vars;
    std::size_t depth;
    std::size_t hash;
    bool has_meta;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

using FormulaSet = std::set<Formula>;

/// Finite set of variable tokens, kept sorted.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(std::vector<std::string> names);

  bool contains(std::string_view name) const;
  bool subset_of(const VarSet& other) const;
  void unite(std::span<const std::string> names);
  void unite(const VarSet& other) { unite(std::span<const std::string>(other.names_)); }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  auto begin() const { return names_.begin(); }
  auto end() const { return names_.end(); }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const VarSet&, const VarSet&) = default;

 private:
  std::vector<std::string> names_;
};

VarSet vars(const Formula& f);

template <typename Range>
VarSet vars_set(const Range& formulas) {
  VarSet out;
  for (const Formula& f : formulas) out.unite(std::span<const std::string>(f.variables()));
  return out;
}

/// Finite map from leaves (object variables or metavariables) to formulas;
/// every other leaf is left in place.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const Formula, Formula>> init);

  /// Binds `leaf`; returns false if it is already bound to something else.
  bool bind(const Formula& leaf, const Formula& image);
  const Formula* find(const Formula& leaf) const;
  std::size_t size() const { return map_.size(); }
  const std::map<Formula, Formula>& entries() const { return map_; }

 private:
  std::map<Formula, Formula> map_;
};

Formula substitute(const Substitution& s, const Formula& f);

/// One-sided matching: extends `binding` so that substitute(binding, pattern)
/// equals `ground`. Only metavariables are bound; object variables in the
/// pattern must match literally. On failure `binding` may hold partial
/// entries and should be discarded.
bool match(const Formula& pattern, const Formula& ground, Substitution& binding);

Formula parse(std::string_view text, const Signature& sig);

/// Parses a comma-separated list of formulas (commas nested inside
/// functional notation are not separators). Empty text yields an empty list.
std::vector<Formula> parse_list(std::string_view text, const Signature& sig);

std::string print(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

std::string print_set(const FormulaSet& set);

}  // namespace relatio
