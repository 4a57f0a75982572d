#include "relatio/matrix.hpp"

#include <algorithm>

#include "relatio/error.hpp"

namespace relatio {

Matrix::Matrix(std::string name, std::vector<std::string> values, const std::vector<std::string>& designated)
    : name_(std::move(name)), values_(std::move(values)), designated_(values_.size(), false) {
  if (values_.empty() || values_.size() > 255) throw Error(ErrorCode::InvalidDefinition, "matrix needs 1..255 values");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (std::count(values_.begin(), values_.end(), values_[i]) != 1)
      throw Error(ErrorCode::InvalidDefinition, "duplicate truth value '" + values_[i] + "'");
  for (const auto& d : designated) designated_[value_index(d)] = true;
  const auto n_designated = std::count(designated_.begin(), designated_.end(), true);
  if (n_designated == 0 || n_designated == static_cast<long>(values_.size()))
    throw Error(ErrorCode::InvalidDefinition, "designated values must form a nonempty proper subset");
}

Matrix::Value Matrix::value_index(const std::string& name) const {
  auto it = std::find(values_.begin(), values_.end(), name);
  if (it == values_.end()) throw Error(ErrorCode::InvalidDefinition, "unknown truth value '" + name + "'");
  return static_cast<Value>(it - values_.begin());
}

void Matrix::add_table(const std::string& symbol, std::size_t arity, std::vector<Value> outputs) {
  std::size_t expected = 1;
  for (std::size_t i = 0; i < arity; ++i) expected *= values_.size();
  if (outputs.size() != expected)
    throw Error(ErrorCode::InvalidDefinition, "table for '" + symbol + "' needs " + std::to_string(expected) +
                                                  " entries, got " + std::to_string(outputs.size()));
  for (auto v : outputs)
    if (v >= values_.size()) throw Error(ErrorCode::InvalidDefinition, "table for '" + symbol + "' has a bad value");
  tables_[symbol] = Table{arity, std::move(outputs)};
}

void Matrix::add_table(const std::string& symbol, std::size_t arity, const std::vector<std::string>& outputs) {
  std::vector<Value> idx;
  idx.reserve(outputs.size());
  for (const auto& o : outputs) idx.push_back(value_index(o));
  add_table(symbol, arity, std::move(idx));
}

Matrix::Value Matrix::evaluate(const Formula& f, std::span<const std::string> variables,
                               std::span<const Value> assignment) const {
  if (f.is_variable()) {
    auto it = std::lower_bound(variables.begin(), variables.end(), f.symbol());
    if (it == variables.end() || *it != f.symbol())
      throw Error(ErrorCode::InvalidDefinition, "no value assigned to " + f.symbol());
    return assignment[static_cast<std::size_t>(it - variables.begin())];
  }
  if (f.is_meta()) throw Error(ErrorCode::InvalidDefinition, "cannot evaluate a metavariable");
  auto t = tables_.find(f.symbol());
  if (t == tables_.end() || t->second.arity != f.args().size())
    throw Error(ErrorCode::MissingTable, "matrix " + name_ + " has no table for '" + f.symbol() + "'");
  std::size_t offset = 0;
  for (const auto& a : f.args()) offset = offset * values_.size() + evaluate(a, variables, assignment);
  return t->second.outputs[offset];
}

namespace {

void require_tables(const Matrix& m, const Formula& f) {
  if (f.is_leaf()) return;
  if (!m.has_table(f.symbol()))
    throw Error(ErrorCode::MissingTable, "matrix " + m.name() + " has no table for '" + f.symbol() + "'");
  for (const auto& a : f.args()) require_tables(m, a);
}

}  // namespace

Verdict matrix_entails(const Matrix& m, const FormulaSet& premises, const Formula& goal, const Limits& limits) {
  for (const auto& p : premises) require_tables(m, p);
  require_tables(m, goal);

  VarSet vs = vars_set(premises);
  vs.unite(vars(goal));
  const std::vector<std::string>& variables = vs.names();  // sorted, as evaluate expects

  std::size_t total = 1;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    total *= m.value_count();
    if (total > limits.max_valuations)
      throw Error(ErrorCode::UniverseTooLarge, "valuation sweep exceeds the configured cap");
  }

  auto valuation_of = [&](const std::vector<Matrix::Value>& a) {
    Valuation v;
    for (std::size_t i = 0; i < variables.size(); ++i) v.emplace_back(variables[i], m.values()[a[i]]);
    return v;
  };

  MatrixCertificate cert;
  cert.variables = variables;
  std::vector<Matrix::Value> assignment(variables.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    ++cert.checked;
    const bool all_designated = std::all_of(premises.begin(), premises.end(), [&](const Formula& p) {
      return m.designated(m.evaluate(p, variables, assignment));
    });
    if (all_designated) {
      if (!m.designated(m.evaluate(goal, variables, assignment)))
        return Verdict::refuted(Scope::Full, valuation_of(assignment));
      cert.designating.push_back(valuation_of(assignment));
    }
    for (std::size_t i = variables.size(); i > 0; --i) {
      if (++assignment[i - 1] < m.value_count()) break;
      assignment[i - 1] = 0;
    }
  }
  return Verdict::proved(std::move(cert));
}

Verdict MatrixStructure::entail(const FormulaSet& premises, const Formula& goal, const Budget&) const {
  return matrix_entails(matrix_, premises, goal, limits_);
}

Matrix classical_matrix() {
  Matrix m("CPC", {"0", "1"}, {"1"});
  m.add_table("~", 1, std::vector<Matrix::Value>{1, 0});
  m.add_table("&", 2, std::vector<Matrix::Value>{0, 0, 0, 1});
  m.add_table("|", 2, std::vector<Matrix::Value>{0, 1, 1, 1});
  m.add_table(">", 2, std::vector<Matrix::Value>{1, 1, 0, 1});
  return m;
}

Matrix weak_kleene_matrix() {
  // value order 0, e, 1
  Matrix m("PWK", {"0", "e", "1"}, {"e", "1"});
  m.add_table("~", 1, std::vector<std::string>{"1", "e", "0"});
  m.add_table("&", 2, std::vector<std::string>{"0", "e", "0",  //
                                               "e", "e", "e",  //
                                               "0", "e", "1"});
  m.add_table("|", 2, std::vector<std::string>{"0", "e", "1",  //
                                               "e", "e", "e",  //
                                               "1", "e", "1"});
  m.add_table(">", 2, std::vector<std::string>{"1", "e", "1",  //
                                               "e", "e", "e",  //
                                               "0", "e", "1"});
  return m;
}

}  // namespace relatio
