#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "relatio/structure.hpp"

namespace relatio {

/// Finite logical matrix: truth values, a designated subset and one total
/// table per connective.
class Matrix {
 public:
  using Value = std::uint8_t;

  Matrix(std::string name, std::vector<std::string> values, const std::vector<std::string>& designated);

  /// `outputs` lists the result for every argument tuple in lexicographic
  /// order of value indices, first argument most significant.
  void add_table(const std::string& symbol, std::size_t arity, std::vector<Value> outputs);
  void add_table(const std::string& symbol, std::size_t arity, const std::vector<std::string>& outputs);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& values() const { return values_; }
  std::size_t value_count() const { return values_.size(); }
  Value value_index(const std::string& name) const;
  bool designated(Value v) const { return designated_[v]; }
  bool has_table(const std::string& symbol) const { return tables_.contains(symbol); }

  /// `assignment[i]` is the value of `variables[i]`; throws MissingTable for
  /// connectives without a table.
  Value evaluate(const Formula& f, std::span<const std::string> variables, std::span<const Value> assignment) const;

 private:
  struct Table {
    std::size_t arity;
    std::vector<Value> outputs;
  };

  std::string name_;
  std::vector<std::string> values_;
  std::vector<bool> designated_;
  std::map<std::string, Table, std::less<>> tables_;
};

/// Local matrix consequence: every valuation of the query's variables that
/// designates all premises designates the goal.
Verdict matrix_entails(const Matrix& m, const FormulaSet& premises, const Formula& goal,
                       const Limits& limits = {});

class MatrixStructure : public LogicalStructure {
 public:
  explicit MatrixStructure(Matrix matrix, Limits limits = {}) : matrix_(std::move(matrix)), limits_(limits) {}

  const Matrix& matrix() const { return matrix_; }

  Verdict entail(const FormulaSet& premises, const Formula& goal, const Budget& budget) const override;
  bool monotone() const override { return true; }
  std::string describe() const override { return "matrix " + matrix_.name(); }

 private:
  Matrix matrix_;
  Limits limits_;
};

/// Two-valued classical matrix over {~, &, |, >}.
Matrix classical_matrix();
/// Three-valued paraconsistent weak Kleene matrix over {~, &, |, >}: values
/// 0, e, 1 with e infectious and designated {e, 1}.
Matrix weak_kleene_matrix();

}  // namespace relatio
