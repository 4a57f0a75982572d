#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relatio/syntax.hpp"

namespace relatio {

/// A Hilbert derivation: each step is a hypothesis or the conclusion of a
/// named rule applied to strictly earlier steps.
struct Derivation {
  struct Step {
    Formula formula;
    std::optional<std::string> rule;  // empty for hypotheses
    std::vector<std::size_t> premises;
  };
  std::vector<Step> steps;
};

/// Assignment of matrix value names to variables.
using Valuation = std::vector<std::pair<std::string, std::string>>;

/// The queried pair is listed in an extensional table.
struct TableCertificate {};

/// Every listed valuation designates all premises, and each of them
/// designates the goal; `checked` valuations were swept in total.
struct MatrixCertificate {
  std::vector<std::string> variables;
  std::size_t checked = 0;
  std::vector<Valuation> designating;
};

struct Verdict;

/// A companion query succeeded through `subset`, which the relation admits
/// and the base structure proves with `base`.
struct SubsetCertificate {
  FormulaSet subset;
  std::shared_ptr<const Verdict> base;
};

using Certificate = std::variant<TableCertificate, MatrixCertificate, Derivation, SubsetCertificate>;

enum class Outcome { Proved, Refuted, Exhausted };

/// Full refutations are definitive; within-universe ones only exclude
/// derivations whose every intermediate formula lies in the search universe.
enum class Scope { Full, WithinUniverse };

struct Verdict {
  Outcome outcome = Outcome::Refuted;
  Certificate certificate;            // meaningful when Proved
  Scope scope = Scope::Full;          // meaningful when Refuted
  std::optional<Valuation> witness;   // counter-valuation for matrix refutations
  std::string report;                 // budget report when Exhausted

  static Verdict proved(Certificate c) {
    Verdict v;
    v.outcome = Outcome::Proved;
    v.certificate = std::move(c);
    return v;
  }
  static Verdict refuted(Scope scope, std::optional<Valuation> witness = std::nullopt) {
    Verdict v;
    v.outcome = Outcome::Refuted;
    v.scope = scope;
    v.witness = std::move(witness);
    return v;
  }
  static Verdict exhausted(std::string report) {
    Verdict v;
    v.outcome = Outcome::Exhausted;
    v.report = std::move(report);
    return v;
  }

  bool proved() const { return outcome == Outcome::Proved; }
  bool refuted() const { return outcome == Outcome::Refuted; }
  bool exhausted() const { return outcome == Outcome::Exhausted; }
};

std::string to_string(Outcome o);
std::string to_string(Scope s);

/// Multi-line human-readable rendering of a verdict and its certificate.
std::string describe(const Verdict& v);

}  // namespace relatio
