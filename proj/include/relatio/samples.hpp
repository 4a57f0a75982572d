#pragma once

// Bundled systems: the conjunction/disjunction pair S1 ⊆ S2 whose restricted
// rules companions diverge, and a schema pool for generated Hilbert samples.

#include <vector>

#include "relatio/hilbert.hpp"

namespace relatio {

/// {&, |}, both binary.
Signature lattice_signature();
/// {~, &, |, >}.
Signature connective_signature();

/// R1: (A & B) / A and R2: A / (A | B).
HilbertStructure lattice_s1();
/// S1 plus R3: (A & B) / (A | B).
HilbertStructure lattice_s2();

/// Parses "name: p1, p2 / c" ("name: / c" for axioms) over `sig`.
RuleSchema parse_schema(std::string_view text, const Signature& sig);

/// Schemata over connective_signature() used by the generators.
std::vector<RuleSchema> schema_pool();
/// Pool members whose every instance has var(premises) ⊆ var(conclusion).
std::vector<RuleSchema> inclusion_safe_pool();

}  // namespace relatio
