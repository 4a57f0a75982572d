#include <gtest/gtest.h>

#include "relatio/companion.hpp"
#include "relatio/error.hpp"
#include "relatio/matrix.hpp"
#include "relatio/oracle.hpp"
#include "relatio/samples.hpp"

using namespace relatio;

namespace {

const Signature sig = connective_signature();
Formula P(const char* text) { return parse(text, sig); }
FormulaSet S(std::initializer_list<const char*> xs) {
  FormulaSet out;
  for (auto x : xs) out.insert(P(x));
  return out;
}

StructurePtr cpc() { return std::make_shared<const MatrixStructure>(classical_matrix()); }

// Answers from a fixed rule, for aggregation tests.
class Scripted : public LogicalStructure {
 public:
  using Rule = std::function<Verdict(const FormulaSet&, const Formula&)>;
  explicit Scripted(Rule rule, bool mono = false) : rule_(std::move(rule)), mono_(mono) {}
  Verdict entail(const FormulaSet& g, const Formula& a, const Budget&) const override { return rule_(g, a); }
  bool monotone() const override { return mono_; }
  std::string describe() const override { return "scripted"; }

 private:
  Rule rule_;
  bool mono_;
};

}  // namespace

TEST(Companion, LeftVariableInclusionOverClassical) {
  const CompanionStructure c(cpc(), left_inclusion());
  EXPECT_TRUE(c.uses_shortcut());
  EXPECT_TRUE(companion_entails(c, S({"p", "(p > q)"}), P("q")).refuted());
  const auto v = companion_entails(c, S({"p", "q"}), P("(p & q)"));
  ASSERT_TRUE(v.proved());
  EXPECT_EQ(std::get<SubsetCertificate>(v.certificate).subset, S({"p", "q"}));
  EXPECT_TRUE(companion_entails(c, S({"p", "~p"}), P("q")).refuted());
}

TEST(Companion, PureExcludesEmptySubset) {
  auto base = std::make_shared<const Scripted>(
      [](const FormulaSet&, const Formula& a) {
        return a == P("t") ? Verdict::proved(TableCertificate{}) : Verdict::refuted(Scope::Full);
      },
      true);
  EXPECT_TRUE(companion_entails(CompanionStructure(base, total_relation(), true), {}, P("t")).refuted());
  EXPECT_TRUE(companion_entails(CompanionStructure(base, total_relation(), false), {}, P("t")).proved());
}

TEST(Companion, AggregationOrder) {
  // {p} proves, {q} exhausts, everything else refutes.
  auto base = std::make_shared<const Scripted>([](const FormulaSet& g, const Formula&) {
    if (g == S({"p"})) return Verdict::proved(TableCertificate{});
    if (g == S({"q"})) return Verdict::exhausted("cap");
    return Verdict::refuted(Scope::WithinUniverse);
  });
  const CompanionStructure c(base, total_relation());
  EXPECT_FALSE(c.uses_shortcut());
  EXPECT_TRUE(companion_entails(c, S({"p", "q"}), P("r")).proved());
  EXPECT_TRUE(companion_entails(c, S({"q", "r"}), P("r")).exhausted());
  const auto v = companion_entails(c, S({"r"}), P("r"));
  ASSERT_TRUE(v.refuted());
  EXPECT_EQ(v.scope, Scope::WithinUniverse);
}

TEST(Companion, RelationExcludesAllSubsets) {
  const CompanionStructure c(cpc(), empty_relation());
  const auto v = companion_entails(c, S({"p"}), P("p"));
  ASSERT_TRUE(v.refuted());
  EXPECT_EQ(v.scope, Scope::Full);
}

TEST(Companion, PremiseLimit) {
  Limits small;
  small.max_premises = 2;
  const CompanionStructure c(cpc(), total_relation(), false, small);
  try {
    c.entail(S({"p", "q", "r"}), P("p"), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PremiseSetTooLarge);
  }
  EXPECT_THROW(CompanionStructure(nullptr, total_relation()), Error);
}

TEST(Companion, ShortcutAgreesWithSweep) {
  const auto u = Universe::up_to_depth(sig, {"p", "q"}, 1);
  for (const auto& rho : {left_inclusion(), intersection_of(left_inclusion(), total_relation())}) {
    for (bool pure : {false, true}) {
      const CompanionStructure fast(cpc(), rho, pure);
      const CompanionStructure slow(cpc(), rho, pure, {}, false);
      EXPECT_TRUE(fast.uses_shortcut());
      EXPECT_FALSE(slow.uses_shortcut());
      for (std::uint32_t a = 0; a < u.size(); a += 2)
        for (std::uint32_t b = 1; b < u.size(); b += 3)
          for (std::uint32_t g = 0; g < u.size(); ++g) {
            const FormulaSet gamma{u[a], u[b]};
            EXPECT_EQ(fast.entail(gamma, u[g], {}).outcome, slow.entail(gamma, u[g], {}).outcome);
          }
    }
  }
}

TEST(Companion, PureWithinNonPure) {
  const auto u = Universe::up_to_depth(sig, {"p", "q"}, 1);
  const auto plain = dump(CompanionStructure(cpc(), right_inclusion()), u, 2);
  const auto pure = dump(CompanionStructure(cpc(), right_inclusion(), true), u, 2);
  EXPECT_TRUE(subset_tables(pure, plain).holds);
}

TEST(Relations, VariableInclusion) {
  EXPECT_TRUE(rel_L(S({"(p & q)"}), P("(p | q)")));
  EXPECT_FALSE(rel_L(S({"r"}), P("p")));
  EXPECT_TRUE(rel_L({}, P("p")));
  EXPECT_TRUE(rel_PR(S({"p", "q"}), P("(p & q)")));
  EXPECT_FALSE(rel_PR(S({"p"}), P("(p & q)")));
  const Signature with_const{{"T", 0}};
  EXPECT_TRUE(rel_PR({}, parse("T", with_const)));
}

TEST(Relations, RightWithAntitheorems) {
  const DeclaredAntitheorems declared({S({"p", "~p"})});
  EXPECT_TRUE(rel_R(S({"p", "~p"}), P("r"), declared));
  const NoAntitheorems never;
  EXPECT_TRUE(rel_R(S({"p", "q"}), P("(p | q)"), never));
  EXPECT_FALSE(rel_R(S({"p"}), P("q"), never));
  const MatrixAntitheorems semantic(classical_matrix());
  EXPECT_EQ(semantic.is_antitheorem(S({"p", "~p"})), Tri::Yes);
  EXPECT_EQ(semantic.is_antitheorem(S({"p"})), Tri::No);
  const SampledAntitheorems sampled(cpc(), {}, {P("q")});
  EXPECT_EQ(sampled.is_antitheorem(S({"p"})), Tri::No);
  EXPECT_EQ(sampled.is_antitheorem(S({"p", "~p"})), Tri::Unknown);
}

TEST(Relations, Nontriviality) {
  const MatrixStructure m(classical_matrix());
  EXPECT_FALSE(rel_nontrivial(m, S({"p", "~p"}), {P("q")}));
  EXPECT_TRUE(rel_nontrivial(m, S({"p"}), {P("q")}));
  EXPECT_TRUE(rel_nontrivial(m, {}, {P("q")}));
  const Scripted stuck([](const FormulaSet&, const Formula&) { return Verdict::exhausted("cap"); });
  try {
    rel_nontrivial(stuck, S({"p"}), {P("q")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndeterminateNontriviality);
  }
}

TEST(Relations, Paraconsistentization) {
  const Relation pp = paraconsistentization(cpc(), {P("q"), P("r")});
  const CompanionStructure c(cpc(), pp);
  EXPECT_TRUE(c.entail(S({"p", "~p"}), P("q"), {}).refuted());
  EXPECT_TRUE(c.entail(S({"p", "(p > q)"}), P("q"), {}).proved());
}

TEST(Relations, Classify) {
  const Universe u(std::vector<Formula>{P("p"), P("q"), P("(p & q)")});
  EXPECT_TRUE(classify(left_inclusion(), u).downward_directed);
  const auto pr = classify(right_inclusion(), u);
  EXPECT_FALSE(pr.downward_directed);
  ASSERT_TRUE(pr.downward_violation.has_value());
  EXPECT_TRUE(classify(empty_relation(), u).downward_directed);
  EXPECT_FALSE(classify(empty_relation(), u).contains_empty);
  EXPECT_TRUE(classify(left_inclusion(), u).contains_empty);
  EXPECT_EQ(classify(total_relation(), u).max_reach, 3u);
}

TEST(Relations, DeclaredFlagsMatchClassification) {
  const auto u = Universe::up_to_depth(lattice_signature(), {"p", "q"}, 1);
  auto tri = [](bool b) { return b ? Tri::Yes : Tri::No; };
  for (const auto& rho : {left_inclusion(), right_inclusion(), total_relation(), empty_relation(),
                          union_of(left_inclusion(), right_inclusion()),
                          intersection_of(left_inclusion(), total_relation())}) {
    const auto r = classify(rho, u);
    if (rho.flags().downward_directed != Tri::Unknown)
      EXPECT_EQ(rho.flags().downward_directed, tri(r.downward_directed)) << rho.name();
    if (rho.flags().contains_empty == Tri::Yes) EXPECT_TRUE(r.contains_empty) << rho.name();
  }
}

TEST(Relations, FromStructure) {
  const Universe u(std::vector<Formula>{P("p"), P("q")});
  auto table = std::make_shared<const ExtensionalStructure>(u, std::vector<Pair>{{{0}, 1}});
  const Relation r = from_structure(table);
  EXPECT_TRUE(r(S({"p"}), P("q")));
  EXPECT_FALSE(r(S({"q"}), P("p")));
  EXPECT_TRUE(from_structure(cpc())(S({"p", "(p > q)"}), P("q")));
  const Relation starved = from_structure(std::make_shared<const HilbertLogic>(lattice_s1(), Universe::up_to_depth(lattice_signature(), {"p", "q"}, 1)), Budget{0});
  EXPECT_TRUE(starved.flags().conservative);
  EXPECT_FALSE(starved(FormulaSet{parse("(p & q)", lattice_signature())}, parse("p", lattice_signature())));
}

TEST(Relations, Combinators) {
  const auto l_or_pr = union_of(left_inclusion(), right_inclusion());
  const auto l_and_pr = intersection_of(left_inclusion(), right_inclusion());
  EXPECT_TRUE(l_or_pr(S({"p"}), P("p")));
  EXPECT_FALSE(l_and_pr(S({"p"}), P("(p | q)")));
  EXPECT_TRUE(l_and_pr(S({"(p & q)"}), P("(p | q)")));
}

TEST(Relations, TableRelation) {
  const Universe u(std::vector<Formula>{P("p"), P("q")});
  const Relation t = table_relation("t", u, {{{0}, 1}});
  EXPECT_TRUE(t(S({"p"}), P("q")));
  EXPECT_FALSE(t(S({"r"}), P("q")));
  EXPECT_EQ(t.flags().downward_directed, Tri::No);
}
