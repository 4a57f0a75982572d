#include <gtest/gtest.h>

#include "relatio/error.hpp"
#include "relatio/hilbert.hpp"
#include "relatio/oracle.hpp"
#include "relatio/samples.hpp"

using namespace relatio;

namespace {

const Signature lat = lattice_signature();
Formula P(const char* text) { return parse(text, lat); }

const Universe& depth2() {
  static const Universe u = Universe::up_to_depth(lat, {"p", "q"}, 2);
  return u;
}

bool has_instance(const std::set<RuleInstance>& set, const FormulaSet& premises, const Formula& conclusion) {
  return std::any_of(set.begin(), set.end(),
                     [&](const RuleInstance& r) { return r.premises == premises && r.conclusion == conclusion; });
}

// Every assignment of the schema's metavariables to subformulas of U.
std::set<RuleInstance> naive_instances(const RuleSchema& schema, const Universe& u) {
  Universe pool;
  for (const auto& f : u) pool.insert_with_subformulas(f);
  std::vector<Formula> metas;
  std::function<void(const Formula&)> collect = [&](const Formula& f) {
    if (f.is_meta() && std::find(metas.begin(), metas.end(), f) == metas.end()) metas.push_back(f);
    for (const auto& a : f.args()) collect(a);
  };
  for (const auto& p : schema.premises) collect(p);
  collect(schema.conclusion);
  std::set<RuleInstance> out;
  std::vector<std::size_t> pick(metas.size(), 0);
  while (true) {
    Substitution s;
    for (std::size_t i = 0; i < metas.size(); ++i) s.bind(metas[i], pool[pick[i]]);
    RuleInstance inst{schema.name, {}, substitute(s, schema.conclusion)};
    bool inside = u.contains(inst.conclusion);
    for (const auto& p : schema.premises) {
      const Formula g = substitute(s, p);
      inside = inside && u.contains(g);
      inst.premises.insert(g);
    }
    if (inside) out.insert(inst);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == pool.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

}  // namespace

TEST(Instances, DisjunctionIntroduction) {
  const Universe u(std::vector<Formula>{P("p"), P("q"), P("(p | q)")});
  const auto r2 = parse_schema("R2: ?A / (?A | ?B)", lat);
  const auto got = instances(r2, u);
  EXPECT_TRUE(has_instance(got, {P("p")}, P("(p | q)")));
  EXPECT_EQ(got.size(), 1u);
  const Universe no_or(std::vector<Formula>{P("p"), P("q"), P("(p & q)")});
  EXPECT_TRUE(instances(r2, no_or).empty());
}

TEST(Instances, GroundSchema) {
  const auto ground = parse_schema("G: p / (p | q)", lat);
  const Universe with(std::vector<Formula>{P("p"), P("(p | q)")});
  const Universe without(std::vector<Formula>{P("p")});
  EXPECT_EQ(instances(ground, with).size(), 1u);
  EXPECT_TRUE(instances(ground, without).empty());
}

TEST(Instances, MatchNaiveEnumeration) {
  const Signature sig = connective_signature();
  const auto u = Universe::up_to_depth(sig, {"p"}, 1);
  Universe bigger = u;
  bigger.insert_with_subformulas(parse("((p & p) > ~p)", sig));
  bigger.insert_with_subformulas(parse("(~p | (p > p))", sig));
  for (const auto& schema : schema_pool()) {
    EXPECT_EQ(instances(schema, u), naive_instances(schema, u)) << schema.name;
    EXPECT_EQ(instances(schema, bigger), naive_instances(schema, bigger)) << schema.name;
  }
}

TEST(Instances, NonClosedUniverse) {
  // (p & q) is present without q; the index must still find it.
  const Universe u(std::vector<Formula>{P("(p & q)"), P("p")});
  const auto r1 = parse_schema("R1: (?A & ?B) / ?A", lat);
  EXPECT_EQ(instances(r1, u), naive_instances(r1, u));
  EXPECT_EQ(instances(r1, u).size(), 1u);
}

TEST(Closure, LatticeSystems) {
  const auto c1 = closure(lattice_s1(), {P("(p & q)")}, depth2(), 1000);
  EXPECT_TRUE(c1.formulas.contains(P("p")));
  EXPECT_TRUE(c1.formulas.contains(P("(p | q)")));
  EXPECT_FALSE(c1.capped);
  const auto c1re = closure(restrict_rules(lattice_s1()), {P("(p & q)")}, depth2(), 1000);
  EXPECT_FALSE(c1re.formulas.contains(P("(p | q)")));
  const HilbertStructure none(lat, {});
  EXPECT_EQ(closure(none, {P("(p & q)"), P("q")}, depth2(), 1000).formulas, (FormulaSet{P("(p & q)"), P("q")}));
}

TEST(Closure, MonotoneInPremisesAndUniverse) {
  const auto small = Universe::up_to_depth(lat, {"p", "q"}, 1);
  const auto h = lattice_s1();
  for (std::uint32_t a = 0; a < small.size(); ++a) {
    const auto base = closure(h, {small[a]}, small, 1000).formulas;
    const auto grown = closure(h, {small[a]}, depth2(), 1000).formulas;
    for (const auto& f : base) EXPECT_TRUE(grown.contains(f));
    for (std::uint32_t b = 0; b < small.size(); ++b) {
      const auto more = closure(h, {small[a], small[b]}, small, 1000).formulas;
      for (const auto& f : base) EXPECT_TRUE(more.contains(f));
    }
  }
}

TEST(Derive, RestrictedRulesPair) {
  const auto h2 = restrict_rules(lattice_s2());
  const auto v = derive(h2, {P("(p & q)")}, P("(p | q)"), depth2(), 1000);
  ASSERT_TRUE(v.proved());
  const auto& d = std::get<Derivation>(v.certificate);
  ASSERT_EQ(d.steps.size(), 2u);
  EXPECT_FALSE(d.steps[0].rule.has_value());
  EXPECT_EQ(d.steps[1].rule, "R3");
  EXPECT_TRUE(check_derivation(h2, {P("(p & q)")}, P("(p | q)"), d));

  const auto v1 = derive(restrict_rules(lattice_s1()), {P("(p & q)")}, P("(p | q)"), depth2(), 1000);
  ASSERT_TRUE(v1.refuted());
  EXPECT_EQ(v1.scope, Scope::WithinUniverse);
}

TEST(Derive, HypothesisAndCap) {
  const auto h = lattice_s1();
  const auto v = derive(h, {P("q")}, P("q"), depth2(), 0);
  ASSERT_TRUE(v.proved());
  EXPECT_EQ(std::get<Derivation>(v.certificate).steps.size(), 1u);
  EXPECT_TRUE(derive(h, {P("(p & q)")}, P("p"), depth2(), 0).exhausted());
  EXPECT_THROW(derive(h, {P("p")}, parse("(p & r)", lat), depth2(), 10), Error);
}

TEST(Derive, UnrestrictedDerivationReplays) {
  const auto v = derive(lattice_s1(), {P("(p & q)")}, P("(p | q)"), depth2(), 1000);
  ASSERT_TRUE(v.proved());
  const auto& d = std::get<Derivation>(v.certificate);
  EXPECT_EQ(d.steps.size(), 3u);
  EXPECT_TRUE(check_derivation(lattice_s1(), {P("(p & q)")}, P("(p | q)"), d));
  std::string why;
  EXPECT_FALSE(check_derivation(restrict_rules(lattice_s1()), {P("(p & q)")}, P("(p | q)"), d, &why));
  EXPECT_NE(why.find("filtered"), std::string::npos);
}

TEST(Replay, RejectsTampering) {
  const auto h = lattice_s1();
  Derivation d;
  d.steps.push_back({P("p"), std::nullopt, {}});
  d.steps.push_back({P("(q | p)"), "R2", {0}});
  std::string why;
  EXPECT_FALSE(check_derivation(h, {P("p")}, P("(q | p)"), d, &why));
  EXPECT_FALSE(check_derivation(h, {P("q")}, P("p"), Derivation{{{P("p"), std::nullopt, {}}}}, &why));
  EXPECT_NE(why.find("hypothesis"), std::string::npos);
  Derivation forward;
  forward.steps.push_back({P("(p | q)"), "R2", {1}});
  forward.steps.push_back({P("p"), std::nullopt, {}});
  EXPECT_FALSE(check_derivation(h, {P("p")}, P("p"), forward));
}

TEST(Restrict, InstanceLevelFilter) {
  const Universe u(std::vector<Formula>{P("p"), P("q"), P("(p & q)"), P("(p & p)"), P("(p | q)")});
  const auto re = surviving_instances(restrict_rules(lattice_s1()), u);
  EXPECT_FALSE(has_instance(re, {P("(p & q)")}, P("p")));
  EXPECT_TRUE(has_instance(re, {P("(p & p)")}, P("p")));
  for (const auto& inst : instances(*lattice_s1().find_schema("R2"), depth2()))
    EXPECT_TRUE(restrict_rules(lattice_s1()).admits(inst));
}

TEST(Restrict, IdempotentAndMatchesPiL) {
  for (const auto& h : {lattice_s1(), lattice_s2()}) {
    const auto once = surviving_instances(restrict_rules(h), depth2());
    EXPECT_EQ(surviving_instances(restrict_rules(restrict_rules(h)), depth2()), once);
    EXPECT_EQ(surviving_instances(restrict_by(h, {left_inclusion()}), depth2()), once);
  }
}

TEST(Restrict, EmptyAndTotalPi) {
  const auto h = lattice_s2();
  EXPECT_TRUE(surviving_instances(restrict_by(h, {}), depth2()).empty());
  EXPECT_EQ(closure(restrict_by(h, {}), {P("(p & q)")}, depth2(), 100).formulas, FormulaSet{P("(p & q)")});
  EXPECT_EQ(surviving_instances(restrict_by(h, {total_relation()}), depth2()), surviving_instances(h, depth2()));
}

TEST(Restrict, PiIsIntersectionWithUnion) {
  const auto h = lattice_s2();
  const auto all = surviving_instances(h, depth2());
  const auto pi = surviving_instances(restrict_by(h, {left_inclusion(), right_inclusion()}), depth2());
  std::set<RuleInstance> expected;
  for (const auto& i : all)
    if (rel_L(i.premises, i.conclusion) || rel_PR(i.premises, i.conclusion)) expected.insert(i);
  EXPECT_EQ(pi, expected);
}

TEST(Structure, DuplicateSchemaNames) {
  const auto r1 = parse_schema("R: (?A & ?B) / ?A", lat);
  EXPECT_THROW(HilbertStructure(lat, {r1, r1}), Error);
  EXPECT_THROW(parse_schema("no separator", lat), Error);
  EXPECT_EQ(restrict_rules(lattice_s1()).describe(), "hilbert[R1,R2]^{L}");
}

TEST(HilbertLogic, DumpIsTarskiType) {
  const Universe u = Universe::up_to_depth(lat, {"p", "q"}, 1);
  for (const auto& h : {lattice_s1(), lattice_s2(), restrict_rules(lattice_s2())}) {
    const HilbertLogic logic(h, u);
    const auto t = check_tarski(dump(logic, u, u.size()).as_structure());
    EXPECT_TRUE(t.reflexive);
    EXPECT_TRUE(t.monotonic);
    EXPECT_TRUE(t.transitive);
  }
}

TEST(HilbertLogic, EntailEachMatchesEntail) {
  const HilbertLogic logic(lattice_s2(), depth2());
  const FormulaSet gamma{P("(p & q)")};
  const auto each = logic.entail_each(gamma, depth2().formulas(), {});
  for (std::uint32_t i = 0; i < depth2().size(); ++i)
    EXPECT_EQ(each[i].outcome, logic.entail(gamma, depth2()[i], {}).outcome) << print(depth2()[i]);
}
