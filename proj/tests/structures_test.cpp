#include <gtest/gtest.h>

#include <functional>

#include "relatio/error.hpp"
#include "relatio/extensional.hpp"
#include "relatio/matrix.hpp"
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

// Test-side evaluator with values 0, 1 (classical) or 0, 1, 2 (2 = e,
// infectious), written out independently of the library's tables.
int eval(const Formula& f, const std::map<std::string, int>& val, bool weak_kleene) {
  if (f.is_variable()) return val.at(f.symbol());
  std::vector<int> a;
  for (const auto& x : f.args()) a.push_back(eval(x, val, weak_kleene));
  if (weak_kleene)
    for (int x : a)
      if (x == 2) return 2;
  const std::string& op = f.symbol();
  if (op == "~") return 1 - a[0];
  if (op == "&") return a[0] && a[1];
  if (op == "|") return a[0] || a[1];
  return !a[0] || a[1];
}

bool entails(const FormulaSet& gamma, const Formula& goal, bool weak_kleene) {
  std::vector<std::string> vs = vars_set(gamma).names();
  for (const auto& x : goal.variables()) vs.push_back(x);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  const int base = weak_kleene ? 3 : 2;
  std::size_t total = 1;
  for (std::size_t i = 0; i < vs.size(); ++i) total *= base;
  auto designated = [&](int x) { return x == 1 || x == 2; };
  for (std::size_t code = 0; code < total; ++code) {
    std::map<std::string, int> val;
    std::size_t c = code;
    for (const auto& x : vs) val[x] = static_cast<int>(c % base), c /= base;
    bool all = true;
    for (const auto& g : gamma) all = all && designated(eval(g, val, weak_kleene));
    if (all && !designated(eval(goal, val, weak_kleene))) return false;
  }
  return true;
}

}  // namespace

TEST(Extensional, ListedPairsOnly) {
  const Universe u(std::vector<Formula>{P("p"), P("q")});
  const ExtensionalStructure s(u, {{{0}, 0}});
  EXPECT_TRUE(s.entail(S({"p"}), P("p"), {}).proved());
  const auto r = s.entail(S({"p"}), P("q"), {});
  EXPECT_TRUE(r.refuted());
  EXPECT_EQ(r.scope, Scope::Full);
  EXPECT_THROW(s.entail(S({"r"}), P("p"), {}), Error);
}

TEST(Extensional, MonotoneFlagIsComputed) {
  const Universe u(std::vector<Formula>{P("p"), P("q")});
  EXPECT_FALSE(ExtensionalStructure(u, {{{0}, 0}}).monotone());
  EXPECT_TRUE(ExtensionalStructure(u, {{{0}, 0}, {{0, 1}, 0}}).monotone());
}

TEST(Matrix, ClassicalModusPonens) {
  const MatrixStructure cpc(classical_matrix());
  const auto v = cpc.entail(S({"p", "(p > q)"}), P("q"), {});
  ASSERT_TRUE(v.proved());
  const auto& cert = std::get<MatrixCertificate>(v.certificate);
  EXPECT_EQ(cert.checked, 4u);
  EXPECT_EQ(cert.designating.size(), 1u);
}

TEST(Matrix, WeakKleeneExplosionFails) {
  const auto v = matrix_entails(weak_kleene_matrix(), S({"p", "~p"}), P("q"));
  ASSERT_TRUE(v.refuted());
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, (Valuation{{"p", "e"}, {"q", "0"}}));
  EXPECT_TRUE(matrix_entails(weak_kleene_matrix(), S({"p"}), P("p")).proved());
}

TEST(Matrix, MissingTable) {
  Matrix m("partial", {"0", "1"}, {"1"});
  m.add_table("~", 1, std::vector<std::string>{"1", "0"});
  try {
    matrix_entails(m, S({"p"}), P("(p & q)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingTable);
  }
}

TEST(Matrix, RejectsMalformedDefinitions) {
  EXPECT_THROW(Matrix("m", {"0", "1"}, {}), Error);
  EXPECT_THROW(Matrix("m", {"0", "1"}, {"0", "1"}), Error);
  Matrix m("m", {"0", "1"}, {"1"});
  EXPECT_THROW(m.add_table("&", 2, std::vector<std::string>{"0", "1"}), Error);
}

TEST(Matrix, AgreesWithIndependentTruthTables) {
  const auto u = Universe::up_to_depth(sig, {"p", "q"}, 1);
  const Matrix cpc = classical_matrix(), pwk = weak_kleene_matrix();
  for (std::uint32_t a = 0; a < u.size(); ++a)
    for (std::uint32_t b = 0; b < u.size(); ++b)
      for (std::uint32_t g = 0; g < u.size(); g += 3) {
        const FormulaSet gamma{u[a], u[b]};
        EXPECT_EQ(matrix_entails(cpc, gamma, u[g]).proved(), entails(gamma, u[g], false));
        EXPECT_EQ(matrix_entails(pwk, gamma, u[g]).proved(), entails(gamma, u[g], true));
      }
}

TEST(Matrix, ReflexiveAndMonotone) {
  const auto u = Universe::up_to_depth(sig, {"p", "q"}, 1);
  const Matrix pwk = weak_kleene_matrix();
  for (std::uint32_t a = 0; a < u.size(); a += 2) {
    EXPECT_TRUE(matrix_entails(pwk, {u[a]}, u[a]).proved());
    for (std::uint32_t g = 0; g < u.size(); g += 5)
      if (matrix_entails(pwk, {u[a]}, u[g]).proved())
        for (std::uint32_t extra = 0; extra < u.size(); extra += 4)
          EXPECT_TRUE(matrix_entails(pwk, {u[a], u[extra]}, u[g]).proved());
  }
}

TEST(Tarski, TotalAndEmptyRelations) {
  const Universe u(std::vector<Formula>{P("p"), P("q")});
  std::vector<Pair> all;
  for_each_subset_up_to(2, 2, [&](const IndexSet& s) {
    all.push_back({s, 0});
    all.push_back({s, 1});
  });
  const auto full = check_tarski(ExtensionalStructure(u, all));
  EXPECT_TRUE(full.reflexive && full.monotonic && full.transitive && full.finitary);
  const auto empty = check_tarski(ExtensionalStructure(u, {}));
  EXPECT_FALSE(empty.reflexive);
  EXPECT_TRUE(empty.monotonic);
  EXPECT_TRUE(empty.transitive);
}

TEST(Tarski, MonotoneButNotReflexive) {
  const Universe u(std::vector<Formula>{P("p"), P("q")});
  const auto r = check_tarski(ExtensionalStructure(u, {{{0}, 0}, {{0, 1}, 0}}));
  EXPECT_TRUE(r.monotonic);
  EXPECT_FALSE(r.reflexive);
  ASSERT_TRUE(r.reflexive_violation.has_value());
  EXPECT_NE(r.reflexive_violation->find("q"), std::string::npos);
}

TEST(Tarski, TransitivityViolation) {
  // {p} |- q and {p, q} |- r hold but {p} |- r does not.
  const Universe u(std::vector<Formula>{P("p"), P("q"), P("r")});
  const auto r = check_tarski(ExtensionalStructure(u, {{{0}, 1}, {{0, 1}, 2}}));
  EXPECT_FALSE(r.transitive);
}

TEST(Tarski, UniverseCap) {
  Limits small;
  small.max_subset_universe = 2;
  const Universe u(std::vector<Formula>{P("p"), P("q"), P("r")});
  EXPECT_THROW(check_tarski(ExtensionalStructure(u, {}), small), Error);
}

TEST(Verdict, Rendering) {
  EXPECT_EQ(to_string(Outcome::Exhausted), "Exhausted");
  EXPECT_EQ(to_string(Scope::WithinUniverse), "within-universe");
  const auto v = Verdict::refuted(Scope::Full, Valuation{{"p", "e"}});
  EXPECT_NE(describe(v).find("counter-valuation: p=e"), std::string::npos);
  EXPECT_NE(describe(Verdict::exhausted("step cap 3 reached")).find("step cap 3"), std::string::npos);
}
