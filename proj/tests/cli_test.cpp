#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "relatio/cli.hpp"
#include "relatio/error.hpp"
#include "relatio/logic_file.hpp"

using namespace relatio;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "relatio");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("relatio-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name, std::ios::binary) << text;
    return path_ / name;
  }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

SyntaxError parse_error(const std::string& text) {
  try {
    parse_logic(text);
  } catch (const SyntaxError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return SyntaxError(ErrorCode::EmptyInput, "", 0, 0);
}

const char* kLattice = "signature\n  & 2\n  | 2\nend\nvariables p q\n";

}  // namespace

TEST(LogicFile, BundledFilesLoad) {
  const auto s1 = load_logic(resolve_logic_path("s1.logic"));
  EXPECT_EQ(s1.name, "s1");
  EXPECT_EQ(s1.backend, Backend::Hilbert);
  EXPECT_EQ(s1.hilbert->schemata().size(), 2u);
  EXPECT_EQ(s1.depth, 2u);
  const auto cpc = load_logic(resolve_logic_path("cpc.logic"));
  EXPECT_EQ(cpc.backend, Backend::Matrix);
  EXPECT_EQ(cpc.variables, (std::vector<std::string>{"p", "q", "r"}));
  const auto pwk = load_logic(resolve_logic_path("pwk.logic"));
  EXPECT_EQ(pwk.matrix->value_count(), 3u);
  EXPECT_TRUE(pwk.matrix->designated(pwk.matrix->value_index("e")));
}

TEST(LogicFile, ErrorPositions) {
  auto e = parse_error(std::string(kLattice) + "schemata\n  R1: (?A & %) / ?A\nend\n");
  EXPECT_EQ(e.line(), 7u);
  EXPECT_EQ(e.column(), 13u);

  e = parse_error(kLattice);
  EXPECT_EQ(e.code(), ErrorCode::InvalidDefinition);
  EXPECT_TRUE(contains(e.detail(), "no backend"));

  e = parse_error(std::string(kLattice) + "schemata\nend\nmatrix\n  values 0 1\nend\n");
  EXPECT_EQ(e.line(), 8u);
  EXPECT_TRUE(contains(e.detail(), "exactly one backend"));

  e = parse_error(std::string(kLattice) + "colour blue\nschemata\nend\n");
  EXPECT_EQ(e.line(), 6u);

  e = parse_error("signature\n  & 2\nend\nmatrix\n  values 0 1\n  designated 1\nend\n");
  EXPECT_EQ(e.code(), ErrorCode::MissingTable);

  e = parse_error("signature\n  |- 2\nend\nschemata\nend\n");
  EXPECT_EQ(e.line(), 2u);

  e = parse_error("signature\n  ~ 1\nend\nvariables p\nextensional\n  universe\n    p\n  end\n  pairs\n    {p} |- ~p\n  end\nend\n");
  EXPECT_EQ(e.code(), ErrorCode::OutOfUniverse);
  EXPECT_EQ(e.line(), 10u);
}

TEST(LogicFile, LoadPrefixesPath) {
  TempDir dir;
  const auto path = dir.write("bad.logic", "signature\n  & 2\nend\n");
  try {
    load_logic(path);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_TRUE(contains(e.what(), "bad.logic"));
  }
  EXPECT_EQ(load_logic(dir.write("named.logic", std::string(kLattice) + "schemata\nend\n")).name, "named");
}

TEST(Cli, ProveExamples) {
  auto r = run({"prove", "--logic", "s2.logic", "--companion", "re", "--premises", "(p & q)", "--goal", "(p | q)"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "R3")) << r.out;

  r = run({"prove", "--logic", "s1.logic", "--companion", "re", "--premises", "(p & q)", "--goal", "(p | q)"});
  EXPECT_EQ(r.code, 1) << r.out << r.err;
  EXPECT_TRUE(contains(r.out, "scope: within-universe")) << r.out;

  r = run({"prove", "--logic", "cpc.logic", "--companion", "rho:L", "--premises", "p, (p > q)", "--goal", "q"});
  EXPECT_EQ(r.code, 1) << r.out;

  r = run({"prove", "--logic", "cpc.logic", "--companion", "rho:L", "--premises", "p, ~p", "--goal", "q"});
  EXPECT_EQ(r.code, 1) << r.out;

  r = run({"prove", "--logic", "cpc.logic", "--companion", "rho:L", "--premises", "p, q", "--goal", "(p & q)"});
  EXPECT_EQ(r.code, 0) << r.out;

  r = run({"prove", "--logic", "cpc.logic", "--premises", "p, (p > q)", "--goal", "q"});
  EXPECT_EQ(r.code, 0) << r.out;

  r = run({"prove", "--logic", "pwk.logic", "--premises", "p, (p > q)", "--goal", "q"});
  EXPECT_EQ(r.code, 1) << r.out;
}

TEST(Cli, ProveErrors) {
  auto r = run({"prove", "--logic", "s1.logic", "--goal", "(p &"});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(contains(r.err, "error:"));
  r = run({"prove", "--logic", "no-such-file.logic", "--goal", "p"});
  EXPECT_EQ(r.code, 3);
  r = run({"prove", "--logic", "s1.logic", "--companion", "rho:Q", "--goal", "p"});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(contains(r.err, "InvalidCompanionSpec")) << r.err;
  r = run({"prove", "--logic", "cpc.logic", "--companion", "re", "--goal", "p"});
  EXPECT_EQ(r.code, 3);
  r = run({"prove", "--goal", "p"});
  EXPECT_EQ(r.code, 3);
  r = run({});
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, ProveStepCap) {
  const auto r = run({"prove", "--logic", "s2.logic", "--companion", "re", "--premises", "(p & q)", "--goal", "(p | q)",
                      "--steps", "0"});
  EXPECT_EQ(r.code, 2) << r.out;
}

TEST(Cli, Check) {
  auto r = run({"check", "nosuchlaw"});
  EXPECT_EQ(r.code, 3);
  r = run({"check", "l_eq_re_iff", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "1 passed, 0 failed, 0 inconclusive")) << r.out;
  r = run({"check", "dd_commute", "--no-hypotheses", "--force-violation", "--instances", "50"});
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_TRUE(contains(r.out, "shrunk")) << r.out;
  r = run({"check", "--list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "pi_eq_rho"));
}

TEST(Cli, CheckReport) {
  TempDir dir;
  const auto path = dir / "out.report";
  const auto r = run({"check", "theoremhood", "rho_monotone", "--instances", "10", "--report", path.string()});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto text = read(path);
  EXPECT_EQ(text.rfind("relatio-report v1\n", 0), 0u);
  EXPECT_TRUE(contains(text, "property theoremhood\n  result pass\n  instances 10\n")) << text;
  EXPECT_TRUE(contains(text, "property rho_monotone\n"));
}

TEST(Cli, DumpContainsConjunctionElimination) {
  TempDir dir;
  const auto path = dir / "s1.table";
  const auto r = run({"dump", "--logic", "s1.logic", "--cap", "1", "--out", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(read(path), "{(p & q)} |- p\n"));
}

TEST(Cli, EmptyRuleDumpIsReflexive) {
  TempDir dir;
  const auto logic = dir.write("none.logic", std::string(kLattice) + "depth 1\nschemata\nend\n");
  const auto r = run({"dump", "--logic", logic.string(), "--cap", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto def = parse_logic(r.out);
  EXPECT_EQ(def.backend, Backend::Extensional);
  EXPECT_EQ(def.cap, 1u);
  EXPECT_EQ(def.pairs.size(), def.universe->size());
  for (const auto& p : def.pairs) EXPECT_EQ(p.premises, IndexSet{p.conclusion});
}

TEST(Cli, DumpRoundTripReproducesVerdicts) {
  TempDir dir;
  const auto table = dir / "s2re.table";
  ASSERT_EQ(run({"dump", "--logic", "s2.logic", "--companion", "re", "--cap", "2", "--out", table.string()}).code, 0);
  const std::vector<std::pair<std::string, std::string>> queries{
      {"(p & q)", "(p | q)"}, {"(p & q)", "p"}, {"p", "q"}, {"p, q", "(p | q)"}, {"(p | q)", "p"}};
  for (const auto& [premises, goal] : queries) {
    const auto direct = run({"prove", "--logic", "s2.logic", "--companion", "re", "--depth", "2", "--premises",
                             premises, "--goal", goal});
    const auto stored = run({"prove", "--logic", table.string(), "--premises", premises, "--goal", goal});
    EXPECT_EQ(direct.code, stored.code) << premises << " |- " << goal << "\n" << stored.out << stored.err;
  }
}

TEST(Cli, DumpWithFormulasAndChains) {
  const auto r = run({"dump", "--logic", "cpc.logic", "--companion", "rho:L", "--formulas", "p, ~p, q", "--cap",
                      "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto def = parse_logic(r.out);
  EXPECT_EQ(def.universe->size(), 3u);
  EXPECT_FALSE(contains(r.out, "{p, ~p} |- q\n"));
  EXPECT_TRUE(contains(r.out, "{p, ~p} |- ~p\n"));
  EXPECT_EQ(run({"dump", "--logic", "s1.logic", "--companion", "re/rho:L", "--depth", "1"}).code, 0);
  EXPECT_EQ(run({"dump", "--logic", "s1.logic", "--companion", "rho:L/re"}).code, 3);
}

TEST(Relspec, Forms) {
  Session s;
  s.logic = load_logic(resolve_logic_path("cpc.logic"));
  s.universe = session_universe(s.logic, 1, {});
  for (const char* spec : {"L", "PR", "R(anti=never)", "R(anti=matrix)", "R(anti=sample)", "R(anti={p, ~p};{q})",
                           "P(probes=universe)", "P(probes=p;q)", "union(L,PR)", "intersect(L, PR, R(anti=never))"})
    EXPECT_NO_THROW(parse_relspec(spec, s)) << spec;
  for (const char* spec : {"", "Q", "union(L", "R(anti=bogus)", "P(probes=p;%)", "union()"})
    EXPECT_THROW(parse_relspec(spec, s), Error) << spec;

  const auto p = parse("p", s.logic.signature);
  const auto notp = parse("~p", s.logic.signature);
  const auto q = parse("q", s.logic.signature);
  const Relation r = parse_relspec("R(anti={p, ~p})", s);
  EXPECT_TRUE(r.contains({p, notp}, q));
  EXPECT_FALSE(parse_relspec("R(anti=never)", s).contains({p, notp}, q));
  EXPECT_TRUE(parse_relspec("R(anti=matrix)", s).contains({p, notp}, q));
  EXPECT_FALSE(parse_relspec("P(probes=universe)", s).contains({p, notp}, q));
  EXPECT_TRUE(parse_relspec("P(probes=universe)", s).contains({p}, q));
}

TEST(Relspec, StructAndTableReferences) {
  TempDir dir;
  const auto table = dir / "cpc.table";
  ASSERT_EQ(run({"dump", "--logic", "cpc.logic", "--formulas", "p, q, (p & q)", "--cap", "2", "--out",
                 table.string()}).code, 0);
  Session s;
  s.logic = load_logic(resolve_logic_path("cpc.logic"));
  s.directory = dir / "";
  s.universe = session_universe(s.logic, 1, {});
  const auto p = parse("p", s.logic.signature);
  const auto q = parse("q", s.logic.signature);
  const auto pq = parse("(p & q)", s.logic.signature);
  const Relation t = parse_relspec("table(cpc.table)", s);
  EXPECT_TRUE(t.contains({p, q}, pq));
  EXPECT_FALSE(t.contains({p}, pq));
  const Relation st = parse_relspec("struct(" + resolve_logic_path("pwk.logic").string() + ")", s);
  EXPECT_TRUE(st.contains({p, q}, pq));
  EXPECT_THROW(parse_relspec("table(missing.table)", s), Error);
}
