#include "relatio/props.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "relatio/companion.hpp"
#include "relatio/error.hpp"
#include "relatio/hilbert.hpp"
#include "relatio/oracle.hpp"
#include "relatio/samples.hpp"

namespace relatio {

std::string to_string(PropertyResult r) {
  switch (r) {
    case PropertyResult::Pass: return "pass";
    case PropertyResult::Fail: return "fail";
    case PropertyResult::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t PropertyReport::counter(const std::string& key) const {
  for (const auto& [k, v] : counters)
    if (k == key) return v;
  return 0;
}

namespace {

using Rng = std::mt19937_64;
using Failure = std::optional<std::string>;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t name_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
  return h;
}

Rng instance_rng(const std::string& name, std::uint64_t seed, std::size_t index, std::size_t attempt = 0) {
  return Rng(splitmix(splitmix(seed ^ name_hash(name)) + index * 0x10001ull + attempt));
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return uniform(rng, 0, 1) < p; }
std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// ---------------------------------------------------------------------------
// Tables as bit rows: rows[mask] = goals listed for the premise set `mask`.

using Rows = std::vector<std::uint32_t>;

IndexSet mask_set(std::uint32_t m) {
  IndexSet out;
  for (std::uint32_t i = 0; m >> i; ++i)
    if (m >> i & 1u) out.push_back(i);
  return out;
}

std::uint32_t full(std::size_t n) { return n >= 32 ? ~0u : (1u << n) - 1; }

std::size_t size_of(std::uint32_t m) { return static_cast<std::size_t>(std::popcount(m)); }

Rows random_rows(Rng& rng, std::size_t n, double density, std::size_t max_size) {
  Rows rows(std::size_t{1} << n, 0);
  for (std::uint32_t m = 0; m < rows.size(); ++m) {
    if (size_of(m) > max_size) continue;
    for (std::uint32_t a = 0; a < n; ++a)
      if (coin(rng, density)) rows[m] |= 1u << a;
  }
  return rows;
}

void upward_close(Rows& rows, std::size_t n) {
  for (std::uint32_t m = 0; m < rows.size(); ++m)
    for (std::uint32_t i = 0; i < n; ++i) rows[m | 1u << i] |= rows[m];
}

void downward_close(Rows& rows, std::size_t n) {
  for (std::uint32_t m = static_cast<std::uint32_t>(rows.size()); m-- > 0;)
    for (std::uint32_t i = 0; i < n; ++i)
      if (m >> i & 1u) rows[m & ~(1u << i)] |= rows[m];
}

bool is_upward(const Rows& rows, std::size_t n, std::size_t max_size) {
  for (std::uint32_t m = 0; m < rows.size(); ++m) {
    if (size_of(m) >= max_size) continue;
    for (std::uint32_t i = 0; i < n; ++i)
      if ((rows[m] & ~rows[m | 1u << i]) != 0) return false;
  }
  return true;
}

bool is_downward(const Rows& rows, std::size_t n) {
  for (std::uint32_t m = 0; m < rows.size(); ++m)
    for (std::uint32_t i = 0; i < n; ++i)
      if ((m >> i & 1u) && (rows[m] & ~rows[m & ~(1u << i)]) != 0) return false;
  return true;
}

bool rows_subset(const Rows& a, const Rows& b) {
  for (std::size_t m = 0; m < a.size(); ++m)
    if ((a[m] & ~b[m]) != 0) return false;
  return true;
}

Rows unite(Rows a, const Rows& b) {
  for (std::size_t m = 0; m < a.size(); ++m) a[m] |= b[m];
  return a;
}

Rows intersect(Rows a, const Rows& b) {
  for (std::size_t m = 0; m < a.size(); ++m) a[m] &= b[m];
  return a;
}

std::vector<Pair> to_pairs(const Rows& rows, std::size_t max_size) {
  std::vector<Pair> out;
  for (std::uint32_t m = 0; m < rows.size(); ++m) {
    if (size_of(m) > max_size) continue;
    for (std::uint32_t a = 0; rows[m] >> a; ++a)
      if (rows[m] >> a & 1u) out.push_back({mask_set(m), a});
  }
  return out;
}

TableDump to_dump(const Universe& u, const Rows& rows, std::size_t k) {
  TableDump d(u, k);
  for (const auto& p : to_pairs(rows, k)) d.set(p.premises, p.conclusion);
  return d;
}

Rows from_dump(const TableDump& d) {
  Rows rows(std::size_t{1} << d.universe().size(), 0);
  for (const auto& p : d.pairs()) {
    std::uint32_t m = 0;
    for (auto i : p.premises) m |= 1u << i;
    rows[m] |= 1u << p.conclusion;
  }
  return rows;
}

Rows tabulate(const Relation& rho, const Universe& u, std::size_t max_size) {
  return from_dump(relation_table(rho, u, max_size));
}

// Drops bit i and shifts the higher bits down.
std::uint32_t compress(std::uint32_t x, std::uint32_t i) {
  return (x & ((1u << i) - 1)) | ((x >> (i + 1)) << i);
}

Rows drop_index(const Rows& rows, std::uint32_t i) {
  if (rows.empty()) return rows;
  Rows out(rows.size() / 2, 0);
  for (std::uint32_t m = 0; m < rows.size(); ++m)
    if (!(m >> i & 1u)) out[compress(m, i)] = compress(rows[m], i);
  return out;
}

// ---------------------------------------------------------------------------
// Instances over a small universe: a base structure defined on all of P(U),
// optionally a second base, and up to two relations on premise sets of size
// at most the cap.

struct Inst {
  Universe u;
  Rows base, base2, rho, sigma;
  bool rho_is_L = false;  // rho tabulates the variable-inclusion relation
};

Inst drop_formula(const Inst& in, std::uint32_t i) {
  std::vector<Formula> kept;
  for (std::uint32_t j = 0; j < in.u.size(); ++j)
    if (j != i) kept.push_back(in.u[j]);
  Inst out{Universe(std::move(kept)), drop_index(in.base, i), drop_index(in.base2, i), drop_index(in.rho, i),
           drop_index(in.sigma, i), in.rho_is_L};
  return out;
}

std::string render_rows(const Universe& u, const Rows& rows, std::size_t max_size) {
  std::string out;
  for (const auto& p : to_pairs(rows, max_size))
    out += "    " + print_set(u.formulas_of(p.premises)) + " |- " + print(u[p.conclusion]) + "\n";
  return out.empty() ? "    (empty)\n" : out;
}

std::string render(const Inst& in, std::size_t k) {
  std::string out = "  universe: " + print_set(FormulaSet(in.u.begin(), in.u.end())) + "\n";
  out += "  base:\n" + render_rows(in.u, in.base, in.u.size());
  if (!in.base2.empty()) out += "  base2:\n" + render_rows(in.u, in.base2, in.u.size());
  if (!in.rho.empty()) out += std::string("  rho") + (in.rho_is_L ? " (L)" : "") + ":\n" + render_rows(in.u, in.rho, k);
  if (!in.sigma.empty()) out += "  sigma:\n" + render_rows(in.u, in.sigma, k);
  return out;
}

struct Ctx {
  std::size_t k = 3;
  PropertyConfig cfg;
  std::map<std::string, std::size_t> counters;
  bool inconclusive = false;
  std::string inconclusive_reason;

  void count(const std::string& key, std::size_t n = 1) { counters[key] += n; }
};

std::string pair_text(const TableWitness& w, const Universe& u) {
  return "(" + print_set(u.formulas_of(w.premises)) + ", " + print(u[w.goal]) + ")";
}

Failure need_subset(const TableDump& a, const TableDump& b, const std::string& la, const std::string& lb,
                    Ctx& ctx) {
  const auto c = subset_tables(a, b);
  if (!c.conclusive) {
    ctx.inconclusive = true;
    ctx.inconclusive_reason = "a table behind " + la + " or " + lb + " is incomplete";
  }
  if (c.holds) return std::nullopt;
  return la + " is not contained in " + lb + ": " + pair_text(*c.witness, a.universe()) + " is in " + la +
         " only";
}

Failure need_equal(const TableDump& a, const TableDump& b, const std::string& la, const std::string& lb, Ctx& ctx) {
  const auto c = equal_tables(a, b);
  if (!c.conclusive) {
    ctx.inconclusive = true;
    ctx.inconclusive_reason = "a table behind " + la + " or " + lb + " is incomplete";
  }
  if (c.holds) return std::nullopt;
  return la + " differs from " + lb + ": " + pair_text(*c.witness, a.universe()) + " is in " +
         (c.witness->side == "left" ? la : lb) + " only";
}

bool tables_equal(const TableDump& a, const TableDump& b) { return equal_tables(a, b).holds; }
bool tables_subset(const TableDump& a, const TableDump& b) { return subset_tables(a, b).holds; }

std::string variant(bool pure) { return pure ? "pure " : ""; }

// Companion structures built from the same instance must reproduce the
// oracle tables, whichever path (shortcut or full sweep) they take.
Failure differential(const Inst& in, Ctx& ctx, bool pure, const Rows* outer) {
  const auto& u = in.u;
  const std::size_t n = u.size();
  auto base = std::make_shared<const ExtensionalStructure>(u, to_pairs(in.base, n));
  const Relation rho = in.rho_is_L ? left_inclusion() : table_relation("rho", u, to_pairs(in.rho, ctx.k));
  const TableDump base_table = to_dump(u, in.base, ctx.k);
  const TableDump rho_table = to_dump(u, in.rho, ctx.k);

  struct Case {
    std::string label;
    std::shared_ptr<const CompanionStructure> structure;
    TableDump expected;
  };
  std::vector<Case> cases;
  auto inner = std::make_shared<const CompanionStructure>(base, rho, pure);
  const TableDump inner_table = brute_companion(base_table, rho_table, pure);
  cases.push_back({"S^" + variant(pure) + "rho", inner, inner_table});
  if (outer) {
    const Relation sigma = table_relation("sigma", u, to_pairs(*outer, ctx.k));
    const TableDump sigma_table = to_dump(u, *outer, ctx.k);
    cases.push_back({"S^" + variant(pure) + "sigma", std::make_shared<const CompanionStructure>(base, sigma, pure),
                     brute_companion(base_table, sigma_table, pure)});
    cases.push_back({"(S^rho)^" + variant(pure) + "sigma",
                     std::make_shared<const CompanionStructure>(inner, sigma, pure),
                     brute_companion(inner_table, sigma_table, pure)});
  }
  const std::size_t rows = count_subsets_up_to(n, ctx.k, ~std::size_t{0} - 1);
  for (const auto& c : cases) {
    const TableDump got = dump(*c.structure, u, ctx.k);
    ctx.count("differential queries", rows * n);
    if (c.structure->uses_shortcut()) ctx.count("shortcut queries", rows * n);
    if (auto f = need_equal(got, c.expected, c.label + " (companion_entails)", c.label + " (oracle)", ctx)) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generators

Universe random_universe(Rng& rng, std::size_t n, bool negation_pair) {
  static const Universe pool = [] {
    const Signature sig{{"~", 1}, {"&", 2}, {"|", 2}};
    return Universe::up_to_depth(sig, {"p", "q", "r"}, 1);
  }();
  std::vector<Formula> picked;
  if (negation_pair && n >= 2) {
    const Formula v = Formula::var(std::string(1, "pqr"[below(rng, 3)]));
    picked.push_back(v);
    picked.push_back(Formula::app("~", {v}));
  }
  std::vector<Formula> rest(pool.begin(), pool.end());
  std::shuffle(rest.begin(), rest.end(), rng);
  for (const auto& f : rest) {
    if (picked.size() >= n) break;
    if (std::find(picked.begin(), picked.end(), f) == picked.end()) picked.push_back(f);
  }
  std::shuffle(picked.begin(), picked.end(), rng);
  return Universe(std::move(picked));
}

Rows random_base(Rng& rng, std::size_t n, bool monotone) {
  if (!monotone) return random_rows(rng, n, uniform(rng, 0.1, 0.5), n);
  Rows rows = random_rows(rng, n, uniform(rng, 0.02, 0.12), n);
  upward_close(rows, n);
  return rows;
}

Rows random_relation(Rng& rng, std::size_t n, std::size_t k, bool downward) {
  if (!downward) return random_rows(rng, n, uniform(rng, 0.15, 0.7), k);
  Rows rows = random_rows(rng, n, uniform(rng, 0.03, 0.3), k);
  downward_close(rows, n);
  return rows;
}

Rows random_superset(Rng& rng, const Rows& rows, std::size_t n, std::size_t max_size) {
  return unite(rows, random_rows(rng, n, uniform(rng, 0.05, 0.3), max_size));
}

Rows random_subset(Rng& rng, const Rows& rows, std::size_t n, std::size_t max_size) {
  return intersect(rows, random_rows(rng, n, uniform(rng, 0.3, 0.9), max_size));
}

// ---------------------------------------------------------------------------
// Engine for laws over extensional instances

struct ExtLaw {
  std::function<Inst(Rng&, const Ctx&)> generate;
  std::function<bool(const Inst&, const Ctx&)> hypotheses;  // null: none
  std::function<Failure(const Inst&, Ctx&)> law;
};

Failure evaluate(const ExtLaw& spec, const Inst& in, Ctx& ctx) {
  try {
    return spec.law(in, ctx);
  } catch (const Error& e) {
    return std::string("error: ") + e.what();
  }
}

// Deletes table entries, then formulas, while the law still fails on an
// instance that satisfies the hypotheses being enforced.
Inst shrink(const ExtLaw& spec, Inst in, const Ctx& base_ctx) {
  auto still_fails = [&](const Inst& candidate) {
    Ctx scratch{base_ctx.k, base_ctx.cfg, {}, false, {}};
    if (candidate.u.size() == 0) return false;
    if (base_ctx.cfg.enforce_hypotheses && spec.hypotheses && !spec.hypotheses(candidate, scratch)) return false;
    return evaluate(spec, candidate, scratch).has_value();
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (Rows Inst::*table : {&Inst::base, &Inst::base2, &Inst::rho, &Inst::sigma}) {
      if (table == &Inst::rho && in.rho_is_L) continue;
      for (std::size_t m = 0; m < (in.*table).size(); ++m) {
        for (std::uint32_t a = 0; (in.*table)[m] >> a; ++a) {
          if (!((in.*table)[m] >> a & 1u)) continue;
          Inst candidate = in;
          (candidate.*table)[m] &= ~(1u << a);
          if (still_fails(candidate)) {
            in = std::move(candidate);
            changed = true;
          }
        }
      }
    }
    for (std::uint32_t i = 0; i < in.u.size(); ++i) {
      Inst candidate = drop_formula(in, i);
      if (in.rho_is_L) candidate.rho = tabulate(left_inclusion(), candidate.u, base_ctx.k);
      if (still_fails(candidate)) {
        in = std::move(candidate);
        changed = true;
        break;
      }
    }
  }
  return in;
}

PropertyReport finish(PropertyReport report, const Ctx& ctx) {
  for (const auto& [k, v] : ctx.counters) report.counters.emplace_back(k, v);
  if (report.result == PropertyResult::Pass && ctx.inconclusive) {
    report.result = PropertyResult::Inconclusive;
    report.detail = ctx.inconclusive_reason;
  }
  return report;
}

PropertyReport run_ext(const std::string& name, const ExtLaw& spec, const PropertyConfig& cfg) {
  PropertyReport report;
  report.name = name;
  report.config = cfg;
  Ctx ctx;
  ctx.k = cfg.premise_cap;
  ctx.cfg = cfg;
  if (cfg.universe_size == 0 || cfg.universe_size > 10)
    throw Error(ErrorCode::UniverseTooLarge, "generated universes must have 1..10 formulas");
  constexpr std::size_t kAttempts = 64;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    std::optional<Inst> in;
    for (std::size_t attempt = 0; attempt < kAttempts && !in; ++attempt) {
      Rng rng = instance_rng(name, cfg.seed, i, attempt);
      Inst candidate = spec.generate(rng, ctx);
      if (cfg.enforce_hypotheses && spec.hypotheses && !spec.hypotheses(candidate, ctx)) {
        ctx.count("rejected by hypotheses");
        continue;
      }
      in = std::move(candidate);
    }
    if (!in) {
      ctx.count("instances without a generated candidate");
      continue;
    }
    ++report.instances_run;
    if (auto failure = evaluate(spec, *in, ctx)) {
      const Inst small = shrink(spec, *in, ctx);
      Ctx scratch{ctx.k, cfg, {}, false, {}};
      const auto message = evaluate(spec, small, scratch).value_or(*failure);
      report.result = PropertyResult::Fail;
      report.witness = "instance " + std::to_string(i) + " (seed " + std::to_string(cfg.seed) + "), shrunk:\n" +
                       render(small, ctx.k) + "  " + message;
      return finish(report, ctx);
    }
  }
  if (report.instances_run == 0) {
    report.result = PropertyResult::Inconclusive;
    report.detail = "no instance satisfied the hypotheses";
  }
  return finish(report, ctx);
}

// Generator options shared by the relational laws.
struct Gen {
  bool monotone_base = false;
  bool second_base = false;  // base2 ⊇ base
  bool rho = true;
  bool rho_downward = false;
  bool sigma = false;
  bool sigma_downward = false;
  enum class Link { None, RhoInSigma, SigmaInRho } link = Link::None;
  bool rho_has_empty = false;
  bool rho_is_L = false;
  bool negation_pair = false;
};

Inst generate(Rng& rng, const Ctx& ctx, const Gen& g) {
  const std::size_t n = ctx.cfg.universe_size, k = ctx.k;
  Inst in;
  in.u = random_universe(rng, n, g.negation_pair);
  in.base = random_base(rng, n, g.monotone_base);
  if (g.second_base) in.base2 = unite(in.base, random_rows(rng, n, uniform(rng, 0.05, 0.3), n));
  if (g.rho_is_L) {
    in.rho = tabulate(left_inclusion(), in.u, k);
    in.rho_is_L = true;
  } else if (g.rho) {
    in.rho = random_relation(rng, n, k, g.rho_downward);
  }
  if (g.rho_has_empty) in.rho[0] = full(n);
  if (g.sigma) {
    switch (g.link) {
      case Gen::Link::None: in.sigma = random_relation(rng, n, k, g.sigma_downward); break;
      case Gen::Link::RhoInSigma:
        in.sigma = random_superset(rng, in.rho, n, k);
        if (g.sigma_downward) downward_close(in.sigma, n);
        break;
      case Gen::Link::SigmaInRho:
        in.sigma = random_subset(rng, in.rho, n, k);
        if (g.sigma_downward) downward_close(in.sigma, n);  // may leave rho; hypotheses decide
        break;
    }
  }
  return in;
}

struct Tables {
  TableDump base, rho;
  std::optional<TableDump> base2, sigma;
};

Tables tables_of(const Inst& in, const Ctx& ctx) {
  Tables t{to_dump(in.u, in.base, ctx.k), to_dump(in.u, in.rho, ctx.k), std::nullopt, std::nullopt};
  if (!in.base2.empty()) t.base2 = to_dump(in.u, in.base2, ctx.k);
  if (!in.sigma.empty()) t.sigma = to_dump(in.u, in.sigma, ctx.k);
  return t;
}

bool monotone_base(const Inst& in) { return is_upward(in.base, in.u.size(), in.u.size()); }

// ---------------------------------------------------------------------------
// Relational laws

ExtLaw law_rho_monotone(bool pure, bool as_L) {
  ExtLaw s;
  s.generate = [as_L](Rng& rng, const Ctx& ctx) {
    Gen g;
    g.rho_is_L = as_L;
    g.monotone_base = as_L && coin(rng);
    return generate(rng, ctx, g);
  };
  s.law = [pure, as_L](const Inst& in, Ctx& ctx) -> Failure {
    const auto t = tables_of(in, ctx);
    const TableDump c = brute_companion(t.base, t.rho, pure);
    const Rows rows = from_dump(c);
    for (std::uint32_t m = 0; m < rows.size(); ++m) {
      if (size_of(m) >= ctx.k) continue;
      for (std::uint32_t i = 0; i < in.u.size(); ++i) {
        const auto lost = rows[m] & ~rows[m | 1u << i];
        if (!lost) continue;
        const auto a = static_cast<std::uint32_t>(std::countr_zero(lost));
        return "companion is not monotone: " + print_set(in.u.formulas_of(mask_set(m))) + " |- " + print(in.u[a]) +
               " but not from " + print_set(in.u.formulas_of(mask_set(m | 1u << i)));
      }
    }
    if (as_L && monotone_base(in)) {
      ctx.count("monotone bases");
      if (auto f = need_subset(c, t.base, "S^l", "S", ctx)) return f;
    }
    return differential(in, ctx, pure, nullptr);
  };
  return s;
}

ExtLaw law_rho_subset_base(bool pure) {
  ExtLaw s;
  s.generate = [](Rng& rng, const Ctx& ctx) {
    Gen g;
    g.monotone_base = !ctx.cfg.force_violation;
    g.rho_downward = coin(rng);
    return generate(rng, ctx, g);
  };
  s.hypotheses = [](const Inst& in, const Ctx&) { return monotone_base(in); };
  s.law = [pure](const Inst& in, Ctx& ctx) -> Failure {
    const auto t = tables_of(in, ctx);
    if (auto f = need_subset(brute_companion(t.base, t.rho, pure), t.base, "S^" + variant(pure) + "rho", "S", ctx))
      return f;
    return differential(in, ctx, pure, nullptr);
  };
  return s;
}

ExtLaw law_idempotent(bool pure, bool as_L) {
  ExtLaw s;
  s.generate = [as_L](Rng& rng, const Ctx& ctx) {
    Gen g;
    g.rho_is_L = as_L;
    g.rho_downward = coin(rng);
    return generate(rng, ctx, g);
  };
  s.law = [pure](const Inst& in, Ctx& ctx) -> Failure {
    const auto t = tables_of(in, ctx);
    const TableDump once = brute_companion(t.base, t.rho, pure);
    const TableDump twice = brute_companion(once, t.rho, pure);
    if (auto f = need_equal(twice, once, "(S^rho)^" + variant(pure) + "rho", "S^" + variant(pure) + "rho", ctx))
      return f;
    return differential(in, ctx, pure, &in.rho);
  };
  return s;
}

ExtLaw law_pair_monotone(bool pure, bool as_L) {
  ExtLaw s;
  s.generate = [as_L](Rng& rng, const Ctx& ctx) {
    Gen g;
    g.second_base = true;
    g.rho_is_L = as_L;
    g.sigma = !as_L;
    g.link = ctx.cfg.force_violation ? Gen::Link::None : Gen::Link::RhoInSigma;
    Inst in = generate(rng, ctx, g);
    if (ctx.cfg.force_violation) std::swap(in.base, in.base2);
    return in;
  };
  s.hypotheses = [as_L](const Inst& in, const Ctx&) {
    return rows_subset(in.base, in.base2) && (as_L || rows_subset(in.rho, in.sigma));
  };
  s.law = [pure, as_L](const Inst& in, Ctx& ctx) -> Failure {
    const auto t = tables_of(in, ctx);
    const TableDump& outer = as_L ? t.rho : *t.sigma;
    const std::string l1 = as_L ? "S1^l" : "S1^" + variant(pure) + "rho";
    const std::string l2 = as_L ? "S2^l" : "S2^" + variant(pure) + "sigma";
    if (auto f = need_subset(brute_companion(t.base, t.rho, pure), brute_companion(*t.base2, outer, pure), l1, l2,
                             ctx))
      return f;
    return differential(in, ctx, pure, as_L ? nullptr : &in.sigma);
  };
  return s;
}

ExtLaw law_union_intersect() {
  ExtLaw s;
  s.generate = [](Rng& rng, const Ctx& ctx) {
    Gen g;
    g.sigma = true;
    g.rho_downward = coin(rng);
    g.sigma_downward = coin(rng);
    return generate(rng, ctx, g);
  };
  s.law = [](const Inst& in, Ctx& ctx) -> Failure {
    const auto t = tables_of(in, ctx);
    // The combinators must tabulate to the pointwise union/intersection.
    const Relation r = table_relation("rho", in.u, to_pairs(in.rho, ctx.k));
    const Relation g = table_relation("sigma", in.u, to_pairs(in.sigma, ctx.k));
    const TableDump uni = relation_table(union_of(r, g), in.u, ctx.k);
    const TableDump cap = relation_table(intersection_of(r, g), in.u, ctx.k);
    if (auto f = need_equal(uni, to_dump(in.u, unite(in.rho, in.sigma), ctx.k), "union(rho,sigma)",
                            "pointwise union", ctx))
      return f;
    if (auto f = need_equal(cap, to_dump(in.u, intersect(in.rho, in.sigma), ctx.k), "intersect(rho,sigma)",
                            "pointwise intersection", ctx))
      return f;
    for (bool pure : {false, true}) {
      const std::string p = variant(pure);
      const TableDump cr = brute_companion(t.base, t.rho, pure), cs = brute_companion(t.base, *t.sigma, pure);
      const TableDump cu = brute_companion(t.base, uni, pure), ci = brute_companion(t.base, cap, pure);
      if (auto f = need_subset(cr, cu, "S^" + p + "rho", "S^" + p + "(rho u sigma)", ctx)) return f;
      if (auto f = need_subset(cs, cu, "S^" + p + "sigma", "S^" + p + "(rho u sigma)", ctx)) return f;
      if (auto f = need_subset(ci, cr, "S^" + p + "(rho n sigma)", "S^" + p + "rho", ctx)) return f;
      if (auto f = need_subset(ci, cs, "S^" + p + "(rho n sigma)", "S^" + p + "sigma", ctx)) return f;
      if (auto f = differential(in, ctx, pure, &in.sigma)) return f;
    }
    return std::nullopt;
  };
  return s;
}

// Shared shape of the composition laws: both variants, each with the
// nested table (S^rho)^sigma.
struct Comp {
  TableDump cr, cs, nested;
};

Comp comp_tables(const Tables& t, bool pure) {
  TableDump cr = brute_companion(t.base, t.rho, pure);
  TableDump cs = brute_companion(t.base, *t.sigma, pure);
  TableDump nested = brute_companion(cr, *t.sigma, pure);
  return {std::move(cr), std::move(cs), std::move(nested)};
}

ExtLaw law_comp(int part) {
  ExtLaw s;
  s.generate = [part](Rng& rng, const Ctx& ctx) {
    Gen g;
    g.sigma = true;
    const bool violate = ctx.cfg.force_violation;
    switch (part) {
      case 1: g.link = coin(rng) ? Gen::Link::RhoInSigma : Gen::Link::None; break;
      case 2: g.monotone_base = !violate; break;
      case 3: g.link = violate ? Gen::Link::None : Gen::Link::RhoInSigma; break;
      case 4: g.link = !violate && coin(rng, 0.7) ? Gen::Link::SigmaInRho : Gen::Link::None; break;
      case 5: g.link = violate ? Gen::Link::None : Gen::Link::RhoInSigma; break;
    }
    Inst in = generate(rng, ctx, g);
    if (part == 5 && !violate && coin(rng)) {
      // Extra sigma pairs the base never proves leave the companion unchanged.
      for (std::uint32_t m = 0; m < in.sigma.size(); ++m) in.sigma[m] = in.rho[m] | (in.sigma[m] & ~in.base[m]);
    }
    return in;
  };
  s.hypotheses = [part](const Inst& in, const Ctx& ctx) {
    switch (part) {
      case 2: return monotone_base(in);
      case 3:
      case 5: return rows_subset(in.rho, in.sigma);
      case 4: {
        const auto t = tables_of(in, ctx);
        return tables_subset(brute_companion(t.base, *t.sigma), brute_companion(t.base, t.rho)) &&
               tables_subset(brute_companion(t.base, *t.sigma, true), brute_companion(t.base, t.rho, true));
      }
      default: return true;
    }
  };
  s.law = [part](const Inst& in, Ctx& ctx) -> Failure {
    const auto t = tables_of(in, ctx);
    const bool enforce = ctx.cfg.enforce_hypotheses;
    for (bool pure : {false, true}) {
      const std::string p = variant(pure);
      const std::string nested = "(S^" + p + "rho)^" + p + "sigma", cr = "S^" + p + "rho", cs = "S^" + p + "sigma";
      const Comp c = comp_tables(t, pure);
      switch (part) {
        case 1:
          if (auto f = need_subset(c.nested, c.cr, nested, cr, ctx)) return f;
          if (rows_subset(in.rho, in.sigma)) {
            if (!pure) ctx.count("equality cases (rho in sigma)");
            if (auto f = need_equal(c.nested, c.cr, nested, cr, ctx)) return f;
          }
          break;
        case 2:
        case 3:
          if (auto f = need_subset(c.nested, c.cs, nested, cs, ctx)) return f;
          break;
        case 4:
          if (!enforce || tables_subset(c.cs, c.cr)) {
            if (auto f = need_subset(c.cs, c.nested, cs, nested, ctx)) return f;
          }
          break;
        case 5: {
          const bool same = tables_equal(c.cr, c.cs);
          const bool fixed = tables_equal(c.nested, c.cs);
          if (!pure) ctx.count(same ? "instances with S^rho = S^sigma" : "instances with S^rho != S^sigma");
          if (same != fixed)
            return cr + (same ? " = " : " != ") + cs + " but " + nested + (fixed ? " = " : " != ") + cs;
          break;
        }
      }
      if (auto f = differential(in, ctx, pure, &in.sigma)) return f;
    }
    return std::nullopt;
  };
  return s;
}

ExtLaw law_dd_commute() {
  ExtLaw s;
  s.generate = [](Rng& rng, const Ctx& ctx) {
    Gen g;
    g.sigma = true;
    if (ctx.cfg.force_violation) {
      Inst in = generate(rng, ctx, g);
      for (int tries = 0; tries < 32 && is_downward(in.sigma, in.u.size()); ++tries)
        in.sigma = random_relation(rng, in.u.size(), ctx.k, false);
      return in;
    }
    g.sigma_downward = true;
    g.rho_downward = coin(rng);
    return generate(rng, ctx, g);
  };
  s.hypotheses = [](const Inst& in, const Ctx&) { return is_downward(in.sigma, in.u.size()); };
  s.law = [](const Inst& in, Ctx& ctx) -> Failure {
    const auto t = tables_of(in, ctx);
    const bool both = is_downward(in.rho, in.u.size()) && is_downward(in.sigma, in.u.size());
    if (both) ctx.count("both relations downward-directed");
    for (bool pure : {false, true}) {
      const std::string p = variant(pure);
      const TableDump cr = brute_companion(t.base, t.rho, pure), cs = brute_companion(t.base, *t.sigma, pure);
      const TableDump rs = brute_companion(cr, *t.sigma, pure), sr = brute_companion(cs, t.rho, pure);
      const std::string l_rs = "(S^" + p + "rho)^" + p + "sigma", l_sr = "(S^" + p + "sigma)^" + p + "rho";
      if (auto f = need_subset(rs, sr, l_rs, l_sr, ctx)) return f;
      if (both)
        if (auto f = need_equal(rs, sr, l_rs, l_sr, ctx)) return f;
      if (ctx.cfg.enforce_hypotheses)
        if (auto f = differential(in, ctx, pure, &in.sigma)) return f;
    }
    return std::nullopt;
  };
  return s;
}

ExtLaw law_theoremhood() {
  ExtLaw s;
  s.generate = [](Rng& rng, const Ctx& ctx) {
    Gen g;
    g.rho_has_empty = true;
    Inst in = generate(rng, ctx, g);
    if (ctx.cfg.force_violation) in.rho[0] &= ~(1u << below(rng, in.u.size()));
    return in;
  };
  s.hypotheses = [](const Inst& in, const Ctx&) { return in.rho[0] == full(in.u.size()); };
  s.law = [](const Inst& in, Ctx& ctx) -> Failure {
    const auto t = tables_of(in, ctx);
    const TableDump c = brute_companion(t.base, t.rho);
    for (std::uint32_t a = 0; a < in.u.size(); ++a) {
      const bool base = t.base.holds({}, a), comp = c.holds({}, a);
      if (base) ctx.count("theorems");
      if (base != comp)
        return "|- " + print(in.u[a]) + " is " + (base ? "" : "not ") + "a theorem of S but " + (comp ? "" : "not ") +
               "of S^rho";
    }
    return differential(in, ctx, false, nullptr);
  };
  return s;
}

// Relations whose every row reaches into a pool missing at least one
// formula, so every premise set has a cardinality surplus.
Inst finite_reach_instance(Rng& rng, const Ctx& ctx, bool negation_pair) {
  const std::size_t n = ctx.cfg.universe_size, k = ctx.k;
  Inst in;
  in.u = random_universe(rng, n, negation_pair);
  in.base = coin(rng, 0.3) ? Rows(std::size_t{1} << n, full(n)) : random_rows(rng, n, uniform(rng, 0.3, 0.95), n);
  const std::size_t pool_size = 1 + below(rng, std::max<std::size_t>(n - 1, 1));
  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::uint32_t pool = 0;
  for (std::size_t i = 0; i < pool_size && i + 1 < n; ++i) pool |= 1u << order[i];
  in.rho = random_rows(rng, n, uniform(rng, 0.2, 0.9), k);
  for (auto& row : in.rho) row &= pool;
  if (ctx.cfg.force_violation) in.rho = Rows(in.rho.size(), full(n));
  return in;
}

std::uint32_t reach_below(const Rows& rho, std::uint32_t gamma) {
  std::uint32_t reach = 0;
  for (std::uint32_t d = gamma;; d = (d - 1) & gamma) {
    reach |= rho[d];
    if (d == 0) break;
  }
  return reach;
}

bool has_surplus(const Rows& rho, std::uint32_t gamma, std::size_t n) { return size_of(reach_below(rho, gamma)) < n; }

bool every_set_has_surplus(const Inst& in, const Ctx& ctx) {
  for (std::uint32_t m = 0; m < in.rho.size(); ++m)
    if (size_of(m) <= ctx.k && !has_surplus(in.rho, m, in.u.size())) return false;
  return true;
}

ExtLaw law_finite_reach() {
  ExtLaw s;
  s.generate = [](Rng& rng, const Ctx& ctx) { return finite_reach_instance(rng, ctx, false); };
  s.hypotheses = every_set_has_surplus;
  s.law = [](const Inst& in, Ctx& ctx) -> Failure {
    const auto t = tables_of(in, ctx);
    const std::size_t n = in.u.size();
    for (bool pure : {false, true}) {
      const Rows c = from_dump(brute_companion(t.base, t.rho, pure));
      for (std::uint32_t m = 0; m < c.size(); ++m) {
        if (size_of(m) > ctx.k) continue;
        if (ctx.cfg.enforce_hypotheses && !has_surplus(in.rho, m, n)) continue;
        if (!pure) ctx.count("premise sets with surplus");
        if (c[m] == full(n))
          return print_set(in.u.formulas_of(mask_set(m))) + " is trivial in S^" + variant(pure) + "rho";
      }
      if (auto f = differential(in, ctx, pure, nullptr)) return f;
    }
    return std::nullopt;
  };
  return s;
}

ExtLaw law_ecq_failures() {
  ExtLaw s;
  s.generate = [](Rng& rng, const Ctx& ctx) { return finite_reach_instance(rng, ctx, true); };
  s.hypotheses = [](const Inst& in, const Ctx& ctx) { return ctx.k >= 2 && every_set_has_surplus(in, ctx); };
  s.law = [](const Inst& in, Ctx& ctx) -> Failure {
    const auto t = tables_of(in, ctx);
    const std::size_t n = in.u.size();
    for (bool pure : {false, true}) {
      const Rows c = from_dump(brute_companion(t.base, t.rho, pure));
      auto trivial = [&](std::uint32_t m) { return c[m] == full(n); };
      const std::string where = "S^" + variant(pure) + "rho";
      // gECQ: every α has a partner β with {α, β} trivial.
      bool gecq = true;
      for (std::uint32_t a = 0; a < n && gecq; ++a) {
        bool partner = false;
        for (std::uint32_t b = 0; b < n; ++b) partner = partner || trivial(1u << a | 1u << b);
        gecq = partner;
      }
      if (gecq) return "gECQ holds in " + where;
      // spECQ: every proper Γ (within the cap) extends by some α to a
      // proper trivial set.
      bool specq = true;
      for (std::uint32_t m = 0; m < c.size() && specq; ++m) {
        if (size_of(m) + 1 > ctx.k || m == full(n)) continue;
        bool extends = false;
        for (std::uint32_t a = 0; a < n; ++a) {
          const auto bigger = m | 1u << a;
          extends = extends || (bigger != full(n) && trivial(bigger));
        }
        specq = extends;
      }
      if (specq) return "spECQ holds in " + where;
      // ¬-ECQ on every {φ, ~φ} inside the universe.
      for (std::uint32_t a = 0; a < n; ++a) {
        const auto neg = in.u.index_of(Formula::app("~", {in.u[a]}));
        if (!neg) continue;
        if (!pure) ctx.count("negation pairs checked");
        if (trivial(1u << a | 1u << *neg))
          return "{" + print(in.u[a]) + ", ~" + print(in.u[a]) + "} explodes in " + where;
      }
    }
    return std::nullopt;
  };
  return s;
}

// ---------------------------------------------------------------------------
// Hilbert laws

constexpr std::size_t kHilbertUniverse = 8;

HilbertStructure random_hilbert(Rng& rng, const std::vector<RuleSchema>& pool, double p = 0.45) {
  std::vector<RuleSchema> picked;
  for (const auto& s : pool)
    if (coin(rng, p)) picked.push_back(s);
  if (picked.empty()) picked.push_back(pool[below(rng, pool.size())]);
  return HilbertStructure(connective_signature(), std::move(picked));
}

std::string schema_names(const HilbertStructure& h) {
  std::string out;
  for (const auto& s : h.schemata()) out += (out.empty() ? "" : ", ") + s.name;
  return "{" + out + "}";
}

// Subformula-closed universe over {p, q} with at most `target` formulas.
Universe random_closed_universe(Rng& rng, std::size_t target) {
  static const Universe pool = Universe::up_to_depth(connective_signature(), {"p", "q"}, 2);
  Universe u;
  for (int tries = 0; tries < 400 && u.size() < target; ++tries) {
    Universe trial = u;
    trial.insert_with_subformulas(pool[static_cast<std::uint32_t>(below(rng, pool.size()))]);
    if (trial.size() <= target) u = std::move(trial);
  }
  return u;
}

const Universe& fixed_hilbert_universe() {
  static const Universe u = Universe::up_to_depth(connective_signature(), {"p", "q"}, 1);
  return u;
}

TableDump hilbert_dump(const HilbertStructure& h, const Universe& u, std::size_t k) {
  return dump(HilbertLogic(h, u), u, k);
}

PropertyReport hilbert_report(const std::string& name, const PropertyConfig& cfg) {
  PropertyReport r;
  r.name = name;
  r.config = cfg;
  return r;
}

PropertyReport fail(PropertyReport r, const Ctx& ctx, std::string witness) {
  r.result = PropertyResult::Fail;
  r.witness = std::move(witness);
  return finish(std::move(r), ctx);
}

// Drops schemata while `fails` still reports a failure.
HilbertStructure shrink_schemata(HilbertStructure h, const std::function<bool(const HilbertStructure&)>& fails) {
  bool changed = true;
  while (changed && h.schemata().size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < h.schemata().size(); ++i) {
      auto rest = h.schemata();
      rest.erase(rest.begin() + static_cast<long>(i));
      HilbertStructure candidate(h.signature(), rest, h.filters());
      if (fails(candidate)) {
        h = std::move(candidate);
        changed = true;
        break;
      }
    }
  }
  return h;
}

using HilbertLaw = std::function<Failure(const HilbertStructure&, const Universe&, Ctx&)>;

PropertyReport run_hilbert(const std::string& name, const PropertyConfig& cfg,
                           const std::function<HilbertStructure(Rng&, std::size_t)>& gen,
                           const std::function<Universe(Rng&, std::size_t)>& universe, const HilbertLaw& law) {
  PropertyReport r = hilbert_report(name, cfg);
  Ctx ctx;
  ctx.k = cfg.premise_cap;
  ctx.cfg = cfg;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(name, cfg.seed, i);
    const Universe u = universe(rng, i);
    const HilbertStructure h = gen(rng, i);
    ++r.instances_run;
    if (auto f = law(h, u, ctx)) {
      const auto small = shrink_schemata(h, [&](const HilbertStructure& c) {
        Ctx scratch{ctx.k, cfg, {}, false, {}};
        return law(c, u, scratch).has_value();
      });
      Ctx scratch{ctx.k, cfg, {}, false, {}};
      const auto message = law(small, u, scratch).value_or(*f);
      return fail(r, ctx,
                  "instance " + std::to_string(i) + " (seed " + std::to_string(cfg.seed) + "), schemata " +
                      schema_names(small) + " over " + print_set(FormulaSet(u.begin(), u.end())) + "\n  " + message);
    }
  }
  return finish(r, ctx);
}

Universe fixed_universe(Rng&, std::size_t) { return fixed_hilbert_universe(); }

HilbertStructure pool_sample(Rng& rng, std::size_t) { return random_hilbert(rng, schema_pool()); }

PropertyReport prop_re_subset_base(const PropertyConfig& cfg) {
  return run_hilbert("re_subset_base", cfg, pool_sample, fixed_universe,
                     [](const HilbertStructure& h, const Universe& u, Ctx& ctx) -> Failure {
                       return need_subset(hilbert_dump(restrict_rules(h), u, ctx.k), hilbert_dump(h, u, ctx.k),
                                          "S^re", "S", ctx);
                     });
}

PropertyReport prop_re_idempotent(const PropertyConfig& cfg) {
  return run_hilbert("re_idempotent", cfg, pool_sample, fixed_universe,
                     [](const HilbertStructure& h, const Universe& u, Ctx& ctx) -> Failure {
                       const auto once = restrict_rules(h);
                       const auto twice = restrict_rules(once);
                       if (surviving_instances(once, u) != surviving_instances(twice, u))
                         return std::string("restricting twice changes the surviving rule instances");
                       return need_equal(hilbert_dump(twice, u, ctx.k), hilbert_dump(once, u, ctx.k), "(S^re)^re",
                                         "S^re", ctx);
                     });
}

PropertyReport prop_l_eq_re_iff(const PropertyConfig& cfg) {
  auto gen = [](Rng& rng, std::size_t i) {
    return i % 2 == 0 ? random_hilbert(rng, inclusion_safe_pool(), 0.5) : random_hilbert(rng, schema_pool());
  };
  auto report = run_hilbert(
      "l_eq_re_iff", cfg, gen, fixed_universe, [](const HilbertStructure& h, const Universe& u, Ctx& ctx) -> Failure {
        const TableDump L = relation_table(left_inclusion(), u, ctx.k);
        const TableDump base = hilbert_dump(h, u, ctx.k);
        const TableDump re = hilbert_dump(restrict_rules(h), u, ctx.k);
        const TableDump l = brute_companion(base, L);
        const TableDump re_l = brute_companion(re, L);
        const bool lhs = tables_equal(l, re), rhs = tables_equal(re_l, l);
        ctx.count(lhs ? "samples with S^l = S^re" : "samples with S^l != S^re");
        if (lhs != rhs)
          return std::string("S^l ") + (lhs ? "=" : "!=") + " S^re but (S^re)^l " + (rhs ? "=" : "!=") + " S^l";
        return std::nullopt;
      });
  if (report.result == PropertyResult::Pass && report.instances_run >= 2 &&
      (report.counter("samples with S^l = S^re") == 0 || report.counter("samples with S^l != S^re") == 0)) {
    report.result = PropertyResult::Inconclusive;
    report.detail = "only one side of the equivalence was exercised";
  }
  return report;
}

// Every surviving instance of h1^re is derivable in h2^re (axioms included).
bool rules_translate(const HilbertStructure& h1, const HilbertStructure& h2, const Universe& u) {
  const HilbertLogic target(restrict_rules(h2), u);
  for (const auto& inst : surviving_instances(restrict_rules(h1), u))
    if (!target.entail(inst.premises, inst.conclusion, {}).proved()) return false;
  return true;
}

PropertyReport prop_re_translation(const PropertyConfig& cfg) {
  PropertyReport r = hilbert_report("re_translation", cfg);
  Ctx ctx;
  ctx.k = cfg.premise_cap;
  ctx.cfg = cfg;
  auto check = [&](const HilbertStructure& h1, const HilbertStructure& h2, const Universe& u, std::size_t k,
                   const std::string& label) -> Failure {
    const bool hyp = rules_translate(h1, h2, u);
    ctx.count(hyp ? "pairs meeting the hypothesis" : "pairs failing the hypothesis");
    if (!hyp && cfg.enforce_hypotheses) return std::nullopt;
    if (auto f = need_subset(hilbert_dump(restrict_rules(h1), u, k), hilbert_dump(restrict_rules(h2), u, k),
                             "S1^re", "S2^re", ctx))
      return label + ": " + *f;
    return std::nullopt;
  };
  // The two-rule system against its extension by (A & B) / (A | B).
  const Universe lattice = Universe::up_to_depth(lattice_signature(), {"p", "q"}, 2);
  if (cfg.instances > 0) {
    ++r.instances_run;
    if (auto f = check(lattice_s1(), lattice_s2(), lattice, 1, "S1 into S2")) return fail(r, ctx, *f);
    // Reversed, the hypothesis fails on (p & q) / (p | q).
    if (rules_translate(lattice_s2(), lattice_s1(), lattice))
      return fail(r, ctx, "every S2^re rule instance is derivable in S1^re, contradicting (p & q) / (p | q)");
    ctx.count("reversed pair rejected by the hypothesis");
  }
  for (std::size_t i = 1; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r.name, cfg.seed, i);
    const HilbertStructure h1 = random_hilbert(rng, schema_pool());
    HilbertStructure h2 = random_hilbert(rng, schema_pool());
    if (coin(rng)) {
      auto all = h1.schemata();
      for (const auto& s : h2.schemata())
        if (!h1.find_schema(s.name)) all.push_back(s);
      h2 = HilbertStructure(connective_signature(), all);
    }
    ++r.instances_run;
    if (auto f = check(h1, h2, fixed_hilbert_universe(), ctx.k,
                       "instance " + std::to_string(i) + ", S1 = " + schema_names(h1) + ", S2 = " + schema_names(h2)))
      return fail(r, ctx, *f);
  }
  return finish(r, ctx);
}

PropertyReport prop_re_not_monotone(const PropertyConfig& cfg) {
  PropertyReport r = hilbert_report("re_not_monotone_in_base", cfg);
  Ctx ctx;
  ctx.k = 1;
  ctx.cfg = cfg;
  r.instances_run = 1;
  const Universe u = Universe::up_to_depth(lattice_signature(), {"p", "q"}, 2);
  const auto s1 = lattice_s1(), s2 = lattice_s2();
  if (auto f = need_subset(hilbert_dump(s2, u, 1), hilbert_dump(s1, u, 1), "S2", "S1", ctx)) return fail(r, ctx, *f);
  const TableDump re1 = hilbert_dump(restrict_rules(s1), u, 1), re2 = hilbert_dump(restrict_rules(s2), u, 1);
  const auto sig = lattice_signature();
  const Formula conj = parse("(p & q)", sig), disj = parse("(p | q)", sig);
  const IndexSet gamma{u.index(conj)};
  if (!re2.holds(gamma, u.index(disj))) return fail(r, ctx, "S2^re does not derive (p | q) from (p & q)");
  if (re1.holds(gamma, u.index(disj))) return fail(r, ctx, "S1^re derives (p | q) from (p & q)");
  const Verdict v = derive(restrict_rules(s2), {conj}, disj, u, 1000);
  std::string why;
  if (!v.proved() || !check_derivation(restrict_rules(s2), {conj}, disj, std::get<Derivation>(v.certificate), &why))
    return fail(r, ctx, "derivation of (p | q) in S2^re does not replay: " + why);
  ctx.count("derivation steps", std::get<Derivation>(v.certificate).steps.size());
  if (!derive(restrict_rules(s1), {conj}, disj, u, 1000).refuted())
    return fail(r, ctx, "S1^re does not reach a fixpoint without (p | q)");
  if (auto f = need_subset(re2, re1, "S2^re", "S1^re", ctx); !f)
    return fail(r, ctx, "S2^re is contained in S1^re");
  return finish(r, ctx);
}

std::vector<Relation> pi_for(std::size_t i) {
  switch (i % 3) {
    case 0: return {left_inclusion()};
    case 1: return {right_inclusion()};
    default: return {left_inclusion(), right_inclusion()};
  }
}

std::string pi_name(std::size_t i) {
  static const char* names[] = {"{L}", "{PR}", "{L,PR}"};
  return names[i % 3];
}

Universe closed_universe(Rng& rng, std::size_t) { return random_closed_universe(rng, kHilbertUniverse); }

PropertyReport prop_pi_eq_rho(const PropertyConfig& cfg) {
  std::size_t index = 0;
  return run_hilbert("pi_eq_rho", cfg, pool_sample, closed_universe,
                     [&index](const HilbertStructure& h, const Universe& u, Ctx& ctx) -> Failure {
                       const std::size_t i = index++;
                       const std::size_t k = u.size();
                       const HilbertStructure restricted = restrict_by(h, pi_for(i));
                       auto restricted_logic = std::make_shared<const HilbertLogic>(restricted, u);
                       const TableDump pi = dump(*restricted_logic, u, k);
                       const TableDump rho = relation_table(from_structure(restricted_logic), u, k);
                       const TableDump base = hilbert_dump(h, u, k);
                       ctx.count("Pi = " + pi_name(i));
                       return need_equal(pi, brute_companion(base, rho), "S^Pi (Pi = " + pi_name(i) + ")",
                                         "S^rho with rho = S^Pi", ctx);
                     });
}

PropertyReport prop_hilbert_tarski(const PropertyConfig& cfg) {
  std::size_t index = 0;
  return run_hilbert("hilbert_tarski", cfg, pool_sample, closed_universe,
                     [&index](const HilbertStructure& h, const Universe& u, Ctx& ctx) -> Failure {
                       const std::size_t i = index++;
                       const std::vector<std::pair<std::string, HilbertStructure>> checked = {
                           {"S", h}, {"S^Pi (Pi = " + pi_name(i) + ")", restrict_by(h, pi_for(i))}};
                       for (const auto& [label, structure] : checked) {
                         const TableDump d = hilbert_dump(structure, u, u.size());
                         const TarskiReport t = check_tarski(d.as_structure());
                         ctx.count("dumps checked");
                         if (!t.reflexive) return label + " not reflexive: " + t.reflexive_violation.value_or("");
                         if (!t.monotonic) return label + " not monotonic: " + t.monotonic_violation.value_or("");
                         if (!t.transitive) return label + " not transitive: " + t.transitive_violation.value_or("");
                         if (!t.finitary) return label + " not finitary";
                       }
                       return std::nullopt;
                     });
}

// ---------------------------------------------------------------------------
// Registry

struct Entry {
  PropertyInfo info;
  std::function<PropertyReport(const std::string&, const PropertyConfig&)> run;
};

std::function<PropertyReport(const std::string&, const PropertyConfig&)> ext(ExtLaw law) {
  return [law = std::move(law)](const std::string& name, const PropertyConfig& cfg) { return run_ext(name, law, cfg); };
}

template <typename F>
std::function<PropertyReport(const std::string&, const PropertyConfig&)> direct(F f) {
  return [f](const std::string&, const PropertyConfig& cfg) { return f(cfg); };
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {{"l_monotone", "S^l is monotone; if S is monotone then |-^l is contained in |-"}, ext(law_rho_monotone(false, true))},
      {{"l_idempotent", "(|-^l)^l = |-^l"}, ext(law_idempotent(false, true))},
      {{"re_subset_base", "|-^re is contained in |-"}, direct(prop_re_subset_base)},
      {{"re_idempotent", "(|-^re)^re = |-^re"}, direct(prop_re_idempotent)},
      {{"l_pair_monotone", "|-1 in |-2 implies |-1^l in |-2^l"}, ext(law_pair_monotone(false, true))},
      {{"re_translation", "if every rule of S1^re is derivable in S2^re then |-1^re is contained in |-2^re"},
       direct(prop_re_translation)},
      {{"re_not_monotone_in_base", "|-2 in |-1 but |-2^re not in |-1^re for the conjunction/disjunction pair"},
       direct(prop_re_not_monotone)},
      {{"l_eq_re_iff", "|-^l = |-^re iff (|-^re)^l = |-^l"}, direct(prop_l_eq_re_iff)},
      {{"rho_monotone", "S^rho is monotone"}, ext(law_rho_monotone(false, false))},
      {{"rho_monotone_pure", "S^prho is monotone"}, ext(law_rho_monotone(true, false))},
      {{"rho_subset_base", "S monotone implies |-^rho in |-"}, ext(law_rho_subset_base(false))},
      {{"rho_subset_base_pure", "S monotone implies |-^prho in |-"}, ext(law_rho_subset_base(true))},
      {{"rho_idempotent", "(|-^rho)^rho = |-^rho"}, ext(law_idempotent(false, false))},
      {{"rho_idempotent_pure", "(|-^prho)^prho = |-^prho"}, ext(law_idempotent(true, false))},
      {{"companion_idempotent", "(|-^rho)^rho = |-^rho and (|-^prho)^prho = |-^prho"}, nullptr},
      {{"pair_monotone", "|-1 in |-2 and rho in sigma imply |-1^rho in |-2^sigma"}, ext(law_pair_monotone(false, false))},
      {{"pair_monotone_pure", "|-1 in |-2 and rho in sigma imply |-1^prho in |-2^psigma"},
       ext(law_pair_monotone(true, false))},
      {{"union_intersect", "|-^rho, |-^sigma in |-^(rho u sigma) and |-^(rho n sigma) in |-^rho, |-^sigma"},
       ext(law_union_intersect())},
      {{"comp_i", "(|-^rho)^sigma in |-^rho, with equality when rho in sigma"}, ext(law_comp(1))},
      {{"comp_ii", "S monotone implies (|-^rho)^sigma in |-^sigma"}, ext(law_comp(2))},
      {{"comp_iii", "rho in sigma implies (|-^rho)^sigma in |-^sigma"}, ext(law_comp(3))},
      {{"comp_iv", "|-^sigma in |-^rho implies |-^sigma in (|-^rho)^sigma"}, ext(law_comp(4))},
      {{"comp_v", "rho in sigma implies (|-^rho = |-^sigma iff (|-^rho)^sigma = |-^sigma)"}, ext(law_comp(5))},
      {{"dd_commute", "sigma downward-directed implies (|-^rho)^sigma in (|-^sigma)^rho; equality if both are"},
       ext(law_dd_commute())},
      {{"theoremhood", "(0, a) in rho for all a implies (|- a iff |-^rho a)"}, ext(law_theoremhood())},
      {{"finite_reach_nontrivial", "a premise set whose reach leaves some formula out is nontrivial in S^rho"},
       ext(law_finite_reach())},
      {{"ecq_failures", "under the reach surplus, gECQ, spECQ and negation-ECQ fail in S^rho and S^prho"},
       ext(law_ecq_failures())},
      {{"pi_eq_rho", "|-^Pi equals the rho-companion with rho = |-^Pi"}, direct(prop_pi_eq_rho)},
      {{"hilbert_tarski", "dumped Hilbert structures are reflexive, monotonic, transitive and finitary"},
       direct(prop_hilbert_tarski)},
  };
  return entries;
}

}  // namespace

const std::vector<PropertyInfo>& list_properties() {
  static const std::vector<PropertyInfo> infos = [] {
    std::vector<PropertyInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

bool has_property(const std::string& name) {
  return std::any_of(registry().begin(), registry().end(), [&](const Entry& e) { return e.info.name == name; });
}

PropertyReport run_property(const std::string& name, const PropertyConfig& cfg) {
  for (const auto& e : registry()) {
    if (e.info.name != name) continue;
    if (name == "companion_idempotent") {
      // Both variants; the report carries the first non-pass.
      PropertyReport plain = run_property("rho_idempotent", cfg);
      PropertyReport pure = run_property("rho_idempotent_pure", cfg);
      PropertyReport& pick = plain.result != PropertyResult::Pass ? plain : pure;
      pick.name = name;
      pick.instances_run = plain.instances_run + pure.instances_run;
      return pick;
    }
    return e.run(name, cfg);
  }
  throw Error(ErrorCode::UnknownProperty, "no property named '" + name + "'");
}

}  // namespace relatio
