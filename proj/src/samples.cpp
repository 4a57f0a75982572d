#include "relatio/samples.hpp"

#include <cctype>

#include "relatio/error.hpp"

namespace relatio {

Signature lattice_signature() { return Signature{{"&", 2}, {"|", 2}}; }

Signature connective_signature() { return Signature{{"~", 1}, {"&", 2}, {"|", 2}, {">", 2}}; }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

RuleSchema parse_schema(std::string_view text, const Signature& sig) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::InvalidDefinition, "schema needs 'name: premises / conclusion'");
  std::string name(trim(text.substr(0, colon)));
  if (name.empty()) throw Error(ErrorCode::InvalidDefinition, "schema without a name");
  const auto body = text.substr(colon + 1);
  // The separator is the last '/' at parenthesis depth 0.
  std::size_t slash = std::string_view::npos;
  int depth = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '(') ++depth;
    else if (body[i] == ')') --depth;
    else if (body[i] == '/' && depth == 0) slash = i;
  }
  if (slash == std::string_view::npos)
    throw Error(ErrorCode::InvalidDefinition, "schema '" + name + "' has no '/' separator");
  // Positions in errors are relative to `text`.
  auto shifted = [&](std::string_view part, auto&& fn) {
    try {
      return fn(part);
    } catch (const SyntaxError& e) {
      throw SyntaxError(e.code(), e.detail(), e.line(), e.column() + static_cast<std::size_t>(part.data() - text.data()));
    }
  };
  auto premises = shifted(trim(body.substr(0, slash)), [&](std::string_view t) { return parse_list(t, sig); });
  auto conclusion = shifted(trim(body.substr(slash + 1)), [&](std::string_view t) { return parse(t, sig); });
  return RuleSchema{std::move(name), std::move(premises), std::move(conclusion)};
}

HilbertStructure lattice_s1() {
  const auto sig = lattice_signature();
  return HilbertStructure(sig, {parse_schema("R1: (?A & ?B) / ?A", sig), parse_schema("R2: ?A / (?A | ?B)", sig)});
}

HilbertStructure lattice_s2() {
  const auto sig = lattice_signature();
  return HilbertStructure(sig, {parse_schema("R1: (?A & ?B) / ?A", sig), parse_schema("R2: ?A / (?A | ?B)", sig),
                                parse_schema("R3: (?A & ?B) / (?A | ?B)", sig)});
}

std::vector<RuleSchema> schema_pool() {
  const auto sig = connective_signature();
  std::vector<RuleSchema> out;
  for (const char* text : {
           "AndL: (?A & ?B) / ?A",
           "AndR: (?A & ?B) / ?B",
           "OrL: ?A / (?A | ?B)",
           "OrR: ?B / (?A | ?B)",
           "AndOr: (?A & ?B) / (?A | ?B)",
           "MP: ?A, (?A > ?B) / ?B",
           "Conj: ?A, ?B / (?A & ?B)",
           "Weak: ?A / (?B > ?A)",
           "Exp: ?A, ~?A / ?B",
           "Id: / (?A > ?A)",
           "Swap: (?A | ?B) / (?B | ?A)",
       })
    out.push_back(parse_schema(text, sig));
  return out;
}

std::vector<RuleSchema> inclusion_safe_pool() {
  const auto sig = connective_signature();
  std::vector<RuleSchema> out;
  for (const char* text : {
           "OrL: ?A / (?A | ?B)",
           "OrR: ?B / (?A | ?B)",
           "AndOr: (?A & ?B) / (?A | ?B)",
           "Conj: ?A, ?B / (?A & ?B)",
           "Weak: ?A / (?B > ?A)",
           "Id: / (?A > ?A)",
           "Swap: (?A | ?B) / (?B | ?A)",
       })
    out.push_back(parse_schema(text, sig));
  return out;
}

}  // namespace relatio
