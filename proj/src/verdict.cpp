#include "relatio/verdict.hpp"

#include <sstream>

namespace relatio {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Proved: return "Proved";
    case Outcome::Refuted: return "Refuted";
    case Outcome::Exhausted: return "Exhausted";
  }
  return "?";
}

std::string to_string(Scope s) { return s == Scope::Full ? "full" : "within-universe"; }

namespace {

std::string render(const Valuation& v) {
  std::string out;
  for (const auto& [var, val] : v) out += (out.empty() ? "" : ", ") + var + "=" + val;
  return out;
}

void render(std::ostream& os, const Certificate& c, const std::string& indent) {
  if (std::holds_alternative<TableCertificate>(c)) {
    os << indent << "listed in table\n";
  } else if (const auto* m = std::get_if<MatrixCertificate>(&c)) {
    os << indent << "checked " << m->checked << " valuations, " << m->designating.size()
       << " designate every premise\n";
  } else if (const auto* d = std::get_if<Derivation>(&c)) {
    for (std::size_t i = 0; i < d->steps.size(); ++i) {
      const auto& s = d->steps[i];
      os << indent << i + 1 << ". " << s.formula;
      if (!s.rule) {
        os << "  [hyp]\n";
        continue;
      }
      os << "  [" << *s.rule;
      for (std::size_t j = 0; j < s.premises.size(); ++j) os << (j ? "," : " ") << s.premises[j] + 1;
      os << "]\n";
    }
  } else if (const auto* s = std::get_if<SubsetCertificate>(&c)) {
    os << indent << "via " << print_set(s->subset) << "\n";
    if (s->base && s->base->proved()) render(os, s->base->certificate, indent + "  ");
  }
}

}  // namespace

std::string describe(const Verdict& v) {
  std::ostringstream os;
  os << to_string(v.outcome);
  switch (v.outcome) {
    case Outcome::Proved:
      os << "\n";
      render(os, v.certificate, "  ");
      break;
    case Outcome::Refuted:
      os << " (" << to_string(v.scope) << ")\n";
      if (v.witness) os << "  counter-valuation: " << render(*v.witness) << "\n";
      break;
    case Outcome::Exhausted:
      os << "\n  " << v.report << "\n";
      break;
  }
  return os.str();
}

}  // namespace relatio
