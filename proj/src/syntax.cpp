#include "relatio/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "relatio/error.hpp"

namespace relatio {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnbalancedParenthesis: return "UnbalancedParenthesis";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnexpectedToken: return "UnexpectedToken";
    case ErrorCode::InvalidSignature: return "InvalidSignature";
    case ErrorCode::OutOfUniverse: return "OutOfUniverse";
    case ErrorCode::MissingTable: return "MissingTable";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::PremiseSetTooLarge: return "PremiseSetTooLarge";
    case ErrorCode::IndeterminateNontriviality: return "IndeterminateNontriviality";
    case ErrorCode::CapMismatch: return "CapMismatch";
    case ErrorCode::UnknownProperty: return "UnknownProperty";
    case ErrorCode::InvalidDefinition: return "InvalidDefinition";
    case ErrorCode::InvalidCompanionSpec: return "InvalidCompanionSpec";
    case ErrorCode::Io: return "Io";
  }
  return "Error";
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_reserved(char c) {
  return c == '(' || c == ')' || c == ',' || c == '?' || std::isspace(static_cast<unsigned char>(c));
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s.front())) return false;
  return std::all_of(s.begin(), s.end(), is_ident_char);
}

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool is_variable_token(std::string_view token) {
  return !token.empty() && token.front() >= 'a' && token.front() <= 'z' && is_identifier(token);
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::initializer_list<Connective> connectives) {
  for (const auto& c : connectives) add(c);
}

void Signature::add(Connective connective) {
  const std::string& sym = connective.symbol;
  if (sym.empty()) throw Error(ErrorCode::InvalidSignature, "empty connective symbol");
  if (is_variable_token(sym))
    throw Error(ErrorCode::InvalidSignature, "symbol '" + sym + "' collides with variable tokens");
  const bool ident = is_identifier(sym);
  const bool punct = std::none_of(sym.begin(), sym.end(), [](char c) { return is_ident_char(c) || is_reserved(c); });
  if (!ident && !punct)
    throw Error(ErrorCode::InvalidSignature, "symbol '" + sym + "' mixes identifier and punctuation characters");
  if (contains(sym)) throw Error(ErrorCode::InvalidSignature, "duplicate symbol '" + sym + "'");
  connectives_.push_back(std::move(connective));
}

std::optional<std::size_t> Signature::arity(std::string_view symbol) const {
  for (const auto& c : connectives_)
    if (c.symbol == symbol) return c.arity;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Variable;
  node->vars = {name};
  node->hash = hash_combine(1, std::hash<std::string>{}(name));
  node->symbol = std::move(name);
  node->depth = 0;
  node->has_meta = false;
  return Formula(std::move(node));
}

Formula Formula::meta(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Metavariable;
  node->hash = hash_combine(2, std::hash<std::string>{}(name));
  node->symbol = std::move(name);
  node->depth = 0;
  node->has_meta = true;
  return Formula(std::move(node));
}

Formula Formula::app(std::string symbol, std::vector<Formula> args) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Application;
  std::size_t h = hash_combine(3, std::hash<std::string>{}(symbol));
  std::size_t depth = 0;
  bool has_meta = false;
  std::vector<std::string> vars;
  for (const auto& a : args) {
    h = hash_combine(h, a.hash());
    depth = std::max(depth, a.depth() + 1);
    has_meta = has_meta || a.has_metavariables();
    std::vector<std::string> merged;
    merged.reserve(vars.size() + a.variables().size());
    std::set_union(vars.begin(), vars.end(), a.variables().begin(), a.variables().end(),
                   std::back_inserter(merged));
    vars = std::move(merged);
  }
  node->symbol = std::move(symbol);
  node->args = std::move(args);
  node->vars = std::move(vars);
  node->depth = depth;
  node->hash = h;
  node->has_meta = has_meta;
  return Formula(std::move(node));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.symbol() != b.symbol()) return false;
  const auto& xs = a.node_->args;
  const auto& ys = b.node_->args;
  return xs.size() == ys.size() && std::equal(xs.begin(), xs.end(), ys.begin());
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.depth() <=> b.depth(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.symbol() <=> b.symbol(); c != 0) return c;
  const auto& xs = a.node_->args;
  const auto& ys = b.node_->args;
  return std::lexicographical_compare_three_way(xs.begin(), xs.end(), ys.begin(), ys.end());
}

// ---------------------------------------------------------------------------
// Variables

VarSet::VarSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

bool VarSet::contains(std::string_view name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

bool VarSet::subset_of(const VarSet& other) const {
  return std::includes(other.names_.begin(), other.names_.end(), names_.begin(), names_.end());
}

void VarSet::unite(std::span<const std::string> names) {
  if (names.empty()) return;
  std::vector<std::string> merged;
  merged.reserve(names_.size() + names.size());
  std::set_union(names_.begin(), names_.end(), names.begin(), names.end(), std::back_inserter(merged));
  names_ = std::move(merged);
}

VarSet vars(const Formula& f) { return VarSet(f.variables()); }

// ---------------------------------------------------------------------------
// Substitution and matching

Substitution::Substitution(std::initializer_list<std::pair<const Formula, Formula>> init) {
  for (const auto& [leaf, image] : init) bind(leaf, image);
}

bool Substitution::bind(const Formula& leaf, const Formula& image) {
  auto [it, inserted] = map_.emplace(leaf, image);
  return inserted || it->second == image;
}

const Formula* Substitution::find(const Formula& leaf) const {
  auto it = map_.find(leaf);
  return it == map_.end() ? nullptr : &it->second;
}

Formula substitute(const Substitution& s, const Formula& f) {
  if (f.is_leaf()) {
    const Formula* image = s.find(f);
    return image ? *image : f;
  }
  std::vector<Formula> args;
  args.reserve(f.args().size());
  bool changed = false;
  for (const auto& a : f.args()) {
    args.push_back(substitute(s, a));
    changed = changed || !(args.back() == a);
  }
  return changed ? Formula::app(f.symbol(), std::move(args)) : f;
}

bool match(const Formula& pattern, const Formula& ground, Substitution& binding) {
  if (pattern.is_meta()) return binding.bind(pattern, ground);
  if (!pattern.has_metavariables()) return pattern == ground;
  if (ground.kind() != Formula::Kind::Application || pattern.symbol() != ground.symbol() ||
      pattern.args().size() != ground.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match(pattern.args()[i], ground.args()[i], binding)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { End, LParen, RParen, Comma, Variable, Meta, Symbol };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::size_t col = pos_ + 1;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", col});
        return out;
      }
      const char c = text_[pos_];
      if (c == '(' || c == ')' || c == ',') {
        ++pos_;
        out.push_back({c == '(' ? Tok::LParen : c == ')' ? Tok::RParen : Tok::Comma, std::string(1, c), col});
      } else if (c == '?') {
        ++pos_;
        std::string name = identifier();
        if (name.empty()) throw SyntaxError(ErrorCode::UnknownSymbol, "'?' must be followed by a name", 1, col);
        out.push_back({Tok::Meta, std::move(name), col});
      } else if (is_ident_start(c)) {
        std::string name = identifier();
        if (sig_.contains(name)) {
          out.push_back({Tok::Symbol, std::move(name), col});
        } else if (is_variable_token(name)) {
          out.push_back({Tok::Variable, std::move(name), col});
        } else {
          throw SyntaxError(ErrorCode::UnknownSymbol, "unknown symbol '" + name + "'", 1, col);
        }
      } else {
        std::string best;
        for (const auto& conn : sig_.connectives()) {
          const auto& sym = conn.symbol;
          if (is_identifier(sym) || sym.size() <= best.size()) continue;
          if (text_.substr(pos_, sym.size()) == sym) best = sym;
        }
        if (best.empty()) {
          std::size_t end = pos_;
          while (end < text_.size() && !is_reserved(text_[end]) && !is_ident_char(text_[end])) ++end;
          throw SyntaxError(ErrorCode::UnknownSymbol,
                            "unknown symbol '" + std::string(text_.substr(pos_, std::max<std::size_t>(1, end - pos_))) + "'",
                            1, col);
        }
        pos_ += best.size();
        out.push_back({Tok::Symbol, std::move(best), col});
      }
    }
  }

 private:
  std::string identifier() {
    const std::size_t start = pos_;
    if (pos_ < text_.size() && is_ident_start(text_[pos_])) {
      ++pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Signature& sig) : toks_(std::move(tokens)), sig_(sig) {}

  Formula parse_all() {
    if (peek().kind == Tok::End) throw SyntaxError(ErrorCode::EmptyInput, "empty formula", 1, 1);
    Formula f = formula();
    const Token& t = peek();
    if (t.kind == Tok::RParen) throw error(ErrorCode::UnbalancedParenthesis, "unmatched ')'", t);
    if (t.kind != Tok::End) throw error(ErrorCode::UnexpectedToken, "trailing '" + t.text + "'", t);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  SyntaxError error(ErrorCode code, const std::string& msg, const Token& t) const {
    return SyntaxError(code, msg, 1, t.column);
  }

  [[noreturn]] void premature_end(const Token& t) const {
    if (open_ > 0) throw error(ErrorCode::UnbalancedParenthesis, "input ends inside parentheses", t);
    throw error(ErrorCode::ArityMismatch, "missing operand", t);
  }

  Formula formula() {
    const Token t = next();
    switch (t.kind) {
      case Tok::End: premature_end(t);
      case Tok::Variable: return Formula::var(t.text);
      case Tok::Meta: return Formula::meta(t.text);
      case Tok::RParen: throw error(ErrorCode::UnbalancedParenthesis, "unexpected ')'", t);
      case Tok::Comma: throw error(ErrorCode::UnexpectedToken, "unexpected ','", t);
      case Tok::LParen: return infix(t);
      case Tok::Symbol: break;
    }
    const std::size_t arity = *sig_.arity(t.text);
    if (arity == 0) return Formula::app(t.text);
    if (arity == 1) return Formula::app(t.text, {formula()});
    if (arity == 2) throw error(ErrorCode::ArityMismatch, "binary '" + t.text + "' used as prefix", t);
    return functional(t, arity);
  }

  Formula infix(const Token& open) {
    ++open_;
    Formula lhs = formula();
    const Token op = next();
    if (op.kind == Tok::End) premature_end(op);
    if (op.kind != Tok::Symbol || sig_.arity(op.text) != 2u)
      throw error(ErrorCode::ArityMismatch, "expected a binary connective after '(' at column " +
                                                std::to_string(open.column),
                  op);
    Formula rhs = formula();
    const Token close = next();
    if (close.kind == Tok::End) premature_end(close);
    if (close.kind != Tok::RParen)
      throw error(ErrorCode::ArityMismatch, "binary '" + op.text + "' takes exactly two operands", close);
    --open_;
    return Formula::app(op.text, {std::move(lhs), std::move(rhs)});
  }

  Formula functional(const Token& sym, std::size_t arity) {
    const Token open = next();
    if (open.kind == Tok::End) premature_end(open);
    if (open.kind != Tok::LParen) throw error(ErrorCode::ArityMismatch, "'" + sym.text + "' expects '('", open);
    ++open_;
    std::vector<Formula> args;
    while (true) {
      args.push_back(formula());
      const Token sep = next();
      if (sep.kind == Tok::End) premature_end(sep);
      if (sep.kind == Tok::RParen) break;
      if (sep.kind != Tok::Comma) throw error(ErrorCode::UnexpectedToken, "expected ',' or ')'", sep);
    }
    --open_;
    if (args.size() != arity)
      throw error(ErrorCode::ArityMismatch,
                  "'" + sym.text + "' expects " + std::to_string(arity) + " arguments, got " +
                      std::to_string(args.size()),
                  sym);
    return Formula::app(sym.text, std::move(args));
  }

  std::vector<Token> toks_;
  const Signature& sig_;
  std::size_t pos_ = 0;
  std::size_t open_ = 0;
};

}  // namespace

Formula parse(std::string_view text, const Signature& sig) {
  return Parser(Lexer(text, sig).run(), sig).parse_all();
}

std::vector<Formula> parse_list(std::string_view text, const Signature& sig) {
  std::vector<Formula> out;
  if (std::all_of(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
    return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size()) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')') --depth;
      if (text[i] != ',' || depth != 0) continue;
    }
    out.push_back(parse(text.substr(start, i - start), sig));
    start = i + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_to(std::string& out, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Variable: out += f.symbol(); return;
    case Formula::Kind::Metavariable: out += '?'; out += f.symbol(); return;
    case Formula::Kind::Application: break;
  }
  const auto args = f.args();
  if (args.empty()) {
    out += f.symbol();
  } else if (args.size() == 1) {
    out += f.symbol();
    if (is_ident_char(f.symbol().back())) out += ' ';
    print_to(out, args[0]);
  } else if (args.size() == 2) {
    out += '(';
    print_to(out, args[0]);
    out += ' ';
    out += f.symbol();
    out += ' ';
    print_to(out, args[1]);
    out += ')';
  } else {
    out += f.symbol();
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ',';
      print_to(out, args[i]);
    }
    out += ')';
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_to(out, f);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << print(f); }

std::string print_set(const FormulaSet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& f : set) {
    if (!first) out += ", ";
    first = false;
    print_to(out, f);
  }
  return out + "}";
}

}  // namespace relatio
