#include "epimc/formula.hpp"

#include <cctype>
#include <unordered_set>
#include <utility>

#include "epimc/errors.hpp"

namespace epimc {

struct Formula::Node {
  FormulaKind kind;
  std::string name;  // proposition name or agent name
  Formula lhs;
  Formula rhs;
  std::size_t hash = 0;
};

namespace {

std::size_t combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t node_hash(FormulaKind kind, const std::string& name,
                      const Formula& lhs, const Formula& rhs) {
  std::size_t h = combine(static_cast<std::size_t>(kind) + 1, std::hash<std::string>{}(name));
  if (lhs.valid()) h = combine(h, lhs.hash());
  if (rhs.valid()) h = combine(h, rhs.hash());
  return h;
}

}  // namespace

Formula Formula::prop(std::string name) {
  auto node = std::make_shared<Node>(Node{FormulaKind::Prop, std::move(name), {}, {}});
  node->hash = node_hash(node->kind, node->name, node->lhs, node->rhs);
  return Formula(std::move(node));
}

Formula Formula::negation(Formula f) {
  auto node = std::make_shared<Node>(Node{FormulaKind::Not, {}, std::move(f), {}});
  node->hash = node_hash(node->kind, node->name, node->lhs, node->rhs);
  return Formula(std::move(node));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>(Node{FormulaKind::And, {}, std::move(lhs), std::move(rhs)});
  node->hash = node_hash(node->kind, node->name, node->lhs, node->rhs);
  return Formula(std::move(node));
}

Formula Formula::knows(std::string agent, Formula f) {
  auto node = std::make_shared<Node>(Node{FormulaKind::Knows, std::move(agent), std::move(f), {}});
  node->hash = node_hash(node->kind, node->name, node->lhs, node->rhs);
  return Formula(std::move(node));
}

Formula Formula::bknows(Formula f) {
  auto node = std::make_shared<Node>(Node{FormulaKind::BKnows, {}, std::move(f), {}});
  node->hash = node_hash(node->kind, node->name, node->lhs, node->rhs);
  return Formula(std::move(node));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::prop_name() const { return node_->name; }
const std::string& Formula::agent() const { return node_->name; }
const Formula& Formula::child() const { return node_->lhs; }
const Formula& Formula::left() const { return node_->lhs; }
const Formula& Formula::right() const { return node_->rhs; }
std::size_t Formula::hash() const { return node_->hash; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->hash != other.node_->hash || node_->kind != other.node_->kind ||
      node_->name != other.node_->name)
    return false;
  if (node_->lhs.valid() != other.node_->lhs.valid()) return false;
  if (node_->rhs.valid() != other.node_->rhs.valid()) return false;
  if (node_->lhs.valid() && !(node_->lhs == other.node_->lhs)) return false;
  if (node_->rhs.valid() && !(node_->rhs == other.node_->rhs)) return false;
  return true;
}

namespace {

// Precedence used for minimal parenthesization: And binds looser than the
// prefix operators, which bind looser than atoms.
constexpr int kPrecAnd = 2;
constexpr int kPrecUnary = 3;
constexpr int kPrecAtom = 4;

int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Prop: return kPrecAtom;
    case FormulaKind::And: return kPrecAnd;
    default: return kPrecUnary;
  }
}

void print_into(const Formula& f, int min_prec, std::string& out) {
  const bool parens = precedence(f) < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case FormulaKind::Prop:
      out += f.prop_name();
      break;
    case FormulaKind::Not:
      out += '!';
      print_into(f.child(), kPrecUnary, out);
      break;
    case FormulaKind::Knows:
      out += "K[";
      out += f.agent();
      out += "] ";
      print_into(f.child(), kPrecUnary, out);
      break;
    case FormulaKind::BKnows:
      out += "Khat ";
      print_into(f.child(), kPrecUnary, out);
      break;
    case FormulaKind::And:
      print_into(f.left(), kPrecAnd, out);
      out += " & ";
      print_into(f.right(), kPrecUnary, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string Formula::text() const {
  std::string out;
  print_into(*this, 0, out);
  return out;
}

bool Formula::contains_epistemic() const {
  switch (kind()) {
    case FormulaKind::Prop: return false;
    case FormulaKind::Knows:
    case FormulaKind::BKnows: return true;
    case FormulaKind::Not: return child().contains_epistemic();
    case FormulaKind::And: return left().contains_epistemic() || right().contains_epistemic();
  }
  return false;
}

bool Formula::contains_bknows() const {
  switch (kind()) {
    case FormulaKind::Prop: return false;
    case FormulaKind::BKnows: return true;
    case FormulaKind::Not:
    case FormulaKind::Knows: return child().contains_bknows();
    case FormulaKind::And: return left().contains_bknows() || right().contains_bknows();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parsing. The surface syntax has "|" and "->" which are lowered while the
// input is consumed, except that parse_implication needs the undesugared
// shape, so the recursive descent builds a small surface tree first.

namespace {

enum class TokKind { Ident, Bang, Amp, Pipe, Arrow, LParen, RParen, KOpen, Khat, End };

struct Token {
  TokKind kind;
  std::string ident;
  std::size_t column;  // 1-based
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool ident_continue(char c) {
  return ident_start(c) || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.';
}

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t col = pos_ + 1;
    if (pos_ >= text_.size()) {
      current_ = {TokKind::End, {}, col};
      return;
    }
    const char c = text_[pos_];
    switch (c) {
      case '!': ++pos_; current_ = {TokKind::Bang, {}, col}; return;
      case '&': ++pos_; current_ = {TokKind::Amp, {}, col}; return;
      case '|': ++pos_; current_ = {TokKind::Pipe, {}, col}; return;
      case '(': ++pos_; current_ = {TokKind::LParen, {}, col}; return;
      case ')': ++pos_; current_ = {TokKind::RParen, {}, col}; return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          current_ = {TokKind::Arrow, {}, col};
          return;
        }
        throw ParseError("unknown operator '-'", col);
      case 'K':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '[') {
          // Lex the whole "K[agent]" as one token.
          std::size_t p = pos_ + 2;
          while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
          if (p >= text_.size() || !ident_start(text_[p]))
            throw ParseError("expected agent name after 'K['", p + 1);
          std::size_t end = p + 1;
          while (end < text_.size() && ident_continue(text_[end])) ++end;
          std::string agent(text_.substr(p, end - p));
          while (end < text_.size() && std::isspace(static_cast<unsigned char>(text_[end]))) ++end;
          if (end >= text_.size() || text_[end] != ']')
            throw ParseError("expected ']' after agent name", end + 1);
          pos_ = end + 1;
          current_ = {TokKind::KOpen, std::move(agent), col};
          return;
        }
        if (text_.compare(pos_, 4, "Khat") == 0 &&
            (pos_ + 4 >= text_.size() || !ident_continue(text_[pos_ + 4]))) {
          pos_ += 4;
          current_ = {TokKind::Khat, {}, col};
          return;
        }
        throw ParseError("unknown operator starting with 'K'", col);
      default:
        break;
    }
    if (ident_start(c)) {
      std::size_t end = pos_ + 1;
      while (end < text_.size() && ident_continue(text_[end])) ++end;
      current_ = {TokKind::Ident, std::string(text_.substr(pos_, end - pos_)), col};
      pos_ = end;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_{TokKind::End, {}, 1};
};

enum class SurfKind { Prop, Not, And, Or, Implies, Knows, BKnows };

struct Surface {
  SurfKind kind;
  std::string name;
  std::unique_ptr<Surface> lhs;
  std::unique_ptr<Surface> rhs;
};

using SurfPtr = std::unique_ptr<Surface>;

SurfPtr make_surf(SurfKind k, std::string name, SurfPtr lhs, SurfPtr rhs) {
  auto s = std::make_unique<Surface>();
  s->kind = k;
  s->name = std::move(name);
  s->lhs = std::move(lhs);
  s->rhs = std::move(rhs);
  return s;
}

class Parser {
public:
  explicit Parser(std::string_view text) : lex_(text) {}

  SurfPtr parse() {
    SurfPtr f = parse_impl();
    const Token& t = lex_.peek();
    if (t.kind != TokKind::End) {
      if (t.kind == TokKind::RParen) throw ParseError("unbalanced ')'", t.column);
      throw ParseError("trailing input after formula", t.column);
    }
    return f;
  }

private:
  SurfPtr parse_impl() {
    SurfPtr lhs = parse_disj();
    if (lex_.peek().kind == TokKind::Arrow) {
      lex_.take();
      SurfPtr rhs = parse_impl();  // right-associative
      return make_surf(SurfKind::Implies, {}, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  SurfPtr parse_disj() {
    SurfPtr lhs = parse_conj();
    while (lex_.peek().kind == TokKind::Pipe) {
      lex_.take();
      SurfPtr rhs = parse_conj();
      lhs = make_surf(SurfKind::Or, {}, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  SurfPtr parse_conj() {
    SurfPtr lhs = parse_unary();
    while (lex_.peek().kind == TokKind::Amp) {
      lex_.take();
      SurfPtr rhs = parse_unary();
      lhs = make_surf(SurfKind::And, {}, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  SurfPtr parse_unary() {
    const Token t = lex_.take();
    switch (t.kind) {
      case TokKind::Bang:
        return make_surf(SurfKind::Not, {}, parse_unary(), nullptr);
      case TokKind::Khat:
        return make_surf(SurfKind::BKnows, {}, parse_unary(), nullptr);
      case TokKind::KOpen:
        return make_surf(SurfKind::Knows, t.ident, parse_unary(), nullptr);
      case TokKind::LParen: {
        SurfPtr inner = parse_impl();
        const Token close = lex_.take();
        if (close.kind != TokKind::RParen)
          throw ParseError("unbalanced '(': expected ')'", close.column);
        return inner;
      }
      case TokKind::Ident:
        return make_surf(SurfKind::Prop, t.ident, nullptr, nullptr);
      case TokKind::End:
        throw ParseError("unexpected end of input", t.column);
      case TokKind::RParen:
        throw ParseError("unbalanced ')'", t.column);
      default:
        throw ParseError("expected a formula", t.column);
    }
  }

  Lexer lex_;
};

Formula desugar(const Surface& s) {
  switch (s.kind) {
    case SurfKind::Prop:
      return Formula::prop(s.name);
    case SurfKind::Not:
      return Formula::negation(desugar(*s.lhs));
    case SurfKind::And:
      return Formula::conjunction(desugar(*s.lhs), desugar(*s.rhs));
    case SurfKind::Or:
      // a | b == !(!a & !b)
      return Formula::negation(Formula::conjunction(
          Formula::negation(desugar(*s.lhs)), Formula::negation(desugar(*s.rhs))));
    case SurfKind::Implies:
      // a -> b == !(a & !b)
      return Formula::negation(
          Formula::conjunction(desugar(*s.lhs), Formula::negation(desugar(*s.rhs))));
    case SurfKind::Knows:
      return Formula::knows(s.name, desugar(*s.lhs));
    case SurfKind::BKnows:
      return Formula::bknows(desugar(*s.lhs));
  }
  throw ParseError("internal: bad surface node", 1);
}

// Collects "l1 & l2 & ..." from a left-leaning And chain of literals.
bool collect_literals(const Surface& s, std::vector<Literal>& out) {
  if (s.kind == SurfKind::And)
    return collect_literals(*s.lhs, out) && collect_literals(*s.rhs, out);
  if (s.kind == SurfKind::Prop) {
    out.push_back(Literal{s.name, false});
    return true;
  }
  if (s.kind == SurfKind::Not && s.lhs->kind == SurfKind::Prop) {
    out.push_back(Literal{s.lhs->name, true});
    return true;
  }
  return false;
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser parser(text);
  return desugar(*parser.parse());
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  auto visit = [&](auto&& self, const Formula& g) -> void {
    if (seen.contains(g)) return;
    switch (g.kind()) {
      case FormulaKind::Prop:
        break;
      case FormulaKind::Not:
      case FormulaKind::Knows:
      case FormulaKind::BKnows:
        self(self, g.child());
        break;
      case FormulaKind::And:
        self(self, g.left());
        self(self, g.right());
        break;
    }
    if (seen.insert(g).second) out.push_back(g);
  };
  visit(visit, f);
  return out;
}

Formula substitute(const Formula& f, const std::string& prop, const Formula& replacement) {
  switch (f.kind()) {
    case FormulaKind::Prop:
      return f.prop_name() == prop ? replacement : f;
    case FormulaKind::Not:
      return Formula::negation(substitute(f.child(), prop, replacement));
    case FormulaKind::And:
      return Formula::conjunction(substitute(f.left(), prop, replacement),
                                  substitute(f.right(), prop, replacement));
    case FormulaKind::Knows:
      return Formula::knows(f.agent(), substitute(f.child(), prop, replacement));
    case FormulaKind::BKnows:
      return Formula::bknows(substitute(f.child(), prop, replacement));
  }
  return f;
}

Formula Literal::to_formula() const {
  Formula p = Formula::prop(prop);
  return negated ? Formula::negation(std::move(p)) : p;
}

Literal parse_literal(std::string_view text) {
  Formula f = parse_formula(text);
  if (f.kind() == FormulaKind::Prop) return Literal{f.prop_name(), false};
  if (f.kind() == FormulaKind::Not && f.child().kind() == FormulaKind::Prop)
    return Literal{f.child().prop_name(), true};
  throw ParseError("expected a literal (proposition or its negation)", 1);
}

std::string Implication::text() const {
  std::string out;
  for (std::size_t i = 0; i < antecedents.size(); ++i) {
    if (i > 0) out += " & ";
    out += antecedents[i].text();
  }
  out += " -> Khat ";
  print_into(conclusion, kPrecUnary, out);
  return out;
}

Implication parse_implication(std::string_view text) {
  Parser parser(text);
  SurfPtr s = parser.parse();
  if (s->kind != SurfKind::Implies)
    throw ParseError("expected an implication 'literals -> Khat formula'", 1);
  Implication impl;
  if (!collect_literals(*s->lhs, impl.antecedents) || impl.antecedents.empty())
    throw ParseError("implication antecedents must be a conjunction of literals", 1);
  if (s->rhs->kind != SurfKind::BKnows)
    throw ParseError("implication conclusion must be of the form 'Khat formula'", 1);
  impl.conclusion = desugar(*s->rhs->lhs);
  return impl;
}

}  // namespace epimc
