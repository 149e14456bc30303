#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace epimc {

// A primitive proposition of the model's vocabulary Phi.
struct Proposition {
  std::string name;
  std::string gloss;
};

enum class FormulaKind { Prop, Not, And, Knows, BKnows };

// Immutable formula AST. Only the core connectives are represented;
// "|" and "->" exist in the concrete syntax and are desugared by the
// parser into Not/And. Identity is structural, so two formulas that
// print the same compare equal.
class Formula {
public:
  Formula() = default;  // empty handle; only valid as a target of assignment

  static Formula prop(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula knows(std::string agent, Formula f);
  static Formula bknows(Formula f);

  FormulaKind kind() const;
  const std::string& prop_name() const;  // Prop
  const std::string& agent() const;      // Knows
  const Formula& child() const;          // Not, Knows, BKnows
  const Formula& left() const;           // And
  const Formula& right() const;          // And

  bool valid() const { return node_ != nullptr; }
  std::size_t hash() const;
  bool operator==(const Formula& other) const;

  // Canonical text; parse_formula(text()) reproduces the same AST.
  std::string text() const;

  bool contains_epistemic() const;  // any Knows or BKnows node
  bool contains_bknows() const;

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Grammar:
//   formula := impl
//   impl    := disj ("->" impl)?
//   disj    := conj ("|" conj)*
//   conj    := unary ("&" unary)*
//   unary   := "!" unary | "K[" ident "]" unary | "Khat" unary
//            | "(" formula ")" | ident
//   ident   := [a-z_][a-zA-Z0-9_.]*
// "a | b" desugars to !(!a & !b) and "a -> b" to !(a & !b).
Formula parse_formula(std::string_view text);

// Post-order subformula listing: children before parents, no duplicates.
std::vector<Formula> subformulas(const Formula& f);

// Replaces every occurrence of the named proposition by a formula.
Formula substitute(const Formula& f, const std::string& prop, const Formula& replacement);

// An element of Phi^c: a proposition or its negation.
struct Literal {
  std::string prop;
  bool negated = false;

  Formula to_formula() const;
  std::string text() const { return negated ? "!" + prop : prop; }
  auto operator<=>(const Literal&) const = default;
};

// Accepts "p" or "!p".
Literal parse_literal(std::string_view text);

// A deduction "l1 & ... & lk -> Khat phi" with literal antecedents only.
struct Implication {
  std::vector<Literal> antecedents;
  Formula conclusion;  // the phi under Khat

  std::string text() const;
};

Implication parse_implication(std::string_view text);

}  // namespace epimc
