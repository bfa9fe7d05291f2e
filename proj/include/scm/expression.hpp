#pragma once

#include "scm/model.hpp"

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scm {

/// Result of evaluating an expression: a number, a boolean, or a symbolic token.
using ExprValue = std::variant<Rational, bool, std::string>;

/// Small arithmetic/boolean language used to define mechanisms in documents.
///
///   ternary  := or ('?' ternary ':' ternary)?
///   or       := and (('||' | 'or') and)*
///   and      := not (('&&' | 'and') not)*
///   not      := ('!' | 'not') not | compare
///   compare  := sum (('==' | '!=' | '<' | '<=' | '>' | '>=') sum | 'in' '{' list '}')?
///   sum      := product (('+' | '-') product)*
///   product  := unary (('*' | '/' | '%') unary)*
///   unary    := '-' unary | primary
///   primary  := number | "string" | identifier | call | '(' ternary ')'
///   call     := ('min' | 'max' | 'abs') '(' list ')'
///
/// Identifiers bind to parent values: annotated values act as numbers, others as tokens.
/// Booleans coerce to 0/1 in arithmetic.
class Expression {
public:
  struct Node;

  /// Throws ScmError(Parse).
  static Expression parse(std::string_view text);

  using Lookup = std::function<const Value*(std::string_view)>;
  /// Throws ScmError(Parse) on type errors or unbound identifiers.
  ExprValue evaluate(const Lookup& lookup) const;

  const std::set<std::string>& identifiers() const { return identifiers_; }
  const std::string& text() const { return text_; }

private:
  std::shared_ptr<const Node> root_;
  std::set<std::string> identifiers_;
  std::string text_;
};

/// Tabulates the expression over the product of the parents' spaces.
/// Throws ScmError(Parse) when a result does not name a value of `target`.
std::vector<ValueIndex> tabulate(const Expression& expr, const std::vector<NodeDecl>& parents,
                                 const OutcomeSpace& target);

} // namespace scm
