#include "scm/expression.hpp"

#include "scm/error.hpp"

#include <cctype>

namespace scm {

struct Expression::Node {
  enum class Kind { Literal, Identifier, Unary, Binary, Ternary, Membership, Call } kind;
  std::string op;  // operator, identifier name, or function name
  ExprValue literal;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

[[noreturn]] void fail(const std::string& message) { throw ScmError(ErrorCode::Parse, "expression: " + message); }

NodePtr make(Kind kind, std::string op, std::vector<NodePtr> args = {}, ExprValue literal = false) {
  return std::make_shared<const Expression::Node>(Expression::Node{kind, std::move(op), std::move(literal), std::move(args)});
}

struct Token {
  enum class Type { Number, String, Ident, Op, End } type;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        ++j;
      out.push_back({Token::Type::Number, std::string(s.substr(i, j - i))});
      i = j;
    } else if (c == '"' || c == '\'') {
      const auto end = s.find(c, i + 1);
      if (end == std::string_view::npos)
        fail("unterminated string literal");
      out.push_back({Token::Type::String, std::string(s.substr(i + 1, end - i - 1))});
      i = end + 1;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j]))
        ++j;
      out.push_back({Token::Type::Ident, std::string(s.substr(i, j - i))});
      i = j;
    } else {
      static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||"};
      bool matched = false;
      for (const char* op : two) {
        if (s.substr(i, 2) == op) {
          out.push_back({Token::Type::Op, op});
          i += 2;
          matched = true;
          break;
        }
      }
      if (matched)
        continue;
      if (std::string_view("+-*/%<>!?:(){},").find(c) == std::string_view::npos)
        fail(std::string("unexpected character '") + c + "'");
      out.push_back({Token::Type::Op, std::string(1, c)});
      ++i;
    }
  }
  out.push_back({Token::Type::End, ""});
  return out;
}

class Parser {
public:
  Parser(std::vector<Token> tokens, std::set<std::string>& identifiers)
      : tokens_(std::move(tokens)), identifiers_(identifiers) {}

  NodePtr parse() {
    NodePtr root = ternary();
    if (peek().type != Token::Type::End)
      fail("trailing input near '" + peek().text + "'");
    return root;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  bool accept(std::string_view op) {
    const Token& t = peek();
    if ((t.type == Token::Type::Op || t.type == Token::Type::Ident) && t.text == op) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view op) {
    if (!accept(op))
      fail("expected '" + std::string(op) + "'");
  }

  NodePtr ternary() {
    NodePtr cond = disjunction();
    if (accept("?")) {
      NodePtr a = ternary();
      expect(":");
      NodePtr b = ternary();
      return make(Kind::Ternary, "?", {cond, a, b});
    }
    return cond;
  }
  NodePtr disjunction() {
    NodePtr lhs = conjunction();
    while (accept("||") || accept("or"))
      lhs = make(Kind::Binary, "||", {lhs, conjunction()});
    return lhs;
  }
  NodePtr conjunction() {
    NodePtr lhs = negation();
    while (accept("&&") || accept("and"))
      lhs = make(Kind::Binary, "&&", {lhs, negation()});
    return lhs;
  }
  NodePtr negation() {
    if (accept("!") || accept("not"))
      return make(Kind::Unary, "!", {negation()});
    return comparison();
  }
  NodePtr comparison() {
    NodePtr lhs = sum();
    for (const char* op : {"==", "!=", "<=", ">=", "<", ">"}) {
      if (accept(op))
        return make(Kind::Binary, op, {lhs, sum()});
    }
    if (accept("in")) {
      expect("{");
      std::vector<NodePtr> args{lhs};
      if (!accept("}")) {
        do
          args.push_back(ternary());
        while (accept(","));
        expect("}");
      }
      return make(Kind::Membership, "in", std::move(args));
    }
    return lhs;
  }
  NodePtr sum() {
    NodePtr lhs = product();
    while (true) {
      if (accept("+"))
        lhs = make(Kind::Binary, "+", {lhs, product()});
      else if (accept("-"))
        lhs = make(Kind::Binary, "-", {lhs, product()});
      else
        return lhs;
    }
  }
  NodePtr product() {
    NodePtr lhs = unary();
    while (true) {
      if (accept("*"))
        lhs = make(Kind::Binary, "*", {lhs, unary()});
      else if (accept("/"))
        lhs = make(Kind::Binary, "/", {lhs, unary()});
      else if (accept("%"))
        lhs = make(Kind::Binary, "%", {lhs, unary()});
      else
        return lhs;
    }
  }
  NodePtr unary() {
    if (accept("-"))
      return make(Kind::Unary, "-", {unary()});
    return primary();
  }
  NodePtr primary() {
    const Token t = peek();
    switch (t.type) {
    case Token::Type::Number:
      ++pos_;
      return make(Kind::Literal, "", {}, Rational(mpz_class(t.text)));
    case Token::Type::String:
      ++pos_;
      return make(Kind::Literal, "", {}, t.text);
    case Token::Type::Ident: {
      ++pos_;
      if (t.text == "true" || t.text == "false")
        return make(Kind::Literal, "", {}, t.text == "true");
      if (t.text == "min" || t.text == "max" || t.text == "abs") {
        expect("(");
        std::vector<NodePtr> args;
        do
          args.push_back(ternary());
        while (accept(","));
        expect(")");
        if (t.text == "abs" ? args.size() != 1 : args.empty())
          fail("wrong number of arguments to " + t.text);
        return make(Kind::Call, t.text, std::move(args));
      }
      identifiers_.insert(t.text);
      return make(Kind::Identifier, t.text);
    }
    case Token::Type::Op:
      if (t.text == "(") {
        ++pos_;
        NodePtr inner = ternary();
        expect(")");
        return inner;
      }
      fail("unexpected '" + t.text + "'");
    case Token::Type::End:
      break;
    }
    fail("unexpected end of expression");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string>& identifiers_;
};

Rational as_number(const ExprValue& v) {
  if (const auto* r = std::get_if<Rational>(&v))
    return *r;
  if (const auto* b = std::get_if<bool>(&v))
    return *b ? 1 : 0;
  fail("token \"" + std::get<std::string>(v) + "\" used as a number");
}

bool truthy(const ExprValue& v) {
  if (const auto* b = std::get_if<bool>(&v))
    return *b;
  if (const auto* r = std::get_if<Rational>(&v))
    return *r != 0;
  fail("token \"" + std::get<std::string>(v) + "\" used as a condition");
}

std::string as_text(const ExprValue& v) {
  if (const auto* s = std::get_if<std::string>(&v))
    return *s;
  if (const auto* b = std::get_if<bool>(&v))
    return *b ? "1" : "0";
  return format_numeric_token(std::get<Rational>(v));
}

bool equal(const ExprValue& a, const ExprValue& b) {
  if (std::holds_alternative<std::string>(a) || std::holds_alternative<std::string>(b))
    return as_text(a) == as_text(b);
  return as_number(a) == as_number(b);
}

ExprValue eval(const Expression::Node& n, const Expression::Lookup& lookup) {
  switch (n.kind) {
  case Kind::Literal:
    return n.literal;
  case Kind::Identifier: {
    const Value* v = lookup(n.op);
    if (!v)
      fail("unbound identifier " + n.op);
    if (v->numeric)
      return *v->numeric;
    return v->token;
  }
  case Kind::Unary: {
    const ExprValue x = eval(*n.args[0], lookup);
    if (n.op == "!")
      return !truthy(x);
    return Rational(-as_number(x));
  }
  case Kind::Ternary:
    return truthy(eval(*n.args[0], lookup)) ? eval(*n.args[1], lookup) : eval(*n.args[2], lookup);
  case Kind::Membership: {
    const ExprValue x = eval(*n.args[0], lookup);
    for (std::size_t k = 1; k < n.args.size(); ++k)
      if (equal(x, eval(*n.args[k], lookup)))
        return true;
    return false;
  }
  case Kind::Call: {
    if (n.op == "abs")
      return Rational(abs(as_number(eval(*n.args[0], lookup))));
    Rational best = as_number(eval(*n.args[0], lookup));
    for (std::size_t k = 1; k < n.args.size(); ++k) {
      const Rational x = as_number(eval(*n.args[k], lookup));
      if (n.op == "min" ? x < best : x > best)
        best = x;
    }
    return best;
  }
  case Kind::Binary:
    break;
  }

  const std::string& op = n.op;
  if (op == "&&")
    return truthy(eval(*n.args[0], lookup)) && truthy(eval(*n.args[1], lookup));
  if (op == "||")
    return truthy(eval(*n.args[0], lookup)) || truthy(eval(*n.args[1], lookup));
  const ExprValue a = eval(*n.args[0], lookup);
  const ExprValue b = eval(*n.args[1], lookup);
  if (op == "==")
    return equal(a, b);
  if (op == "!=")
    return !equal(a, b);
  const Rational x = as_number(a);
  const Rational y = as_number(b);
  if (op == "<")
    return x < y;
  if (op == "<=")
    return x <= y;
  if (op == ">")
    return x > y;
  if (op == ">=")
    return x >= y;
  if (op == "+")
    return Rational(x + y);
  if (op == "-")
    return Rational(x - y);
  if (op == "*")
    return Rational(x * y);
  if (op == "/") {
    if (y == 0)
      fail("division by zero");
    return Rational(x / y);
  }
  if (op == "%") {
    if (!is_integer(x) || !is_integer(y) || y == 0)
      fail("% needs integer operands and a non-zero divisor");
    mpz_class r = x.get_num() % y.get_num();
    if (r < 0)
      r += abs(y.get_num());
    return Rational(r);
  }
  fail("unknown operator " + op);
}

} // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.text_ = std::string(text);
  Parser parser(lex(text), e.identifiers_);
  e.root_ = parser.parse();
  return e;
}

ExprValue Expression::evaluate(const Lookup& lookup) const { return eval(*root_, lookup); }

std::vector<ValueIndex> tabulate(const Expression& expr, const std::vector<NodeDecl>& parents,
                                 const OutcomeSpace& target) {
  for (const std::string& id : expr.identifiers()) {
    const bool bound = std::ranges::any_of(parents, [&](const NodeDecl& p) { return p.name == id; });
    if (!bound)
      fail("identifier " + id + " is not a parent");
  }
  MechanismTable shape;
  for (const NodeDecl& p : parents)
    shape.parent_sizes.push_back(p.space.size());

  std::vector<ValueIndex> rows(shape.row_count());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto tuple = shape.row_tuple(r);
    auto lookup = [&](std::string_view name) -> const Value* {
      for (std::size_t k = 0; k < parents.size(); ++k)
        if (parents[k].name == name)
          return &parents[k].space.at(tuple[k]);
      return nullptr;
    };
    const ExprValue result = expr.evaluate(lookup);
    std::optional<ValueIndex> index;
    if (const auto* s = std::get_if<std::string>(&result)) {
      index = target.index_of(*s);
    } else {
      const Rational x = as_number(result);
      for (std::size_t v = 0; v < target.size() && !index; ++v)
        if (target.values()[v].numeric && *target.values()[v].numeric == x)
          index = static_cast<ValueIndex>(v);
    }
    if (!index)
      fail("value " + as_text(result) + " of \"" + expr.text() + "\" is not in space " + target.name());
    rows[r] = *index;
  }
  return rows;
}

} // namespace scm
