#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "harmonica/interval.hpp"

namespace harmonica {

enum class NodeKind { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };

enum class FuncId { Exp, Log, Sqrt, Abs };

const char* func_name(FuncId f);

// Immutable AST node. a is the only child of unary nodes and the left child
// of binary nodes; pos is the byte offset in the source text (npos for nodes
// built programmatically).
struct ExprNode {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  NodeKind kind;
  double value = 0.0;            // Constant
  FuncId func = FuncId::Exp;     // Call
  std::shared_ptr<const ExprNode> a;
  std::shared_ptr<const ExprNode> b;
  std::size_t pos = npos;
};

// Expression in the single variable x. Copying is cheap; subtrees are shared
// and never mutated. A default-constructed Expr is empty and only assignable.
class Expr {
 public:
  using NodePtr = std::shared_ptr<const ExprNode>;

  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  static Expr constant(double c);
  static Expr variable();

  bool empty() const { return root_ == nullptr; }
  const ExprNode& root() const;
  NodePtr root_ptr() const { return root_; }

  // Pointwise IEEE evaluation. Throws DomainError for log/sqrt of a
  // negative, division by zero, fractional powers of negative bases and
  // 0 raised to a negative power; other overflow follows IEEE rules.
  double eval(double x) const;

  // Natural interval extension: the result encloses f(p) for every p in x.
  // Dependency between subterms is not tracked, so the enclosure may be
  // wide (x - x over [0,1] gives [-1,1]). Throws DomainError when any
  // subterm's interval leaves its domain or an endpoint turns non-finite.
  Interval eval_interval(const Interval& x) const;

  // Canonical text form. Parsing the result reproduces the tree exactly
  // whenever every constant is nonnegative (negative constants print with a
  // leading '-', which reparses as negation of the absolute value).
  std::string print() const;

 private:
  NodePtr root_;
};

// Grammar (whitespace free between tokens):
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := "-" factor | power
//   power  := atom ("^" factor)?            right associative
//   atom   := number | "x" | func "(" expr ")" | "(" expr ")"
//   func   := "exp" | "log" | "sqrt" | "abs"
// Numbers are nonnegative decimal literals with optional fraction and
// exponent. Throws SyntaxError with the byte offset of the failure.
Expr parse(const std::string& text);

// Exact tree equality: same shape, same constants, same function ids.
bool structurally_equal(const Expr& a, const Expr& b);

// Programmatic composition. Results carry no source offsets.
Expr expr_neg(const Expr& a);
Expr expr_add(const Expr& a, const Expr& b);
Expr expr_sub(const Expr& a, const Expr& b);
Expr expr_mul(const Expr& a, const Expr& b);
Expr expr_div(const Expr& a, const Expr& b);
Expr expr_pow(const Expr& a, const Expr& b);
Expr expr_call(FuncId f, const Expr& a);

}  // namespace harmonica
