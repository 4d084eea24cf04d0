#include "harmonica/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

#include "harmonica/errors.hpp"

namespace harmonica {

namespace {

using NodePtr = Expr::NodePtr;

NodePtr node_const(double v, std::size_t pos) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Constant;
  n->value = v;
  n->pos = pos;
  return n;
}

NodePtr node_var(std::size_t pos) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Variable;
  n->pos = pos;
  return n;
}

NodePtr node_unary(NodeKind k, NodePtr a, std::size_t pos) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->pos = pos;
  return n;
}

NodePtr node_binary(NodeKind k, NodePtr a, NodePtr b, std::size_t pos) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  n->pos = pos;
  return n;
}

NodePtr node_call(FuncId f, NodePtr a, std::size_t pos) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Call;
  n->func = f;
  n->a = std::move(a);
  n->pos = pos;
  return n;
}

bool is_integral(double e) {
  return std::isfinite(e) && e == std::floor(e);
}

constexpr const char* kAtomExpected = "number, 'x', function call, '(' or '-'";

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  bool at_end() const { return i >= s.size(); }
  char peek() const { return s[i]; }

  void skip_ws() {
    while (!at_end() &&
           (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r'))
      ++i;
  }

  [[noreturn]] void fail(std::size_t off, const std::string& expected) {
    throw SyntaxError(off, expected,
                      "syntax error at offset " + std::to_string(off) +
                          ": expected " + expected);
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      skip_ws();
      if (at_end()) return n;
      const char c = peek();
      if (c != '+' && c != '-') return n;
      const std::size_t pos = i++;
      n = node_binary(c == '+' ? NodeKind::Add : NodeKind::Sub, std::move(n),
                      term(), pos);
    }
  }

  NodePtr term() {
    NodePtr n = factor();
    for (;;) {
      skip_ws();
      if (at_end()) return n;
      const char c = peek();
      if (c != '*' && c != '/') return n;
      const std::size_t pos = i++;
      n = node_binary(c == '*' ? NodeKind::Mul : NodeKind::Div, std::move(n),
                      factor(), pos);
    }
  }

  NodePtr factor() {
    skip_ws();
    if (!at_end() && peek() == '-') {
      const std::size_t pos = i++;
      return node_unary(NodeKind::Negate, factor(), pos);
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    skip_ws();
    if (!at_end() && peek() == '^') {
      const std::size_t pos = i++;
      return node_binary(NodeKind::Pow, std::move(base), factor(), pos);
    }
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (at_end()) fail(i, kAtomExpected);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return ident();
    if (c == '(') {
      ++i;
      NodePtr inner = expr();
      skip_ws();
      if (at_end() || peek() != ')') fail(i, "')'");
      ++i;
      return inner;
    }
    fail(i, kAtomExpected);
  }

  NodePtr number() {
    const std::size_t start = i;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++i;
    if (!at_end() && peek() == '.') {
      ++i;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail(i, "digit after decimal point");
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
        ++i;
    }
    // 'e' is an exponent marker only when digits follow; otherwise it is
    // left in place and rejected by the caller as a stray identifier.
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      const std::size_t save = i;
      ++i;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++i;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
          ++i;
      } else {
        i = save;
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(s.data() + start, s.data() + i, v);
    if (res.ec != std::errc() || res.ptr != s.data() + i)
      fail(start, "representable number");
    return node_const(v, start);
  }

  NodePtr ident() {
    const std::size_t start = i;
    while (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) ||
                         peek() == '_'))
      ++i;
    const std::string name = s.substr(start, i - start);
    if (name == "x") return node_var(start);
    FuncId f;
    if (name == "exp")
      f = FuncId::Exp;
    else if (name == "log")
      f = FuncId::Log;
    else if (name == "sqrt")
      f = FuncId::Sqrt;
    else if (name == "abs")
      f = FuncId::Abs;
    else
      fail(start, "'x' or a function name (exp, log, sqrt, abs)");
    skip_ws();
    if (at_end() || peek() != '(') fail(i, "'(' after function name");
    ++i;
    NodePtr arg = expr();
    skip_ws();
    if (at_end() || peek() != ')') fail(i, "')'");
    ++i;
    return node_call(f, std::move(arg), start);
  }
};

double eval_node(const ExprNode& n, double x) {
  switch (n.kind) {
    case NodeKind::Constant:
      return n.value;
    case NodeKind::Variable:
      return x;
    case NodeKind::Negate:
      return -eval_node(*n.a, x);
    case NodeKind::Add:
      return eval_node(*n.a, x) + eval_node(*n.b, x);
    case NodeKind::Sub:
      return eval_node(*n.a, x) - eval_node(*n.b, x);
    case NodeKind::Mul:
      return eval_node(*n.a, x) * eval_node(*n.b, x);
    case NodeKind::Div: {
      const double num = eval_node(*n.a, x);
      const double den = eval_node(*n.b, x);
      if (den == 0.0) throw DomainError("division by zero", n.pos);
      return num / den;
    }
    case NodeKind::Pow: {
      const double base = eval_node(*n.a, x);
      const double e = eval_node(*n.b, x);
      if (base < 0.0 && !is_integral(e))
        throw DomainError("fractional power of a negative base", n.pos);
      if (base == 0.0 && e < 0.0)
        throw DomainError("zero raised to a negative power", n.pos);
      return std::pow(base, e);
    }
    case NodeKind::Call: {
      const double v = eval_node(*n.a, x);
      switch (n.func) {
        case FuncId::Exp:
          return std::exp(v);
        case FuncId::Log:
          if (v <= 0.0)
            throw DomainError("log of a non-positive value", n.pos);
          return std::log(v);
        case FuncId::Sqrt:
          if (v < 0.0) throw DomainError("sqrt of a negative value", n.pos);
          return std::sqrt(v);
        case FuncId::Abs:
          return std::fabs(v);
      }
      break;
    }
  }
  throw std::logic_error("eval: corrupt expression node");
}

// Interval constructor that reports evaluation overflow as DomainError
// instead of the precondition failure reserved for direct API misuse.
Interval mk(double lo, double hi, std::size_t pos) {
  if (!(std::isfinite(lo) && std::isfinite(hi)))
    throw DomainError("non-finite interval endpoint during evaluation", pos);
  return Interval(lo, hi);
}

Interval imul(const Interval& a, const Interval& b, std::size_t pos) {
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  return mk(std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4)), pos);
}

Interval ipow_int(const Interval& a, long long k, std::size_t pos) {
  if (k == 0) return Interval(1.0, 1.0);
  if (k > 0) {
    const double kd = static_cast<double>(k);
    if (k % 2 != 0)
      return mk(std::pow(a.lo, kd), std::pow(a.hi, kd), pos);
    const double abs_hi = std::max(std::fabs(a.lo), std::fabs(a.hi));
    const double abs_lo =
        a.contains(0.0) ? 0.0 : std::min(std::fabs(a.lo), std::fabs(a.hi));
    return mk(std::pow(abs_lo, kd), std::pow(abs_hi, kd), pos);
  }
  if (a.contains(0.0))
    throw DomainError("negative power of an interval containing zero", pos);
  const Interval p = ipow_int(a, -k, pos);
  return mk(1.0 / p.hi, 1.0 / p.lo, pos);
}

// Folds an exponent subtree that is a constant under a chain of negations,
// so x^-2 takes the exact integer-power route rather than the exp/log one.
bool constant_exponent(const ExprNode& n, double* out) {
  if (n.kind == NodeKind::Constant) {
    *out = n.value;
    return true;
  }
  if (n.kind == NodeKind::Negate && constant_exponent(*n.a, out)) {
    *out = -*out;
    return true;
  }
  return false;
}

Interval ieval(const ExprNode& n, const Interval& x) {
  switch (n.kind) {
    case NodeKind::Constant:
      return mk(n.value, n.value, n.pos);
    case NodeKind::Variable:
      return x;
    case NodeKind::Negate: {
      const Interval a = ieval(*n.a, x);
      return mk(-a.hi, -a.lo, n.pos);
    }
    case NodeKind::Add: {
      const Interval a = ieval(*n.a, x);
      const Interval b = ieval(*n.b, x);
      return mk(a.lo + b.lo, a.hi + b.hi, n.pos);
    }
    case NodeKind::Sub: {
      const Interval a = ieval(*n.a, x);
      const Interval b = ieval(*n.b, x);
      return mk(a.lo - b.hi, a.hi - b.lo, n.pos);
    }
    case NodeKind::Mul: {
      const Interval a = ieval(*n.a, x);
      const Interval b = ieval(*n.b, x);
      return imul(a, b, n.pos);
    }
    case NodeKind::Div: {
      const Interval a = ieval(*n.a, x);
      const Interval b = ieval(*n.b, x);
      if (b.contains(0.0))
        throw DomainError("division by an interval containing zero", n.pos);
      return imul(a, mk(1.0 / b.hi, 1.0 / b.lo, n.pos), n.pos);
    }
    case NodeKind::Pow: {
      const Interval base = ieval(*n.a, x);
      double e = 0.0;
      if (constant_exponent(*n.b, &e)) {
        if (is_integral(e) && std::fabs(e) <= 4.5e15)
          return ipow_int(base, static_cast<long long>(e), n.pos);
        if (e > 0.0) {
          if (base.lo < 0.0)
            throw DomainError("fractional power of a negative base", n.pos);
          return mk(std::pow(base.lo, e), std::pow(base.hi, e), n.pos);
        }
        if (base.lo <= 0.0)
          throw DomainError(
              "negative fractional power requires a positive base", n.pos);
        return mk(std::pow(base.hi, e), std::pow(base.lo, e), n.pos);
      }
      const Interval ex = ieval(*n.b, x);
      if (base.lo <= 0.0)
        throw DomainError("variable exponent requires a positive base",
                          n.pos);
      const Interval lg = mk(std::log(base.lo), std::log(base.hi), n.pos);
      const Interval pr = imul(ex, lg, n.pos);
      return mk(std::exp(pr.lo), std::exp(pr.hi), n.pos);
    }
    case NodeKind::Call: {
      const Interval a = ieval(*n.a, x);
      switch (n.func) {
        case FuncId::Exp:
          return mk(std::exp(a.lo), std::exp(a.hi), n.pos);
        case FuncId::Log:
          if (a.lo <= 0.0)
            throw DomainError("log of a non-positive value", n.pos);
          return mk(std::log(a.lo), std::log(a.hi), n.pos);
        case FuncId::Sqrt:
          if (a.lo < 0.0)
            throw DomainError("sqrt of a negative value", n.pos);
          return mk(std::sqrt(a.lo), std::sqrt(a.hi), n.pos);
        case FuncId::Abs: {
          const double abs_hi = std::max(std::fabs(a.lo), std::fabs(a.hi));
          const double abs_lo =
              a.contains(0.0) ? 0.0
                              : std::min(std::fabs(a.lo), std::fabs(a.hi));
          return mk(abs_lo, abs_hi, n.pos);
        }
      }
      break;
    }
  }
  throw std::logic_error("eval_interval: corrupt expression node");
}

int prec(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::Negate:
      return 3;
    case NodeKind::Pow:
      return 4;
    default:
      return 5;
  }
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void render(const ExprNode& n, std::string& out);

void render_wrapped(const ExprNode& n, std::string& out, bool parens) {
  if (parens) {
    out += '(';
    render(n, out);
    out += ')';
  } else {
    render(n, out);
  }
}

void render(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Constant:
      append_number(out, n.value);
      return;
    case NodeKind::Variable:
      out += 'x';
      return;
    case NodeKind::Negate:
      out += '-';
      render_wrapped(*n.a, out, prec(*n.a) < 3);
      return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      const int p = prec(n);
      const char op = n.kind == NodeKind::Add   ? '+'
                      : n.kind == NodeKind::Sub ? '-'
                      : n.kind == NodeKind::Mul ? '*'
                                                : '/';
      render_wrapped(*n.a, out, prec(*n.a) < p);
      out += ' ';
      out += op;
      out += ' ';
      render_wrapped(*n.b, out, prec(*n.b) <= p);
      return;
    }
    case NodeKind::Pow:
      // Base needs parens unless atomic; '-x^2' would otherwise rebind.
      render_wrapped(*n.a, out, prec(*n.a) <= 4);
      out += '^';
      render_wrapped(*n.b, out, prec(*n.b) < 3);
      return;
    case NodeKind::Call:
      out += func_name(n.func);
      out += '(';
      render(*n.a, out);
      out += ')';
      return;
  }
}

bool nodes_equal(const ExprNode* a, const ExprNode* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Constant:
      return a->value == b->value;
    case NodeKind::Variable:
      return true;
    case NodeKind::Call:
      return a->func == b->func && nodes_equal(a->a.get(), b->a.get());
    default:
      return nodes_equal(a->a.get(), b->a.get()) &&
             nodes_equal(a->b.get(), b->b.get());
  }
}

NodePtr require(const Expr& e, const char* op) {
  if (e.empty())
    throw std::invalid_argument(std::string(op) + ": empty expression");
  return e.root_ptr();
}

}  // namespace

const char* func_name(FuncId f) {
  switch (f) {
    case FuncId::Exp:
      return "exp";
    case FuncId::Log:
      return "log";
    case FuncId::Sqrt:
      return "sqrt";
    case FuncId::Abs:
      return "abs";
  }
  return "?";
}

Expr Expr::constant(double c) {
  if (!std::isfinite(c))
    throw std::invalid_argument("Expr::constant: value must be finite");
  return Expr(node_const(c, ExprNode::npos));
}

Expr Expr::variable() { return Expr(node_var(ExprNode::npos)); }

const ExprNode& Expr::root() const {
  if (!root_) throw std::logic_error("Expr::root: empty expression");
  return *root_;
}

double Expr::eval(double x) const {
  if (!root_) throw std::logic_error("Expr::eval: empty expression");
  return eval_node(*root_, x);
}

Interval Expr::eval_interval(const Interval& x) const {
  if (!root_) throw std::logic_error("Expr::eval_interval: empty expression");
  return ieval(*root_, x);
}

std::string Expr::print() const {
  if (!root_) throw std::logic_error("Expr::print: empty expression");
  std::string out;
  render(*root_, out);
  return out;
}

Expr parse(const std::string& text) {
  Parser p{text};
  NodePtr n = p.expr();
  p.skip_ws();
  if (!p.at_end()) p.fail(p.i, "operator or end of input");
  return Expr(std::move(n));
}

bool structurally_equal(const Expr& a, const Expr& b) {
  return nodes_equal(a.root_ptr().get(), b.root_ptr().get());
}

Expr expr_neg(const Expr& a) {
  return Expr(node_unary(NodeKind::Negate, require(a, "expr_neg"),
                         ExprNode::npos));
}

Expr expr_add(const Expr& a, const Expr& b) {
  return Expr(node_binary(NodeKind::Add, require(a, "expr_add"),
                          require(b, "expr_add"), ExprNode::npos));
}

Expr expr_sub(const Expr& a, const Expr& b) {
  return Expr(node_binary(NodeKind::Sub, require(a, "expr_sub"),
                          require(b, "expr_sub"), ExprNode::npos));
}

Expr expr_mul(const Expr& a, const Expr& b) {
  return Expr(node_binary(NodeKind::Mul, require(a, "expr_mul"),
                          require(b, "expr_mul"), ExprNode::npos));
}

Expr expr_div(const Expr& a, const Expr& b) {
  return Expr(node_binary(NodeKind::Div, require(a, "expr_div"),
                          require(b, "expr_div"), ExprNode::npos));
}

Expr expr_pow(const Expr& a, const Expr& b) {
  return Expr(node_binary(NodeKind::Pow, require(a, "expr_pow"),
                          require(b, "expr_pow"), ExprNode::npos));
}

Expr expr_call(FuncId f, const Expr& a) {
  return Expr(node_call(f, require(a, "expr_call"), ExprNode::npos));
}

}  // namespace harmonica
