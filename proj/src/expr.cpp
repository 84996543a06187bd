#include "sympten/expr.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "sympten/rational.hpp"

namespace sympten {

struct Expr::Node {
  enum class Kind { kConst, kVar, kAdd, kSub, kMul, kDiv, kNeg, kPow, kExp, kSin, kCos };
  Kind kind;
  double value{0};
  int var{-1};
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_const(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kConst;
  n->value = v;
  return n;
}

NodePtr make_node(Node::Kind k, NodePtr a, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

bool is_const(const NodePtr& n, double v) {
  return n->kind == Node::Kind::kConst && n->value == v;
}

double eval_node(const Node& n, std::span<const double> x) {
  switch (n.kind) {
    case Node::Kind::kConst: return n.value;
    case Node::Kind::kVar:
      if (n.var < 0 || n.var >= static_cast<int>(x.size()))
        throw std::out_of_range("Expr::eval: variable index out of range");
      return x[static_cast<std::size_t>(n.var)];
    case Node::Kind::kAdd: return eval_node(*n.a, x) + eval_node(*n.b, x);
    case Node::Kind::kSub: return eval_node(*n.a, x) - eval_node(*n.b, x);
    case Node::Kind::kMul: return eval_node(*n.a, x) * eval_node(*n.b, x);
    case Node::Kind::kDiv: return eval_node(*n.a, x) / eval_node(*n.b, x);
    case Node::Kind::kNeg: return -eval_node(*n.a, x);
    case Node::Kind::kPow: return std::pow(eval_node(*n.a, x), eval_node(*n.b, x));
    case Node::Kind::kExp: return std::exp(eval_node(*n.a, x));
    case Node::Kind::kSin: return std::sin(eval_node(*n.a, x));
    case Node::Kind::kCos: return std::cos(eval_node(*n.a, x));
  }
  return 0;
}

NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr divide(NodePtr a, NodePtr b);
NodePtr neg(NodePtr a);

NodePtr add(NodePtr a, NodePtr b) {
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  if (a->kind == Node::Kind::kConst && b->kind == Node::Kind::kConst)
    return make_const(a->value + b->value);
  return make_node(Node::Kind::kAdd, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return neg(std::move(b));
  if (a->kind == Node::Kind::kConst && b->kind == Node::Kind::kConst)
    return make_const(a->value - b->value);
  return make_node(Node::Kind::kSub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_const(a, 0) || is_const(b, 0)) return make_const(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  if (a->kind == Node::Kind::kConst && b->kind == Node::Kind::kConst)
    return make_const(a->value * b->value);
  return make_node(Node::Kind::kMul, std::move(a), std::move(b));
}

NodePtr divide(NodePtr a, NodePtr b) {
  if (is_const(b, 0)) throw std::invalid_argument("Expr: division by constant zero");
  if (is_const(a, 0)) return make_const(0);
  if (is_const(b, 1)) return a;
  if (a->kind == Node::Kind::kConst && b->kind == Node::Kind::kConst)
    return make_const(a->value / b->value);
  return make_node(Node::Kind::kDiv, std::move(a), std::move(b));
}

NodePtr neg(NodePtr a) {
  if (a->kind == Node::Kind::kConst) return make_const(-a->value);
  if (a->kind == Node::Kind::kNeg) return a->a;
  return make_node(Node::Kind::kNeg, std::move(a));
}

NodePtr power(NodePtr a, NodePtr b) {
  if (is_const(b, 0)) return make_const(1);
  if (is_const(b, 1)) return a;
  if (a->kind == Node::Kind::kConst && b->kind == Node::Kind::kConst)
    return make_const(std::pow(a->value, b->value));
  return make_node(Node::Kind::kPow, std::move(a), std::move(b));
}

NodePtr diff(const NodePtr& n, int var) {
  switch (n->kind) {
    case Node::Kind::kConst: return make_const(0);
    case Node::Kind::kVar: return make_const(n->var == var ? 1 : 0);
    case Node::Kind::kAdd: return add(diff(n->a, var), diff(n->b, var));
    case Node::Kind::kSub: return sub(diff(n->a, var), diff(n->b, var));
    case Node::Kind::kMul:
      return add(mul(diff(n->a, var), n->b), mul(n->a, diff(n->b, var)));
    case Node::Kind::kDiv:
      return divide(sub(mul(diff(n->a, var), n->b), mul(n->a, diff(n->b, var))),
                    mul(n->b, n->b));
    case Node::Kind::kNeg: return neg(diff(n->a, var));
    case Node::Kind::kPow: {
      if (n->b->kind != Node::Kind::kConst)
        throw std::domain_error("Expr::derivative: non-constant exponent");
      double c = n->b->value;
      return mul(mul(make_const(c), power(n->a, make_const(c - 1))), diff(n->a, var));
    }
    case Node::Kind::kExp: return mul(make_node(Node::Kind::kExp, n->a), diff(n->a, var));
    case Node::Kind::kSin: return mul(make_node(Node::Kind::kCos, n->a), diff(n->a, var));
    case Node::Kind::kCos:
      return neg(mul(make_node(Node::Kind::kSin, n->a), diff(n->a, var)));
  }
  return make_const(0);
}

std::string print(const NodePtr& n) {
  switch (n->kind) {
    case Node::Kind::kConst: return double_to_string(n->value);
    case Node::Kind::kVar: return "x" + std::to_string(n->var + 1);
    case Node::Kind::kAdd: return "(" + print(n->a) + "+" + print(n->b) + ")";
    case Node::Kind::kSub: return "(" + print(n->a) + "-" + print(n->b) + ")";
    case Node::Kind::kMul: return "(" + print(n->a) + "*" + print(n->b) + ")";
    case Node::Kind::kDiv: return "(" + print(n->a) + "/" + print(n->b) + ")";
    case Node::Kind::kNeg: return "(-" + print(n->a) + ")";
    case Node::Kind::kPow: return "(" + print(n->a) + "^" + print(n->b) + ")";
    case Node::Kind::kExp: return "exp(" + print(n->a) + ")";
    case Node::Kind::kSin: return "sin(" + print(n->a) + ")";
    case Node::Kind::kCos: return "cos(" + print(n->a) + ")";
  }
  return "?";
}

class Parser {
 public:
  Parser(const std::string& text, int n_vars) : s_(text), n_vars_(n_vars) {}

  NodePtr run() {
    auto e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at position " + std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = add(lhs, term());
      else if (eat('-'))
        lhs = sub(lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    auto lhs = factor();
    for (;;) {
      if (eat('*'))
        lhs = mul(lhs, factor());
      else if (eat('/'))
        lhs = divide(lhs, factor());
      else
        return lhs;
    }
  }

  NodePtr factor() {
    if (eat('-')) return neg(factor());
    auto base = primary();
    if (eat('^')) return power(base, factor());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = save;  // the 'e' belongs to a following name
      }
    }
    try {
      return make_const(std::stod(s_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      fail("bad numeric literal");
    }
  }

  NodePtr name() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string id = s_.substr(start, pos_ - start);
    if (id.size() >= 2 && id[0] == 'x') {
      bool digits = true;
      for (std::size_t i = 1; i < id.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(id[i]));
      if (digits) {
        int v = std::stoi(id.substr(1));
        if (v < 1 || v > n_vars_) fail("variable " + id + " out of range");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::kVar;
        n->var = v - 1;
        return n;
      }
    }
    if (!eat('(')) fail("expected '(' after function name '" + id + "'");
    auto arg = expr();
    if (!eat(')')) fail("expected ')'");
    if (id == "exp") return make_node(Node::Kind::kExp, arg);
    if (id == "sin") return make_node(Node::Kind::kSin, arg);
    if (id == "cos") return make_node(Node::Kind::kCos, arg);
    fail("unknown function '" + id + "'");
  }

  const std::string& s_;
  int n_vars_;
  std::size_t pos_{0};
};

}  // namespace

Expr::Expr() : node_(make_const(0)) {}
Expr Expr::constant(double v) { return Expr(make_const(v)); }
Expr Expr::variable(int index) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kVar;
  n->var = index;
  return Expr(std::move(n));
}

double Expr::eval(std::span<const double> x) const { return eval_node(*node_, x); }
Expr Expr::derivative(int var) const { return Expr(diff(node_, var)); }
std::string Expr::to_string() const { return print(node_); }
bool Expr::is_constant_zero() const { return is_const(node_, 0); }

Expr operator+(const Expr& a, const Expr& b) { return Expr(add(a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(sub(a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(mul(a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(divide(a.node_, b.node_)); }
Expr operator-(const Expr& a) { return Expr(neg(a.node_)); }
Expr Expr::pow(const Expr& base, const Expr& exponent) {
  return Expr(power(base.node_, exponent.node_));
}
Expr Expr::exp(const Expr& a) { return Expr(make_node(Node::Kind::kExp, a.node_)); }
Expr Expr::sin(const Expr& a) { return Expr(make_node(Node::Kind::kSin, a.node_)); }
Expr Expr::cos(const Expr& a) { return Expr(make_node(Node::Kind::kCos, a.node_)); }

Expr parse_expression(const std::string& text, int n_vars) {
  return Expr(Parser(text, n_vars).run());
}

}  // namespace sympten
