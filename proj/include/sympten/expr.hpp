#pragma once

#include <memory>
#include <span>
#include <string>

namespace sympten {

/// Immutable arithmetic expression over variables x1..xN with exact symbolic
/// differentiation; the analytic-derivative path of chart fields.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(double v);
  static Expr variable(int index);  // 0-based

  double eval(std::span<const double> x) const;
  Expr derivative(int var) const;
  std::string to_string() const;
  bool is_constant_zero() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  static Expr pow(const Expr& base, const Expr& exponent);
  static Expr exp(const Expr& a);
  static Expr sin(const Expr& a);
  static Expr cos(const Expr& a);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend Expr parse_expression(const std::string& text, int n_vars);
  std::shared_ptr<const Node> node_;
};

/// Parses +, -, *, /, ^, exp, sin, cos over variables x1..x{n_vars} and
/// numeric literals.  Throws std::invalid_argument with the offending
/// position on malformed input.
Expr parse_expression(const std::string& text, int n_vars);

}  // namespace sympten
