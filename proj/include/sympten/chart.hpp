#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "sympten/expr.hpp"

namespace sympten {

using Point = std::vector<double>;

struct DerivativeSupply {
  enum class Mode { analytic, finite_difference };
  Mode mode{Mode::analytic};
  double step{1e-5};
  bool richardson{false};
};

/// A shaped array of expressions with a shared derivative supply; partials
/// come from symbolic differentiation or central differences.
class ExprField {
 public:
  ExprField() = default;
  ExprField(int n_vars, std::vector<int> shape, std::vector<Expr> entries,
            DerivativeSupply supply);

  int n_vars() const { return n_vars_; }
  const std::vector<int>& shape() const { return shape_; }
  std::size_t entry_count() const { return entries_.size(); }
  const DerivativeSupply& supply() const { return supply_; }
  const Expr& expr(std::size_t flat) const { return entries_[flat]; }

  double value(std::size_t flat, const Point& x) const;
  double partial(std::size_t flat, int dir, const Point& x) const;
  void values(const Point& x, double* out) const;
  /// out[d * entry_count + e] = d_d entry_e
  void partials(const Point& x, double* out) const;

  static ExprField zeros(int n_vars, std::vector<int> shape, DerivativeSupply supply);

 private:
  int n_vars_{0};
  std::vector<int> shape_;
  std::vector<Expr> entries_;
  std::vector<Expr> grads_;  // analytic mode: entry-major [e * n_vars + d]
  DerivativeSupply supply_;
};

/// Open box in R^{2n} carrying the almost symplectic form field and the base
/// connection coefficients, both as expression trees over x1..x{2n}.
class Chart {
 public:
  Chart(int n, std::vector<std::array<double, 2>> domain, ExprField omega_field,
        ExprField gamma_field, DerivativeSupply supply);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const std::vector<std::array<double, 2>>& domain() const { return domain_; }
  const DerivativeSupply& supply() const { return supply_; }
  const ExprField& omega_field() const { return omega_field_; }
  const ExprField& gamma_field() const { return gamma_field_; }

  bool contains(const Point& x) const;
  void require_inside(const Point& x) const;

  /// omega_{jk}(x), row-major dim x dim.
  std::vector<double> omega(const Point& x) const;
  /// d_i omega_{jk}(x), [i][j][k].
  std::vector<double> domega(const Point& x) const;
  /// inverse of omega(x).
  std::vector<double> omega_inv(const Point& x) const;
  /// (d omega)_{ijk} = d_i w_jk - d_j w_ik + d_k w_ij.
  std::vector<double> dw3(const Point& x) const;
  /// base connection coefficients Gamma^h_{ij}, flat [i][j][h].
  std::vector<double> base_gamma(const Point& x) const;

  /// Deterministic k^{2n} interior grid plus 16 seeded random points;
  /// antisymmetry and invertibility of omega are checked at every point.
  std::vector<Point> validation_lattice(int k, std::uint64_t seed) const;

 private:
  int n_;
  std::vector<std::array<double, 2>> domain_;
  ExprField omega_field_;  // shape (m, m)
  ExprField gamma_field_;  // shape (m, m, m), [i][j][h]
  DerivativeSupply supply_;
};

/// Loads the chart-config JSON (see README for the schema).
std::shared_ptr<const Chart> load_chart_config(const std::string& json_text);
std::shared_ptr<const Chart> load_chart_file(const std::string& path);

/// A linear connection over a chart; derived constructions supply the
/// coefficients as closures evaluated pointwise.
struct Connection {
  std::shared_ptr<const Chart> chart;
  std::function<std::vector<double>(const Point&)> gamma;  // [i][j][h] = Gamma^h_{ij}
  std::string provenance;
};

/// The chart's own gamma field as a connection.
Connection base_connection(std::shared_ptr<const Chart> chart);

}  // namespace sympten
