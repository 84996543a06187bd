#pragma once

#include "sympten/chart.hpp"

namespace sympten {

/// Components (nabla omega)_{i;jk} = d_i w_jk - G^h_{ij} w_hk - G^h_{ik} w_jh.
std::vector<double> nabla_omega(const Connection& c, const Point& x);

/// Parallel max-norm sweep of nabla omega over a point set.
double max_nabla_omega(const Connection& c, const std::vector<Point>& pts);
double max_nabla_omega_serial(const Connection& c, const std::vector<Point>& pts);

/// Torsion coefficients T^h_{ij} = G^h_{ij} - G^h_{ji}, flat [i][j][h].
std::vector<double> torsion(const Connection& c, const Point& x);
/// Lowered torsion T_{ijk} = T^h_{ij} w_hk(x), flat [i][j][k].
std::vector<double> lowered_torsion(const Connection& c, const Point& x);
double max_torsion(const Connection& c, const std::vector<Point>& pts);

/// nabla = base + A with w(A_X Y, Z) = 1/2 (nabla^base w)(X; Y, Z); the result
/// satisfies nabla w = 0.
Connection make_almost_symplectic(const Connection& c0);

struct ConnectionCheckOptions {
  int lattice{3};
  std::uint64_t seed{42};
  double tol{1e-6};
};

/// Almost symplectic connection whose lowered torsion is (1/3) d omega;
/// requires a torsion-free start (validated on the lattice).
Connection tondeur(const Connection& c0, const ConnectionCheckOptions& opts = {});

struct TorsionInvariantValue {
  double full;   // T_ijk T_pql w^ij w^kp w^ql
  double mixed;  // T_ij^p T_qp^q w^ij
  double rho;    // -rho_ij w^ij with rho_ij = tr T(T(e_i,e_j), .)
  double max_spread() const;
};

/// t at a point, evaluated through three independent routes.
TorsionInvariantValue torsion_invariant(const Connection& c, const Point& x);

/// Direction field for rays of almost symplectic connections: returns
/// A^h_{ij} (flat [i][j][h]); w(A_X Y, Z) must be symmetric in (Y, Z).
using DirectionFn = std::function<std::vector<double>(const Point&)>;

/// d/ds t^{nabla + s A} at s = 0: (2 A_ijk T_pql - A_qpl T_ijk) w^ij w^kp w^ql.
double invariant_variation(const Connection& c, const DirectionFn& dir, const Point& x);
/// Symmetric finite difference of t along the ray, the independent check.
double invariant_variation_fd(const Connection& c, const DirectionFn& dir, const Point& x,
                              double s = 1e-4);

/// nabla' = g o nabla o g^{-1}; g must be pointwise symplectic (validated).
Connection gauge_transform(const Connection& c, const ExprField& g,
                           const ConnectionCheckOptions& opts = {});

struct PushforwardReport {
  double max_invariant_diff{0};
  double max_torsion_functoriality{0};
  std::size_t points{0};
  bool pass{false};
};

/// Pointwise equivariance of t under a constant linear symplectomorphism
/// phi(x) = g x: compares t^{phi . nabla}(g x) with t^nabla(x).
PushforwardReport pushforward_invariant_check(const Connection& c,
                                              const std::vector<double>& g,
                                              const std::vector<Point>& pts, double tol = 1e-6);

/// nabla^f = nabla + X(f) Y + Y(f) X + w(X,Y) grad f, with the symplectic
/// gradient w(grad f, X) = X(f).
Connection conformal_connection(const Connection& c, const ExprField& f);

/// The symplectic gradient as components (grad f)^c = w^{bc} d_b f.
std::vector<double> symplectic_gradient(const Chart& chart, const ExprField& f, const Point& x);

struct LeibnizReport {
  double residual{0};
  bool pass{false};
};

/// Checks A^{f1 f2} = f1 A^{f2} + f2 A^{f1} at a point, where A^f = nabla^f - nabla.
LeibnizReport conformal_leibniz_check(const Connection& c, const ExprField& f1,
                                      const ExprField& f2, const Point& x, double tol = 1e-8);

/// w(nabla^{U,f}_X Y, Z) = w(nabla^f_X Y, Z) + (w(X,Y) w(U,Z) + w(U,Y) w(X,Z)) / 2;
/// the base must be symplectic and torsion-free with d omega = 0 (validated).
Connection vectorial_connection(const Connection& c, const ExprField& u, const ExprField& f,
                                const ConnectionCheckOptions& opts = {});

/// t of a vectorial connection with respect to omega' = e^{2f} omega.
double vectorial_invariant(const Connection& cuf, const ExprField& f, const Point& x);
/// The closed form 2 e^{-2f} (2n^2 - n - 1) U(f).
double vectorial_invariant_expected(const Chart& chart, const ExprField& u, const ExprField& f,
                                    const Point& x);

}  // namespace sympten
