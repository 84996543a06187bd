#include "sympten/connection_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace sympten {

namespace {

std::size_t f3(int m, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
         static_cast<std::size_t>(k);
}

std::size_t f2(int m, int i, int j) {
  return static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j);
}

std::vector<double> invert(const std::vector<double>& w, int m) {
  Eigen::MatrixXd mw(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) mw(a, b) = w[f2(m, a, b)];
  Eigen::MatrixXd inv = mw.fullPivLu().inverse();
  std::vector<double> out(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out[f2(m, a, b)] = inv(a, b);
  return out;
}

std::vector<double> nabla_omega_of(const std::vector<double>& dw, const std::vector<double>& w,
                                   const std::vector<double>& g, int m) {
  std::vector<double> out(static_cast<std::size_t>(m) * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double acc = dw[f3(m, i, j, k)];
        for (int h = 0; h < m; ++h)
          acc -= g[f3(m, i, j, h)] * w[f2(m, h, k)] + g[f3(m, i, k, h)] * w[f2(m, j, h)];
        out[f3(m, i, j, k)] = acc;
      }
  return out;
}

/// A^h_{ij} raised from the lowered symmetric correction via the true inverse.
std::vector<double> raise_last(const std::vector<double>& low, const std::vector<double>& winv,
                               int m) {
  std::vector<double> out(static_cast<std::size_t>(m) * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int h = 0; h < m; ++h) {
        double acc = 0;
        for (int k = 0; k < m; ++k) acc += low[f3(m, i, j, k)] * winv[f2(m, k, h)];
        out[f3(m, i, j, h)] = acc;
      }
  return out;
}

std::vector<double> lower_last(const std::vector<double>& up, const std::vector<double>& w,
                               int m) {
  std::vector<double> out(static_cast<std::size_t>(m) * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double acc = 0;
        for (int h = 0; h < m; ++h) acc += up[f3(m, i, j, h)] * w[f2(m, h, k)];
        out[f3(m, i, j, k)] = acc;
      }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double best = 0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

/// sum A_ijk B_pql w^ij w^kp w^ql, factored through two intermediate vectors.
double trace_r2(const std::vector<double>& a, const std::vector<double>& b,
                const std::vector<double>& winv, int m) {
  std::vector<double> v(static_cast<std::size_t>(m), 0.0);
  for (int p = 0; p < m; ++p) {
    double acc = 0;
    for (int q = 0; q < m; ++q)
      for (int l = 0; l < m; ++l) acc += b[f3(m, p, q, l)] * winv[f2(m, q, l)];
    v[static_cast<std::size_t>(p)] = acc;
  }
  std::vector<double> y(static_cast<std::size_t>(m), 0.0);
  for (int k = 0; k < m; ++k) {
    double acc = 0;
    for (int p = 0; p < m; ++p) acc += winv[f2(m, k, p)] * v[static_cast<std::size_t>(p)];
    y[static_cast<std::size_t>(k)] = acc;
  }
  double total = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double wij = winv[f2(m, i, j)];
      if (wij == 0) continue;
      for (int k = 0; k < m; ++k) total += a[f3(m, i, j, k)] * wij * y[static_cast<std::size_t>(k)];
    }
  return total;
}

std::vector<double> gamma_plus(const std::vector<double>& g, const std::vector<double>& a) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] + a[i];
  return out;
}

}  // namespace

std::vector<double> nabla_omega(const Connection& c, const Point& x) {
  const int m = c.chart->dim();
  return nabla_omega_of(c.chart->domega(x), c.chart->omega(x), c.gamma(x), m);
}

double max_nabla_omega(const Connection& c, const std::vector<Point>& pts) {
  double worst = 0.0;
  const auto npts = static_cast<std::int64_t>(pts.size());
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::int64_t i = 0; i < npts; ++i)
    worst = std::max(worst, max_abs(nabla_omega(c, pts[static_cast<std::size_t>(i)])));
  return worst;
}

double max_nabla_omega_serial(const Connection& c, const std::vector<Point>& pts) {
  double worst = 0.0;
  for (const auto& x : pts) worst = std::max(worst, max_abs(nabla_omega(c, x)));
  return worst;
}

std::vector<double> torsion(const Connection& c, const Point& x) {
  const int m = c.chart->dim();
  auto g = c.gamma(x);
  std::vector<double> out(g.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int h = 0; h < m; ++h) out[f3(m, i, j, h)] = g[f3(m, i, j, h)] - g[f3(m, j, i, h)];
  return out;
}

std::vector<double> lowered_torsion(const Connection& c, const Point& x) {
  return lower_last(torsion(c, x), c.chart->omega(x), c.chart->dim());
}

double max_torsion(const Connection& c, const std::vector<Point>& pts) {
  double worst = 0.0;
  const auto npts = static_cast<std::int64_t>(pts.size());
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::int64_t i = 0; i < npts; ++i)
    worst = std::max(worst, max_abs(torsion(c, pts[static_cast<std::size_t>(i)])));
  return worst;
}

Connection make_almost_symplectic(const Connection& c0) {
  auto chart = c0.chart;
  auto base = c0.gamma;
  auto gamma = [chart, base](const Point& x) {
    const int m = chart->dim();
    auto g = base(x);
    auto w = chart->omega(x);
    auto no = nabla_omega_of(chart->domega(x), w, g, m);
    for (auto& v : no) v *= 0.5;
    auto a = raise_last(no, invert(w, m), m);
    return gamma_plus(g, a);
  };
  return Connection{chart, std::move(gamma), c0.provenance + "+almost_symplectic"};
}

Connection tondeur(const Connection& c0, const ConnectionCheckOptions& opts) {
  auto lattice = c0.chart->validation_lattice(opts.lattice, opts.seed);
  if (max_torsion(c0, lattice) > opts.tol)
    throw std::invalid_argument("tondeur: the starting connection is not torsion-free");
  auto chart = c0.chart;
  auto base = c0.gamma;
  auto gamma = [chart, base](const Point& x) {
    const int m = chart->dim();
    auto g0 = base(x);
    auto w = chart->omega(x);
    auto winv = invert(w, m);
    auto alow = nabla_omega_of(chart->domega(x), w, g0, m);
    for (auto& v : alow) v *= 0.5;  // lowered A of the almost symplectic step
    auto g1 = gamma_plus(g0, raise_last(alow, winv, m));
    const double ka = 2.0 / 3.0, kb = 1.0 / 3.0;
    std::vector<double> blow(alow.size());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          blow[f3(m, i, j, k)] = ka * (alow[f3(m, j, i, k)] + alow[f3(m, k, i, j)]) +
                                 kb * (alow[f3(m, j, k, i)] + alow[f3(m, k, j, i)]);
    return gamma_plus(g1, raise_last(blow, winv, m));
  };
  return Connection{chart, std::move(gamma), c0.provenance + "+tondeur"};
}

double TorsionInvariantValue::max_spread() const {
  // floor keeps the ratio meaningful when t itself is at roundoff level
  double scale = std::max({std::abs(full), std::abs(mixed), std::abs(rho), 1e-3});
  return std::max(std::abs(full - mixed), std::abs(full - rho)) / scale;
}

TorsionInvariantValue torsion_invariant(const Connection& c, const Point& x) {
  const int m = c.chart->dim();
  auto t_up = torsion(c, x);
  auto w = c.chart->omega(x);
  auto winv = c.chart->omega_inv(x);
  auto t_low = lower_last(t_up, w, m);
  TorsionInvariantValue out{};
  out.full = trace_r2(t_low, t_low, winv, m);
  // mixed route: T_ij^p T_qp^q w^ij
  std::vector<double> col(static_cast<std::size_t>(m), 0.0);
  for (int p = 0; p < m; ++p) {
    double acc = 0;
    for (int q = 0; q < m; ++q) acc += t_up[f3(m, q, p, q)];
    col[static_cast<std::size_t>(p)] = acc;
  }
  double mixed = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double wij = winv[f2(m, i, j)];
      if (wij == 0) continue;
      for (int p = 0; p < m; ++p)
        mixed += t_up[f3(m, i, j, p)] * col[static_cast<std::size_t>(p)] * wij;
    }
  out.mixed = mixed;
  // trace-of-composition route: rho_ij = T^h_{ij} T^k_{hk}
  std::vector<double> rowv(static_cast<std::size_t>(m), 0.0);
  for (int h = 0; h < m; ++h) {
    double acc = 0;
    for (int k = 0; k < m; ++k) acc += t_up[f3(m, h, k, k)];
    rowv[static_cast<std::size_t>(h)] = acc;
  }
  double rho = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double wij = winv[f2(m, i, j)];
      if (wij == 0) continue;
      double rij = 0;
      for (int h = 0; h < m; ++h) rij += t_up[f3(m, i, j, h)] * rowv[static_cast<std::size_t>(h)];
      rho -= rij * wij;
    }
  out.rho = rho;
  return out;
}

namespace {

void require_valid_direction(const std::vector<double>& a, const std::vector<double>& w, int m,
                             double tol) {
  auto alow = lower_last(a, w, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        if (std::abs(alow[f3(m, i, j, k)] - alow[f3(m, i, k, j)]) > tol)
          throw std::invalid_argument(
              "invariant_variation: direction is not almost-symplectic (w(A_X Y, Z) must be "
              "symmetric in Y, Z)");
}

}  // namespace

double invariant_variation(const Connection& c, const DirectionFn& dir, const Point& x) {
  const int m = c.chart->dim();
  auto a = dir(x);
  auto w = c.chart->omega(x);
  require_valid_direction(a, w, m, 1e-8);
  auto winv = c.chart->omega_inv(x);
  auto alow = lower_last(a, w, m);
  auto tlow = lower_last(torsion(c, x), w, m);
  std::vector<double> aswap(alow.size());
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      for (int l = 0; l < m; ++l) aswap[f3(m, p, q, l)] = alow[f3(m, q, p, l)];
  return 2.0 * trace_r2(alow, tlow, winv, m) - trace_r2(tlow, aswap, winv, m);
}

double invariant_variation_fd(const Connection& c, const DirectionFn& dir, const Point& x,
                              double s) {
  auto shifted = [&](double sign) {
    Connection cs{c.chart,
                  [base = c.gamma, dir, sign, s](const Point& p) {
                    auto g = base(p);
                    auto a = dir(p);
                    for (std::size_t i = 0; i < g.size(); ++i) g[i] += sign * s * a[i];
                    return g;
                  },
                  c.provenance + "+ray"};
    return torsion_invariant(cs, x).full;
  };
  return (shifted(1.0) - shifted(-1.0)) / (2.0 * s);
}

Connection gauge_transform(const Connection& c, const ExprField& g,
                           const ConnectionCheckOptions& opts) {
  auto chart = c.chart;
  const int m = chart->dim();
  if (g.shape() != std::vector<int>{m, m})
    throw std::invalid_argument("gauge_transform: g must be a dim x dim field");
  // pointwise symplectic check on the validation lattice
  for (const auto& x : chart->validation_lattice(opts.lattice, opts.seed)) {
    std::vector<double> gv(static_cast<std::size_t>(m) * m);
    g.values(x, gv.data());
    auto w = chart->omega(x);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double acc = -w[f2(m, a, b)];
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) acc += gv[f2(m, i, a)] * w[f2(m, i, j)] * gv[f2(m, j, b)];
        if (std::abs(acc) > opts.tol)
          throw std::invalid_argument("gauge_transform: g is not pointwise symplectic");
      }
  }
  auto base = c.gamma;
  auto gamma = [chart, base, g, m](const Point& x) {
    std::vector<double> gv(static_cast<std::size_t>(m) * m);
    std::vector<double> dgv(static_cast<std::size_t>(m) * m * m);
    g.values(x, gv.data());
    g.partials(x, dgv.data());  // [d][a][b]
    auto ginv = invert(gv, m);
    auto gam = base(x);
    // (nabla_i g)^a_b = d_i g^a_b + G^a_{ih} g^h_b - G^h_{ib} g^a_h
    std::vector<double> out(gam.size());
    for (int i = 0; i < m; ++i) {
      std::vector<double> ng(static_cast<std::size_t>(m) * m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          double acc = dgv[f3(m, i, a, b)];
          for (int h = 0; h < m; ++h)
            acc += gam[f3(m, i, h, a)] * gv[f2(m, h, b)] - gam[f3(m, i, b, h)] * gv[f2(m, a, h)];
          ng[f2(m, a, b)] = acc;
        }
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          double corr = 0;
          for (int h = 0; h < m; ++h) corr += ng[f2(m, k, h)] * ginv[f2(m, h, j)];
          out[f3(m, i, j, k)] = gam[f3(m, i, j, k)] - corr;
        }
    }
    return out;
  };
  return Connection{chart, std::move(gamma), c.provenance + "+gauge"};
}

PushforwardReport pushforward_invariant_check(const Connection& c, const std::vector<double>& g,
                                              const std::vector<Point>& pts, double tol) {
  const int m = c.chart->dim();
  if (static_cast<int>(g.size()) != m * m)
    throw std::invalid_argument("pushforward_invariant_check: matrix size mismatch");
  auto ginv = invert(g, m);
  PushforwardReport rep;
  for (const auto& x : pts) {
    Point y(static_cast<std::size_t>(m), 0.0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) y[static_cast<std::size_t>(a)] += g[f2(m, a, b)] * x[static_cast<std::size_t>(b)];
    c.chart->require_inside(x);
    c.chart->require_inside(y);  // image point must stay in the chart
    auto wx = c.chart->omega(x);
    auto wy = c.chart->omega(y);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double acc = -wx[f2(m, a, b)];
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) acc += g[f2(m, i, a)] * wy[f2(m, i, j)] * g[f2(m, j, b)];
        if (std::abs(acc) > 1e-9)
          throw std::invalid_argument(
              "pushforward_invariant_check: the map is not a symplectomorphism of this chart");
      }
    auto gam = c.gamma(x);
    // (phi . nabla) at y: G'^k_{ij}(y) = g^k_h ginv^a_i ginv^b_j G^h_{ab}(x)
    std::vector<double> gp(gam.size(), 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          double acc = 0;
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
              for (int h = 0; h < m; ++h)
                acc += g[f2(m, k, h)] * ginv[f2(m, a, i)] * ginv[f2(m, b, j)] * gam[f3(m, a, b, h)];
          gp[f3(m, i, j, k)] = acc;
        }
    Connection cp{c.chart, [gp](const Point&) { return gp; }, "pushforward"};
    // torsion functoriality, componentwise
    auto tx = torsion(c, x);
    auto ty = torsion(cp, y);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          double acc = 0;
          for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
              for (int h = 0; h < m; ++h)
                acc += g[f2(m, k, h)] * ginv[f2(m, a, i)] * ginv[f2(m, b, j)] * tx[f3(m, a, b, h)];
          rep.max_torsion_functoriality =
              std::max(rep.max_torsion_functoriality, std::abs(acc - ty[f3(m, i, j, k)]));
        }
    const double ti = torsion_invariant(c, x).full;
    const double tp = torsion_invariant(cp, y).full;
    rep.max_invariant_diff = std::max(rep.max_invariant_diff, std::abs(tp - ti));
    ++rep.points;
  }
  rep.pass = rep.max_invariant_diff < tol && rep.max_torsion_functoriality < tol;
  return rep;
}

std::vector<double> symplectic_gradient(const Chart& chart, const ExprField& f, const Point& x) {
  const int m = chart.dim();
  std::vector<double> df(static_cast<std::size_t>(m));
  for (int d = 0; d < m; ++d) df[static_cast<std::size_t>(d)] = f.partial(0, d, x);
  auto winv = chart.omega_inv(x);
  std::vector<double> grad(static_cast<std::size_t>(m), 0.0);
  for (int c2 = 0; c2 < m; ++c2) {
    double acc = 0;
    for (int b = 0; b < m; ++b) acc += df[static_cast<std::size_t>(b)] * winv[f2(m, b, c2)];
    grad[static_cast<std::size_t>(c2)] = acc;
  }
  return grad;
}

Connection conformal_connection(const Connection& c, const ExprField& f) {
  auto chart = c.chart;
  if (f.entry_count() != 1)
    throw std::invalid_argument("conformal_connection: f must be a scalar field");
  auto base = c.gamma;
  auto gamma = [chart, base, f](const Point& x) {
    const int m = chart->dim();
    auto out = base(x);
    std::vector<double> df(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) df[static_cast<std::size_t>(d)] = f.partial(0, d, x);
    auto grad = symplectic_gradient(*chart, f, x);
    auto w = chart->omega(x);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int h = 0; h < m; ++h) {
          double add = w[f2(m, i, j)] * grad[static_cast<std::size_t>(h)];
          if (h == j) add += df[static_cast<std::size_t>(i)];
          if (h == i) add += df[static_cast<std::size_t>(j)];
          out[f3(m, i, j, h)] += add;
        }
    return out;
  };
  return Connection{chart, std::move(gamma), c.provenance + "+conformal"};
}

LeibnizReport conformal_leibniz_check(const Connection& c, const ExprField& f1,
                                      const ExprField& f2, const Point& x, double tol) {
  auto gam = c.gamma(x);
  auto a_of = [&](const ExprField& f) {
    auto gf = conformal_connection(c, f).gamma(x);
    for (std::size_t i = 0; i < gf.size(); ++i) gf[i] -= gam[i];
    return gf;
  };
  // product field f1 * f2 assembled at expression level
  std::vector<Expr> prod = {f1.expr(0) * f2.expr(0)};
  ExprField f12(f1.n_vars(), {}, std::move(prod), f1.supply());
  auto a12 = a_of(f12);
  auto a1 = a_of(f1);
  auto a2 = a_of(f2);
  const double v1 = f1.value(0, x), v2 = f2.value(0, x);
  LeibnizReport rep;
  for (std::size_t i = 0; i < a12.size(); ++i)
    rep.residual = std::max(rep.residual, std::abs(a12[i] - v1 * a2[i] - v2 * a1[i]));
  rep.pass = rep.residual < tol;
  return rep;
}

Connection vectorial_connection(const Connection& c, const ExprField& u, const ExprField& f,
                                const ConnectionCheckOptions& opts) {
  auto chart = c.chart;
  const int m = chart->dim();
  if (u.shape() != std::vector<int>{m})
    throw std::invalid_argument("vectorial_connection: U must be a vector field");
  auto lattice = chart->validation_lattice(opts.lattice, opts.seed);
  if (max_torsion(c, lattice) > opts.tol)
    throw std::invalid_argument("vectorial_connection: base connection must be torsion-free");
  if (max_nabla_omega(c, lattice) > opts.tol)
    throw std::invalid_argument("vectorial_connection: base connection must be symplectic");
  for (const auto& x : lattice)
    if (max_abs(chart->dw3(x)) > opts.tol)
      throw std::invalid_argument("vectorial_connection: omega must be closed");
  auto with_f = conformal_connection(c, f);
  auto base = with_f.gamma;
  auto gamma = [chart, base, u, m](const Point& x) {
    auto out = base(x);
    std::vector<double> uv(static_cast<std::size_t>(m));
    u.values(x, uv.data());
    auto w = chart->omega(x);
    std::vector<double> om_u(static_cast<std::size_t>(m), 0.0);  // w(U, e_j)
    for (int j = 0; j < m; ++j) {
      double acc = 0;
      for (int a = 0; a < m; ++a) acc += uv[static_cast<std::size_t>(a)] * w[f2(m, a, j)];
      om_u[static_cast<std::size_t>(j)] = acc;
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int h = 0; h < m; ++h) {
          double add = 0.5 * w[f2(m, i, j)] * uv[static_cast<std::size_t>(h)];
          if (h == i) add += 0.5 * om_u[static_cast<std::size_t>(j)];
          out[f3(m, i, j, h)] += add;
        }
    return out;
  };
  return Connection{chart, std::move(gamma), c.provenance + "+vectorial"};
}

double vectorial_invariant(const Connection& cuf, const ExprField& f, const Point& x) {
  const int m = cuf.chart->dim();
  const double e2f = std::exp(2.0 * f.value(0, x));
  auto w = cuf.chart->omega(x);
  for (auto& v : w) v *= e2f;
  auto winv = invert(w, m);
  auto tlow = lower_last(torsion(cuf, x), w, m);
  return trace_r2(tlow, tlow, winv, m);
}

double vectorial_invariant_expected(const Chart& chart, const ExprField& u, const ExprField& f,
                                    const Point& x) {
  const int m = chart.dim();
  const int n = chart.n();
  std::vector<double> uv(static_cast<std::size_t>(m));
  u.values(x, uv.data());
  double uf = 0;
  for (int d = 0; d < m; ++d) uf += uv[static_cast<std::size_t>(d)] * f.partial(0, d, x);
  return 2.0 * std::exp(-2.0 * f.value(0, x)) * (2.0 * n * n - n - 1.0) * uf;
}

}  // namespace sympten
