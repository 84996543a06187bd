#include "sympten/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "sympten/invariants.hpp"
#include "sympten/irreducible.hpp"
#include "sympten/random.hpp"

namespace sympten {

namespace {

void push(SuiteReport& rep, const std::string& name, bool pass, double value = 0,
          double tol = 0, const std::string& detail = "") {
  rep.checks.push_back({name, pass, value, tol, detail});
}

std::string tag(int n, const std::string& what) {
  return what + " [n=" + std::to_string(n) + "]";
}

Expr poly_expr(int n_vars, std::mt19937_64& rng, double amplitude) {
  std::uniform_real_distribution<double> coeff(-amplitude, amplitude);
  Expr e = Expr::constant(coeff(rng));
  for (int d = 0; d < n_vars; ++d) e = e + Expr::constant(coeff(rng)) * Expr::variable(d);
  // one random quadratic term keeps second derivatives alive
  std::uniform_int_distribution<int> pick(0, n_vars - 1);
  e = e + Expr::constant(coeff(rng)) * Expr::variable(pick(rng)) * Expr::variable(pick(rng));
  return e;
}

}  // namespace

std::shared_ptr<const Chart> make_standard_chart(int n) {
  const int m = 2 * n;
  DerivativeSupply supply;
  std::vector<Expr> omega(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < n; ++i) {
    omega[static_cast<std::size_t>(i) * m + i + n] = Expr::constant(1);
    omega[static_cast<std::size_t>(i + n) * m + i] = Expr::constant(-1);
  }
  return std::make_shared<Chart>(
      n, std::vector<std::array<double, 2>>(static_cast<std::size_t>(m), {-1.0, 1.0}),
      ExprField(m, {m, m}, std::move(omega), supply),
      ExprField::zeros(m, {m, m, m}, supply), supply);
}

std::shared_ptr<const Chart> make_nonclosed_chart() {
  const int n = 2, m = 4;
  DerivativeSupply supply;
  std::vector<Expr> omega(static_cast<std::size_t>(m) * m);
  auto set = [&](int a, int b, Expr e) {
    omega[static_cast<std::size_t>(a) * m + b] = e;
    omega[static_cast<std::size_t>(b) * m + a] = -e;
  };
  set(0, 2, Expr::constant(1));
  set(1, 3, Expr::constant(1) + Expr::variable(0) * Expr::variable(1));
  return std::make_shared<Chart>(
      n, std::vector<std::array<double, 2>>(static_cast<std::size_t>(m), {-0.5, 0.5}),
      ExprField(m, {m, m}, std::move(omega), supply),
      ExprField::zeros(m, {m, m, m}, supply), supply);
}

ExprField random_polynomial_scalar(int n_vars, std::uint64_t seed, DerivativeSupply supply,
                                   double amplitude) {
  std::mt19937_64 rng(seed);
  return ExprField(n_vars, {}, {poly_expr(n_vars, rng, amplitude)}, supply);
}

ExprField random_polynomial_vector(int n_vars, std::uint64_t seed, DerivativeSupply supply,
                                   double amplitude) {
  std::mt19937_64 rng(seed ^ 0xabcdull);
  std::vector<Expr> entries;
  for (int i = 0; i < n_vars; ++i) entries.push_back(poly_expr(n_vars, rng, amplitude));
  return ExprField(n_vars, {n_vars}, std::move(entries), supply);
}

ExprField random_polynomial_cube(int n_vars, std::uint64_t seed, DerivativeSupply supply,
                                 double amplitude) {
  std::mt19937_64 rng(seed ^ 0x55aa11ull);
  const auto count = static_cast<std::size_t>(n_vars) * n_vars * n_vars;
  std::vector<Expr> entries;
  entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) entries.push_back(poly_expr(n_vars, rng, amplitude));
  return ExprField(n_vars, {n_vars, n_vars, n_vars}, std::move(entries), supply);
}

ExprField random_symplectic_gauge_field(int n, std::uint64_t seed, DerivativeSupply supply) {
  const int m = 2 * n;
  std::mt19937_64 rng(seed ^ 0x77eeull);
  SympSpace space(n);
  std::vector<Expr> g(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) g[static_cast<std::size_t>(i) * m + i] = Expr::constant(1);
  std::uniform_int_distribution<int> comp(-1, 1);
  for (int factor = 0; factor < 2; ++factor) {
    std::vector<int> v(static_cast<std::size_t>(m));
    bool nz = false;
    for (auto& c : v) {
      c = comp(rng);
      nz |= c != 0;
    }
    if (!nz) v[static_cast<std::size_t>(factor % m)] = 1;
    std::mt19937_64 rng2(rng());
    Expr lambda = poly_expr(m, rng2, 0.15);
    // transvection T(x) = I + lambda(x) v (omega(. , v)) is symplectic pointwise
    std::vector<Expr> t(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        int om_bv = 0;
        for (int c = 0; c < m; ++c) om_bv += space.omega(b, c) * v[static_cast<std::size_t>(c)];
        Expr e = a == b ? Expr::constant(1) : Expr::constant(0);
        if (v[static_cast<std::size_t>(a)] != 0 && om_bv != 0)
          e = e + lambda * Expr::constant(v[static_cast<std::size_t>(a)] * om_bv);
        t[static_cast<std::size_t>(a) * m + b] = e;
      }
    std::vector<Expr> prod(static_cast<std::size_t>(m) * m, Expr::constant(0));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        Expr acc = Expr::constant(0);
        for (int c = 0; c < m; ++c)
          acc = acc + t[static_cast<std::size_t>(a) * m + c] * g[static_cast<std::size_t>(c) * m + b];
        prod[static_cast<std::size_t>(a) * m + b] = acc;
      }
    g = std::move(prod);
  }
  return ExprField(m, {m, m}, std::move(g), supply);
}

Connection random_almost_symplectic_connection(std::shared_ptr<const Chart> chart,
                                               std::uint64_t seed) {
  auto cube = random_polynomial_cube(chart->dim(), seed, chart->supply());
  Connection base{chart,
                  [cube, m = chart->dim()](const Point& x) {
                    std::vector<double> g(static_cast<std::size_t>(m) * m * m);
                    cube.values(x, g.data());
                    return g;
                  },
                  "random_base"};
  return make_almost_symplectic(base);
}

DirectionFn random_direction(std::shared_ptr<const Chart> chart, std::uint64_t seed) {
  auto cube = random_polynomial_cube(chart->dim(), seed ^ 0xd1ull, chart->supply());
  const int m = chart->dim();
  return [chart, cube, m](const Point& x) {
    std::vector<double> raw(static_cast<std::size_t>(m) * m * m);
    cube.values(x, raw.data());
    auto at = [&](int i, int j, int k) -> double& {
      return raw[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
                 static_cast<std::size_t>(k)];
    };
    // symmetrize the lowered field in (j, k), then raise the last index
    std::vector<double> low(raw.size());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          low[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
              static_cast<std::size_t>(k)] = 0.5 * (at(i, j, k) + at(i, k, j));
    auto winv = chart->omega_inv(x);
    std::vector<double> up(raw.size(), 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int h = 0; h < m; ++h) {
          double acc = 0;
          for (int k = 0; k < m; ++k)
            acc += low[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
                       static_cast<std::size_t>(k)] *
                   winv[static_cast<std::size_t>(k) * m + static_cast<std::size_t>(h)];
          up[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
             static_cast<std::size_t>(h)] = acc;
        }
    return up;
  };
}

SuiteReport run_koszul_suite(const std::vector<int>& ns, std::uint64_t seed) {
  SuiteReport rep{"koszul", {}};
  std::mt19937_64 rng(seed);
  for (int n : ns) {
    SympSpace s(n);
    for (int l = 3; l <= 4; ++l) {
      auto ex = verify_exactness(l, n);
      std::ostringstream detail;
      detail << "ranks";
      for (auto r : ex.ranks) detail << " " << r;
      push(rep, tag(n, "exactness l=" + std::to_string(l)), ex.pass, 0, 0, detail.str());
    }
    bool homotopy = true, anni = true, equi = true;
    for (int tot = 3; tot <= 4; ++tot)
      for (int p = 0; p <= tot; ++p) {
        const int q = tot - p;
        auto t = random_sig_tensor<Rational>(s, {p, q}, rng);
        TensorR ab = q >= 1 ? koszul_A(koszul_B(t)) : TensorR(s, tot, {p, q});
        TensorR ba = p >= 1 ? koszul_B(koszul_A(t)) : TensorR(s, tot, {p, q});
        homotopy = homotopy &&
                   (ab - ba - t * Rational((q % 2 == 0 ? 1 : -1) * tot)).is_zero();
        if (q >= 1 && p >= 1) {
          auto u = random_sig_tensor<Rational>(s, {p, q - 1}, rng);
          anni = anni && koszul_A(koszul_A(u)).is_zero();
          auto w = random_sig_tensor<Rational>(s, {p - 1, q}, rng);
          anni = anni && koszul_B(koszul_B(w)).is_zero();
        }
      }
    for (std::uint64_t k = 0; k < 3; ++k) {
      auto g = random_symplectic<Rational>(s, seed + k);
      auto t = random_sig_tensor<Rational>(s, {2, 1}, rng);
      equi = equi && (act(g, koszul_A(t)) - koszul_A(act(g, t))).is_zero();
      auto u = random_sig_tensor<Rational>(s, {1, 2}, rng);
      equi = equi && (act(g, koszul_B(u)) - koszul_B(act(g, u))).is_zero();
    }
    push(rep, tag(n, "homotopy identity, exact"), homotopy);
    push(rep, tag(n, "A.A = 0 and B.B = 0, exact"), anni);
    push(rep, tag(n, "A/B equivariance, exact"), equi);
  }
  return rep;
}

SuiteReport run_projector_suite(const std::vector<int>& ns, std::uint64_t seed) {
  SuiteReport rep{"projectors", {}};
  std::mt19937_64 rng(seed);
  for (int n : ns) {
    SympSpace s(n);
    auto cubic = random_sig_tensor<Rational>(s, {3, 0}, rng);
    auto t = random_sig_tensor<Rational>(s, {2, 1}, rng);
    auto u = random_sig_tensor<Rational>(s, {1, 2}, rng);
    auto v = random_tensor<Rational>(s, 1, rng);
    push(rep, tag(n, "pi A1 = Id"), (pi_map(koszul_A(cubic)) - cubic).is_zero());
    push(rep, tag(n, "phi xi = Id"), (phi(xi(v)) - v).is_zero());
    push(rep, tag(n, "pi xi = 0"), pi_map(xi(v)).is_zero());
    push(rep, tag(n, "phi A1 = 0"), phi(koszul_A(cubic)).is_zero());
    push(rep, tag(n, "eta idempotent"), (eta(eta(t)) - eta(t)).is_zero());
    auto c1 = chi(t);
    push(rep, tag(n, "chi^2 - chi - 2 = 0"), (chi(c1) - c1 - t * Rational(2)).is_zero());
    push(rep, tag(n, "C A2 = 0"), c_map(koszul_A(t)).is_zero());
    push(rep, tag(n, "C(v x omega) = (n-1) v"),
         (c_map(v_tensor_omega(v)) - v * Rational(n - 1)).is_zero());
    auto census = projector_rank_census(n);
    const std::size_t eta_expect = static_cast<std::size_t>(8 * (n * n * n - n) / 3);
    push(rep, tag(n, "rank(eta) = (8/3)(n^3 - n)"), census.rank_eta == eta_expect,
         static_cast<double>(census.rank_eta), 0, "expect " + std::to_string(eta_expect));
    push(rep, tag(n, "rank census sums to dim"),
         census.rank_a1pi + census.rank_xiphi + census.rank_eta == census.space_dim);
    auto ranks = torsion_projector_ranks(n);
    const std::size_t tprime = n >= 2 ? static_cast<std::size_t>(2 * n * (2 * n * n - 3 * n - 2) / 3) : 0;
    std::size_t total = ranks[0] + ranks[1] + ranks[2] + ranks[3];
    push(rep, tag(n, "torsion projector ranks"),
         ranks[2] == tprime && total == signature_basis(s.dim(), {1, 2}).size(),
         static_cast<double>(total), 0,
         std::to_string(ranks[0]) + "+" + std::to_string(ranks[1]) + "+" +
             std::to_string(ranks[2]) + "+" + std::to_string(ranks[3]));
    auto d = decompose_torsion(u);
    push(rep, tag(n, "decomposition residual = 0"), sgn(d.recombination_residual) == 0);
    bool equi = true;
    for (std::uint64_t k = 0; k < 3; ++k) {
      auto g = random_symplectic<Rational>(s, seed + 100 + k);
      equi = equi && (phi(act(g, t)) - act(g, phi(t))).is_zero() &&
             (xi(act(g, v)) - act(g, xi(v))).is_zero() &&
             (pi_map(act(g, t)) - act(g, pi_map(t))).is_zero() &&
             (eta(act(g, t)) - act(g, eta(t))).is_zero() &&
             (chi(act(g, t)) - act(g, chi(t))).is_zero() &&
             (c_map(act(g, u)) - act(g, c_map(u))).is_zero();
    }
    push(rep, tag(n, "projector equivariance, exact"), equi);
  }
  return rep;
}

SuiteReport run_invariant_suite(const std::vector<int>& ns, std::uint64_t seed) {
  SuiteReport rep{"invariants", {}};
  std::mt19937_64 rng(seed);
  for (int n : ns) {
    SympSpace s(n);
    auto cls = classify_traces(n);
    push(rep, tag(n, "matching span rank"), cls.pass, static_cast<double>(cls.span_rank), 0,
         n == 1 ? "collapse to rank 1" : "rank 4 with basis r1..r4");
    bool sym_zero = true;
    for (auto pair : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
      auto q = symmetrize(random_tensor<Rational>(s, 3, rng), {pair.first, pair.second});
      for (const auto& tp : all_matchings())
        sym_zero = sym_zero && eval_trace(q, tp) == Rational(0);
    }
    push(rep, tag(n, "symmetric-pair tensors give 0"), sym_zero);
    auto total = antisymmetrize(random_tensor<Rational>(s, 3, rng), {0, 1, 2});
    push(rep, tag(n, "totally skew tensors give r = 0"),
         unique_invariant(total, false).value == Rational(0));
    bool dual = true, proportional = true;
    for (int repx = 0; repx < 5; ++repx) {
      auto q = antisymmetrize(random_tensor<Rational>(s, 3, rng), {0, 1});
      auto res = unique_invariant(q, true);
      dual = dual && res.mixed_route.has_value() && res.value == *res.mixed_route;
      const std::array<long, 15> mult = {1, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0};
      const auto& ms = all_matchings();
      for (std::size_t i = 0; i < 15; ++i)
        proportional =
            proportional && eval_trace(q, ms[i]) == res.value * Rational(mult[i]);
    }
    push(rep, tag(n, "mixed-index route agrees on skew tensors"), dual);
    push(rep, tag(n, "skew tensors: every matching prop. to r"), proportional);
    bool inv = true;
    auto q = random_tensor<Rational>(s, 3, rng);
    for (std::uint64_t k = 0; k < 3; ++k) {
      auto g = random_symplectic<Rational>(s, seed + 200 + k);
      auto gq = act(g, q);
      for (const auto& tp : all_matchings()) inv = inv && eval_trace(gq, tp) == eval_trace(q, tp);
    }
    push(rep, tag(n, "Sp-invariance of all matchings, exact"), inv);
    auto a = random_tensor<Rational>(s, 1, rng);
    auto w = random_tensor<Rational>(s, 1, rng);
    auto vc = vectorial_torsion_invariant(a, w);
    push(rep, tag(n, "vectorial contraction identity"), vc.value == vc.expected);
  }
  return rep;
}

SuiteReport run_connection_suite(std::uint64_t seed, double tol, int lattice) {
  SuiteReport rep{"connections", {}};
  ConnectionCheckOptions opts{lattice, seed, tol};

  auto flat = make_standard_chart(2);
  auto pts_flat = flat->validation_lattice(lattice, seed);
  {
    auto c = tondeur(base_connection(flat), opts);
    push(rep, "tondeur on constant omega: torsion", max_torsion(c, pts_flat) < 1e-10,
         max_torsion(c, pts_flat), 1e-10, "symplectic connection expected");
    push(rep, "tondeur on constant omega: nabla omega", max_nabla_omega(c, pts_flat) < tol,
         max_nabla_omega(c, pts_flat), tol);
  }
  auto curved = make_nonclosed_chart();
  auto pts = curved->validation_lattice(lattice, seed);
  {
    auto c = tondeur(base_connection(curved), opts);
    double worst_no = max_nabla_omega(c, pts);
    double worst_t = 0, worst_skew = 0;
    for (const auto& x : pts) {
      auto tl = lowered_torsion(c, x);
      auto dw = curved->dw3(x);
      const int m = curved->dim();
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) {
            auto id3 = [&](int a2, int b2, int c2) {
              return (static_cast<std::size_t>(a2) * m + static_cast<std::size_t>(b2)) * m +
                     static_cast<std::size_t>(c2);
            };
            worst_t = std::max(worst_t, std::abs(tl[id3(i, j, k)] - dw[id3(i, j, k)] / 3.0));
            worst_skew = std::max(worst_skew, std::abs(tl[id3(i, j, k)] + tl[id3(i, k, j)]));
          }
    }
    push(rep, "tondeur: nabla omega residual", worst_no < tol, worst_no, tol);
    push(rep, "tondeur: lowered torsion = (1/3) d omega", worst_t < tol, worst_t, tol);
    push(rep, "tondeur: lowered torsion totally skew", worst_skew < tol, worst_skew, tol);
  }
  {
    // triple route agreement on random almost symplectic connections
    double worst = 0, closed_t = 0;
    for (std::uint64_t k = 0; k < 5; ++k) {
      auto c = random_almost_symplectic_connection(curved, seed + k);
      for (const auto& x : pts) worst = std::max(worst, torsion_invariant(c, x).max_spread());
      auto cf = random_almost_symplectic_connection(flat, seed + k);
      for (const auto& x : pts_flat)
        closed_t = std::max(closed_t, std::abs(torsion_invariant(cf, x).full));
    }
    push(rep, "t routes agree within 1e-9 relative", worst < 1e-9, worst, 1e-9);
    push(rep, "t = 0 on closed charts", closed_t < 1e-8, closed_t, 1e-8);
    double mas_proj = 0;
    auto c1 = random_almost_symplectic_connection(curved, seed + 9);
    auto c2 = make_almost_symplectic(c1);
    for (const auto& x : pts) {
      auto g1 = c1.gamma(x);
      auto g2 = c2.gamma(x);
      for (std::size_t i = 0; i < g1.size(); ++i)
        mas_proj = std::max(mas_proj, std::abs(g1[i] - g2[i]));
    }
    push(rep, "make_almost_symplectic is idempotent", mas_proj < tol, mas_proj, tol);
  }
  {
    double worst = 0;
    for (std::uint64_t k = 0; k < 50; ++k) {
      auto chart = k % 2 == 0 ? flat : curved;
      auto c = random_almost_symplectic_connection(chart, seed + 10 + k);
      auto dir = random_direction(chart, seed + 900 + k);
      const auto& x = (k % 2 == 0 ? pts_flat : pts)[k % 16];
      double lhs = invariant_variation(c, dir, x);
      double rhs = invariant_variation_fd(c, dir, x);
      double rel = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-6});
      worst = std::max(worst, rel);
    }
    push(rep, "variation formula vs finite differences (50 pairs)", worst < 1e-5, worst, 1e-5);
  }
  {
    auto c = random_almost_symplectic_connection(flat, seed + 31);
    auto g = random_symplectic_gauge_field(2, seed + 32, flat->supply());
    auto cg = gauge_transform(c, g, opts);
    double res = max_nabla_omega(cg, pts_flat);
    push(rep, "gauge transform keeps nabla omega = 0", res < tol, res, tol);
  }
  {
    auto c = random_almost_symplectic_connection(flat, seed + 41);
    auto g = random_symplectic<double>(SympSpace(2), seed + 42);
    std::vector<Point> small;
    for (const auto& x : pts_flat) {
      Point y = x;
      for (auto& v : y) v *= 0.1;
      small.push_back(y);
    }
    auto pf = pushforward_invariant_check(c, g.matrix, small, tol);
    push(rep, "pushforward equivariance of t", pf.pass, pf.max_invariant_diff, tol,
         "torsion functoriality " + double_to_string(pf.max_torsion_functoriality));
  }
  {
    auto c = random_almost_symplectic_connection(flat, seed + 51);
    auto f1 = random_polynomial_scalar(4, seed + 52, flat->supply());
    auto f2 = random_polynomial_scalar(4, seed + 53, flat->supply());
    auto lz = conformal_leibniz_check(c, f1, f2, pts_flat[3]);
    push(rep, "conformal Leibniz identity", lz.pass, lz.residual, 1e-8);
    // transitivity (nabla^f)^g = nabla^{f+g}
    auto cf = conformal_connection(c, f1);
    auto cfg = conformal_connection(cf, f2);
    std::vector<Expr> sum = {f1.expr(0) + f2.expr(0)};
    ExprField f12(4, {}, std::move(sum), flat->supply());
    auto csum = conformal_connection(c, f12);
    double worst = 0;
    for (const auto& x : pts_flat) {
      auto a = cfg.gamma(x);
      auto b = csum.gamma(x);
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    push(rep, "conformal transitivity, analytic-exact", worst < 1e-12, worst, 1e-12);
  }
  {
    auto base = base_connection(flat);  // symplectic and torsion-free
    auto u = random_polynomial_vector(4, seed + 61, flat->supply());
    auto f = random_polynomial_scalar(4, seed + 62, flat->supply());
    auto cuf = vectorial_connection(base, u, f, opts);
    const int m = flat->dim();
    double worst_t = 0, worst_inv = 0, worst_ns = 0;
    for (const auto& x : pts_flat) {
      // torsion formula: w(X,Y)(2 grad f + U) + w(U,Y) X / 2 - w(U,X) Y / 2
      auto tt = torsion(cuf, x);
      auto w = flat->omega(x);
      std::vector<double> uv(static_cast<std::size_t>(m));
      u.values(x, uv.data());
      auto grad = symplectic_gradient(*flat, f, x);
      std::vector<double> om_u(static_cast<std::size_t>(m), 0.0);
      for (int j = 0; j < m; ++j)
        for (int a = 0; a < m; ++a)
          om_u[static_cast<std::size_t>(j)] +=
              uv[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(a) * m + j];
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int h = 0; h < m; ++h) {
            double expect = w[static_cast<std::size_t>(i) * m + j] *
                            (2 * grad[static_cast<std::size_t>(h)] + uv[static_cast<std::size_t>(h)]);
            if (h == i) expect += 0.5 * om_u[static_cast<std::size_t>(j)];
            if (h == j) expect -= 0.5 * om_u[static_cast<std::size_t>(i)];
            worst_t = std::max(
                worst_t,
                std::abs(tt[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
                            static_cast<std::size_t>(h)] -
                         expect));
          }
      double got = vectorial_invariant(cuf, f, x);
      double expect = vectorial_invariant_expected(*flat, u, f, x);
      worst_inv = std::max(worst_inv, std::abs(got - expect));
      // still almost symplectic for omega' = e^{2f} omega
      auto no = nabla_omega(cuf, x);
      std::vector<double> df(static_cast<std::size_t>(m));
      for (int d2 = 0; d2 < m; ++d2) df[static_cast<std::size_t>(d2)] = f.partial(0, d2, x);
      const double e2f = std::exp(2.0 * f.value(0, x));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) {
            // nabla(e^{2f} w) = e^{2f} (2 df (x) w + nabla w)
            double val = e2f * (2.0 * df[static_cast<std::size_t>(i)] *
                                    w[static_cast<std::size_t>(j) * m + k] +
                                no[(static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)) * m +
                                   static_cast<std::size_t>(k)]);
            worst_ns = std::max(worst_ns, std::abs(val));
          }
    }
    push(rep, "vectorial torsion formula", worst_t < tol, worst_t, tol);
    push(rep, "vectorial invariant 2 e^{-2f}(2n^2-n-1) U(f)", worst_inv < tol, worst_inv, tol);
    push(rep, "vectorial connection almost symplectic for e^{2f} omega", worst_ns < tol,
         worst_ns, tol);
  }
  return rep;
}

}  // namespace sympten
