#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sympten/connection_ops.hpp"
#include "sympten/verify.hpp"

using namespace sympten;

namespace {

const char* kNonClosed = R"({
  "n": 2,
  "domain": [[-0.5, 0.5], [-0.5, 0.5], [-0.5, 0.5], [-0.5, 0.5]],
  "omega": [["1,3", "1"], ["2,4", "1 + x1*x2"]],
  "derivatives": "analytic"
})";

}  // namespace

TEST_CASE("chart config loading and field evaluation") {
  auto chart = load_chart_config(kNonClosed);
  CHECK(chart->n() == 2);
  Point x{0.1, -0.2, 0.15, 0.05};
  auto w = chart->omega(x);
  CHECK(w[0 * 4 + 2] == doctest::Approx(1.0));
  CHECK(w[1 * 4 + 3] == doctest::Approx(1.0 + 0.1 * -0.2));
  CHECK(w[3 * 4 + 1] == doctest::Approx(-(1.0 + 0.1 * -0.2)));
  auto winv = chart->omega_inv(x);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double acc = 0;
      for (int c = 0; c < 4; ++c) acc += w[a * 4 + c] * winv[c * 4 + b];
      CHECK(acc == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
    }
  CHECK_THROWS_AS(chart->omega(Point{2, 0, 0, 0}), std::out_of_range);
  CHECK_THROWS_AS(load_chart_config("{ not json"), std::invalid_argument);
  CHECK_THROWS_AS(load_chart_config(R"({"n":1,"omega":[["2,1","1"]]})"), std::invalid_argument);
  CHECK_THROWS_AS(load_chart_config(R"({"n":1})"), std::invalid_argument);
}

TEST_CASE("validation lattice") {
  auto chart = load_chart_config(kNonClosed);
  auto pts = chart->validation_lattice(3, 42);
  CHECK(pts.size() == 81 + 16);
  for (const auto& x : pts) CHECK(chart->contains(x));
  auto pts2 = chart->validation_lattice(3, 42);
  CHECK(pts == pts2);

  // degenerate omega must be rejected
  const char* degenerate = R"({"n": 1, "omega": [["1,2", "x1"]]})";
  auto bad = load_chart_config(degenerate);
  CHECK_THROWS_AS(bad->validation_lattice(3, 1), std::runtime_error);
}

TEST_CASE("finite-difference supply tracks analytic partials") {
  const char* fd_cfg = R"({
    "n": 1,
    "domain": [[-1, 1], [-1, 1]],
    "omega": [["1,2", "1 + 0.3*x1 - 0.2*x2^2"]],
    "derivatives": "fd",
    "richardson": true
  })";
  auto chart_fd = load_chart_config(fd_cfg);
  auto chart_an = load_chart_config(R"({
    "n": 1,
    "domain": [[-1, 1], [-1, 1]],
    "omega": [["1,2", "1 + 0.3*x1 - 0.2*x2^2"]]
  })");
  Point x{0.2, -0.4};
  auto d1 = chart_fd->domega(x);
  auto d2 = chart_an->domega(x);
  for (std::size_t i = 0; i < d1.size(); ++i) CHECK(d1[i] == doctest::Approx(d2[i]).epsilon(1e-9));
}

TEST_CASE("nabla_omega basics") {
  auto flat = make_standard_chart(2);
  auto base = base_connection(flat);
  Point x{0.1, 0.2, -0.3, 0.4};
  for (double v : nabla_omega(base, x)) CHECK(v == 0.0);

  // non-constant omega with zero gamma is generically non-parallel,
  // and the (j,k) antisymmetry of the result always holds
  auto curved = make_nonclosed_chart();
  auto c0 = base_connection(curved);
  Point y{0.1, -0.2, 0.15, 0.05};
  auto no = nabla_omega(c0, y);
  bool nonzero = false;
  for (double v : no) nonzero = nonzero || std::abs(v) > 1e-12;
  CHECK(nonzero);
  const int m = 4;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        CHECK(no[(i * m + j) * m + k] == doctest::Approx(-no[(i * m + k) * m + j]).epsilon(1e-12));
}

TEST_CASE("make_almost_symplectic") {
  auto curved = make_nonclosed_chart();
  auto pts = curved->validation_lattice(3, 42);
  auto c0 = base_connection(curved);
  auto c1 = make_almost_symplectic(c0);
  CHECK(max_nabla_omega(c1, pts) < 1e-7);
  CHECK(max_nabla_omega_serial(c1, pts) == max_nabla_omega(c1, pts));

  // already-almost-symplectic input is a fixed point
  auto c2 = make_almost_symplectic(c1);
  Point x{0.1, -0.2, 0.15, 0.05};
  auto g1 = c1.gamma(x);
  auto g2 = c2.gamma(x);
  for (std::size_t i = 0; i < g1.size(); ++i) CHECK(g2[i] == doctest::Approx(g1[i]).epsilon(1e-12));

  // constant omega, zero gamma: nothing to correct
  auto flat = make_standard_chart(1);
  auto cf = make_almost_symplectic(base_connection(flat));
  for (double v : cf.gamma(Point{0.3, -0.3})) CHECK(v == 0.0);
}

TEST_CASE("tondeur construction") {
  auto curved = make_nonclosed_chart();
  auto pts = curved->validation_lattice(3, 42);
  auto c = tondeur(base_connection(curved));
  CHECK(max_nabla_omega(c, pts) < 1e-6);
  double worst = 0;
  const int m = 4;
  for (const auto& x : pts) {
    auto tl = lowered_torsion(c, x);
    auto dw = curved->dw3(x);
    for (std::size_t i = 0; i < tl.size(); ++i)
      worst = std::max(worst, std::abs(tl[i] - dw[i] / 3.0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          CHECK(tl[(i * m + j) * m + k] == doctest::Approx(-tl[(i * m + k) * m + j]).epsilon(1e-9));
  }
  CHECK(worst < 1e-6);

  // a non-torsion-free start is rejected
  auto torsionful = Connection{curved,
                               [](const Point& x) {
                                 std::vector<double> g(64, 0.0);
                                 g[(0 * 4 + 1) * 4 + 2] = 0.5 + x[0];
                                 return g;
                               },
                               "torsionful"};
  CHECK_THROWS_AS(tondeur(torsionful), std::invalid_argument);

  // closed omega: the result is a symplectic connection
  auto flat = make_standard_chart(2);
  auto cf = tondeur(base_connection(flat));
  CHECK(max_torsion(cf, flat->validation_lattice(3, 42)) < 1e-10);
}
