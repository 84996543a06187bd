#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sympten/irreducible.hpp"
#include "sympten/random.hpp"
#include "sympten/symp_map.hpp"

using namespace sympten;

namespace {

TensorR vec(SympSpace s, int i) { return TensorR::unit(s, {i}); }

}  // namespace

TEST_CASE("koszul A matches the decomposable formula") {
  SympSpace s(2);
  // A_{3,1}(u1 u2 u3) = sum_i (product omitting u_i) (x) u_i
  const int u[3] = {0, 1, 2};
  auto cubic = sym_product<Rational>({vec(s, u[0]), vec(s, u[1]), vec(s, u[2])});
  auto lhs = koszul_A(cubic);
  TensorR rhs(s, 3);
  for (int i = 0; i < 3; ++i) {
    std::vector<TensorR> rest;
    for (int j = 0; j < 3; ++j)
      if (j != i) rest.push_back(vec(s, u[j]));
    rhs += tensor_product(sym_product<Rational>(rest), vec(s, u[i]));
  }
  CHECK((lhs - rhs).is_zero());
  CHECK(lhs.signature() == Signature{2, 1});

  // A_{2,2}(u1 u2 (x) v) = u2 (x) v ^ u1 + u1 (x) v ^ u2
  auto t = tensor_product(sym_product<Rational>({vec(s, 0), vec(s, 1)}), vec(s, 2));
  t.set_signature({2, 1});
  auto lhs2 = koszul_A(t);
  auto rhs2 = tensor_product(vec(s, 1), wedge<Rational>({vec(s, 2), vec(s, 0)})) +
              tensor_product(vec(s, 0), wedge<Rational>({vec(s, 2), vec(s, 1)}));
  CHECK((lhs2 - rhs2).is_zero());
}

TEST_CASE("koszul B matches the decomposable formula") {
  SympSpace s(2);
  // B_{2,2}(u (x) w1 ^ w2) = -(w1 u) (x) w2 + (w2 u) (x) w1
  auto t = tensor_product(vec(s, 2), wedge<Rational>({vec(s, 0), vec(s, 3)}));
  t.set_signature({1, 2});
  auto lhs = koszul_B(t);
  auto rhs = tensor_product(sym_product<Rational>({vec(s, 0), vec(s, 2)}), vec(s, 3)) * Rational(-1) +
             tensor_product(sym_product<Rational>({vec(s, 3), vec(s, 2)}), vec(s, 0));
  CHECK((lhs - rhs).is_zero());

  // B_{2,2}(v (x) omega) = -(2n+1) xi(v)
  for (int n = 1; n <= 3; ++n) {
    SympSpace sp(n);
    std::mt19937_64 rng(n);
    auto v = random_tensor<Rational>(sp, 1, rng);
    auto b = koszul_B(v_tensor_omega(v));
    auto expect = xi(v) * Rational(-(2 * n + 1));
    CHECK((b - expect).is_zero());
  }
}

TEST_CASE("A.A = 0, B.B = 0, degenerate ends") {
  std::mt19937_64 rng(101);
  for (int n = 1; n <= 3; ++n) {
    SympSpace s(n);
    for (int tot = 3; tot <= 4; ++tot)
      for (int p = 1; p <= tot; ++p) {
        int q = tot - p + 1;
        auto t = random_sig_tensor<Rational>(s, {p, q - 1}, rng);
        CHECK(koszul_A(koszul_A(t)).is_zero());
        auto t2 = random_sig_tensor<Rational>(s, {p - 1, q}, rng);
        CHECK(koszul_B(koszul_B(t2)).is_zero());
      }
    // A_{0,q} = 0 and B_{p,0} = 0
    auto lam = random_sig_tensor<Rational>(s, {0, 2}, rng);
    CHECK(koszul_A(lam).is_zero());
    auto symt = random_sig_tensor<Rational>(s, {3, 0}, rng);
    CHECK(koszul_B(symt).is_zero());
  }
}

TEST_CASE("homotopy identity") {
  std::mt19937_64 rng(202);
  for (int n = 1; n <= 3; ++n) {
    SympSpace s(n);
    for (int tot = 3; tot <= 4; ++tot)
      for (int p = 0; p <= tot; ++p) {
        const int q = tot - p;
        auto t = random_sig_tensor<Rational>(s, {p, q}, rng);
        TensorR ab = q >= 1 ? koszul_A(koszul_B(t)) : TensorR(s, tot, {p, q});
        TensorR ba = p >= 1 ? koszul_B(koszul_A(t)) : TensorR(s, tot, {p, q});
        auto lhs = ab - ba;
        auto rhs = t * Rational((q % 2 == 0 ? 1 : -1) * tot);
        CHECK((lhs - rhs).is_zero());
      }
  }
}

TEST_CASE("A and B are equivariant") {
  std::mt19937_64 rng(303);
  for (int n = 1; n <= 2; ++n) {
    SympSpace s(n);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto g = random_symplectic<Rational>(s, seed);
      auto t = random_sig_tensor<Rational>(s, {2, 1}, rng);
      CHECK((act(g, koszul_A(t)) - koszul_A(act(g, t))).is_zero());
      auto u = random_sig_tensor<Rational>(s, {1, 2}, rng);
      CHECK((act(g, koszul_B(u)) - koszul_B(act(g, u))).is_zero());
    }
  }
}

TEST_CASE("exactness certificates") {
  // dims and ranks certified against binomial formulas
  struct Line {
    int l, n;
    std::vector<std::size_t> dims, ranks;
  };
  const Line table[] = {
      {3, 1, {4, 6, 2, 0}, {4, 2, 0}},
      {3, 2, {20, 40, 24, 4}, {20, 20, 4}},
      {3, 3, {56, 126, 90, 20}, {56, 70, 20}},
      {4, 1, {5, 8, 3, 0, 0}, {5, 3, 0, 0}},
      {4, 2, {35, 80, 60, 16, 1}, {35, 45, 15, 1}},
  };
  for (const auto& line : table) {
    auto rep = verify_exactness(line.l, line.n);
    CHECK(rep.pass);
    REQUIRE(rep.stages.size() == line.dims.size());
    for (std::size_t i = 0; i < line.dims.size(); ++i) CHECK(rep.stages[i].dim == line.dims[i]);
    REQUIRE(rep.ranks.size() == line.ranks.size());
    for (std::size_t i = 0; i < line.ranks.size(); ++i) CHECK(rep.ranks[i] == line.ranks[i]);
  }
  CHECK_THROWS(verify_exactness(5, 1));
  CHECK_THROWS(verify_exactness(3, 4));
}
