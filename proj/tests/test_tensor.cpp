#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sympten/random.hpp"
#include "sympten/serial.hpp"
#include "sympten/symp_map.hpp"

using namespace sympten;

TEST_CASE("standard space form") {
  SympSpace s1(1);
  CHECK(s1.omega(0, 1) == 1);
  CHECK(s1.omega(1, 0) == -1);
  CHECK(s1.omega(0, 0) == 0);

  SympSpace s2(2);
  CHECK(s2.omega(0, 2) == 1);
  CHECK(s2.omega(1, 3) == 1);
  CHECK(s2.omega(0, 1) == 0);
  CHECK(s2.omega(0, 3) == 0);

  for (int n = 1; n <= 4; ++n) {
    SympSpace s(n);
    for (int i = 0; i < s.dim(); ++i)
      for (int q = 0; q < s.dim(); ++q) {
        int acc = 0;
        for (int j = 0; j < s.dim(); ++j) acc += s.omega(i, j) * s.omega_inv(j, q);
        CHECK(acc == (i == q ? 1 : 0));
      }
  }
  CHECK_THROWS_AS(SympSpace(0), std::invalid_argument);
}

TEST_CASE("symmetrize basics") {
  SympSpace s(1);
  auto t = TensorR::unit(s, {0, 1});
  auto sym = symmetrize(t, {0, 1});
  CHECK(sym.at({0, 1}) == Rational(1, 2));
  CHECK(sym.at({1, 0}) == Rational(1, 2));
  CHECK((symmetrize(sym, {0, 1}) - sym).is_zero());

  std::mt19937_64 rng(7);
  auto r = random_tensor<Rational>(SympSpace(2), 3, rng);
  auto rs = symmetrize(r, {0, 1});
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) CHECK(rs.at({a, b, c}) == rs.at({b, a, c}));
  CHECK_THROWS(symmetrize(r, {}));
  CHECK_THROWS(symmetrize(r, {0, 3}));
}

TEST_CASE("antisymmetrize basics") {
  SympSpace s(1);
  CHECK(antisymmetrize(TensorR::unit(s, {0, 0}), {0, 1}).is_zero());
  auto t = antisymmetrize(TensorR::unit(s, {0, 1}), {0, 1});
  CHECK(t.at({0, 1}) == Rational(1, 2));
  CHECK(t.at({1, 0}) == Rational(-1, 2));

  std::mt19937_64 rng(8);
  auto r = random_tensor<Rational>(SympSpace(2), 2, rng);
  CHECK(symmetrize(antisymmetrize(r, {0, 1}), {0, 1}).is_zero());
}

TEST_CASE("contract_omega values") {
  SympSpace s(2);
  auto t = TensorR::unit(s, {0, 2});
  auto raised = contract_omega(t, 0, 1, OmegaIndex::raise);
  CHECK(raised.order() == 0);
  CHECK(raised[0] == Rational(s.omega_inv(0, 2)));
  CHECK(raised[0] == Rational(-1));
  auto lowered = contract_omega(t, 0, 1, OmegaIndex::lower);
  CHECK(lowered[0] == Rational(1));

  std::mt19937_64 rng(9);
  auto r = random_tensor<Rational>(s, 3, rng);
  CHECK(contract_omega(symmetrize(r, {0, 2}), 0, 2, OmegaIndex::raise).is_zero());
  CHECK(contract_omega(symmetrize(r, {0, 2}), 0, 2, OmegaIndex::lower).is_zero());
  CHECK_THROWS(contract_omega(r, 1, 1, OmegaIndex::raise));

  // brute-force cross-check of a raise-then-lower trace on an order-4 tensor
  auto big = random_tensor<Rational>(s, 4, rng);
  auto chained = contract_omega(contract_omega(big, 1, 3, OmegaIndex::raise), 0, 1,
                                OmegaIndex::lower);
  Rational direct(0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          direct += big.at({a, b, c, d}) * Rational(s.omega_inv(b, d)) * Rational(s.omega(a, c));
  CHECK(chained[0] == direct);
}

TEST_CASE("random symplectic membership") {
  for (int n = 1; n <= 3; ++n) {
    SympSpace s(n);
    auto g1 = random_symplectic<double>(s, 42);
    auto g2 = random_symplectic<double>(s, 42);
    CHECK(g1.matrix == g2.matrix);
    CHECK(g1.membership_residual() < 1e-9);
    CHECK(identity_map<double>(s).membership_residual() == 0.0);

    auto gr = random_symplectic<Rational>(s, 43);
    CHECK(gr.membership_residual() == Rational(0));
    auto inv = symplectic_inverse(gr);
    auto id = compose(gr, inv);
    CHECK(id.matrix == identity_map<Rational>(s).matrix);
  }
}

TEST_CASE("group action") {
  SympSpace s(2);
  std::mt19937_64 rng(11);
  auto t = random_tensor<Rational>(s, 3, rng);
  CHECK((act(identity_map<Rational>(s), t) - t).is_zero());

  auto g = random_symplectic<Rational>(s, 5);
  auto h = random_symplectic<Rational>(s, 6);
  CHECK((act(g, act(symplectic_inverse(g), t)) - t).is_zero());
  CHECK((act(compose(g, h), t) - act(g, act(h, t))).is_zero());

  // the form itself, as an order-2 tensor of lowered components, is fixed
  TensorR om(s, 2, {0, 2});
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) om.at({a, b}) = Rational(s.omega(a, b));
  CHECK((act(g, om) - om).is_zero());

  // signature bookkeeping
  auto sig_t = random_sig_tensor<Rational>(s, {1, 2}, rng);
  CHECK(act(g, sig_t).signature() == Signature{1, 2});
  CHECK(act(g, sig_t).signature_holds());
  CHECK(contract_omega(sig_t, 0, 1, OmegaIndex::raise).signature().is_none());
}

TEST_CASE("parallel kernels match serial references") {
  std::mt19937_64 rng(12);
  SympSpace s(3);
  auto t = random_tensor<double>(s, 3, rng);
  auto g = random_symplectic<double>(s, 3);

  auto via_modes = act(g, t);
  auto direct = serial::act_direct(g.matrix, t);
  CHECK((via_modes - direct).max_abs() < 1e-10);

  for (std::size_t f = 0; f < t.size(); ++f) {
    CHECK(symmetrize(t, {0, 2})[f] == serial::symmetrize(t, {0, 2})[f]);
    CHECK(antisymmetrize(t, {1, 2})[f] == serial::antisymmetrize(t, {1, 2})[f]);
    CHECK(mode_apply(t, g.matrix, 1)[f] == serial::mode_apply(t, g.matrix, 1)[f]);
  }
  auto c1 = contract_omega(t, 0, 2, OmegaIndex::raise);
  auto c2 = serial::contract_omega(t, 0, 2, OmegaIndex::raise);
  for (std::size_t f = 0; f < c1.size(); ++f) CHECK(c1[f] == c2[f]);

  std::mt19937_64 rng2(13);
  auto tr = random_tensor<Rational>(SympSpace(2), 4, rng2);
  auto p = antisymmetrize(tr, {0, 1, 2, 3});
  auto q = serial::antisymmetrize(tr, {0, 1, 2, 3});
  CHECK((p - q).is_zero());
}

TEST_CASE("rational string round trip") {
  CHECK(rational_from_string("-1.25e-2") == Rational(-1, 80));
  CHECK(rational_from_string("3/4") == Rational(3, 4));
  CHECK(rational_from_string("-2/6") == Rational(-1, 3));
  CHECK(rational_from_string("10") == Rational(10));
  CHECK(rational_to_string(Rational(-5, 3)) == "-5/3");
  CHECK(rational_to_string(Rational(8)) == "8");
  CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
}
