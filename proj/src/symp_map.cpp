#include "sympten/symp_map.hpp"

#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace sympten {

template <>
SympMap<double> random_symplectic<double>(SympSpace space, std::uint64_t seed) {
  const int m = space.dim();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> u(-0.35, 0.35);
  Eigen::MatrixXd sym(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) sym(i, j) = sym(j, i) = u(rng);
  Eigen::MatrixXd omega_inv = Eigen::MatrixXd::Zero(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) omega_inv(a, b) = space.omega_inv(a, b);
  // omega X symmetric <=> X in sp(2n); exponentiate to land in the group
  Eigen::MatrixXd x = omega_inv * sym;
  Eigen::MatrixXd g = x.exp();
  SympMap<double> out{space, std::vector<double>(static_cast<std::size_t>(m) * m)};
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out.matrix[static_cast<std::size_t>(a) * m + b] = g(a, b);
  return out;
}

template <>
SympMap<Rational> random_symplectic<Rational>(SympSpace space, std::uint64_t seed) {
  const int m = space.dim();
  std::mt19937_64 rng(seed ^ 0x51afb03dull);
  std::uniform_int_distribution<int> comp(-2, 2);
  const Rational lambdas[] = {Rational(1),  Rational(-1),     Rational(1, 2),
                              Rational(-1, 2), Rational(2),   Rational(1, 3)};
  std::uniform_int_distribution<int> lpick(0, 5);
  auto out = identity_map<Rational>(space);
  const int factors = m + 2;
  for (int f = 0; f < factors; ++f) {
    std::vector<Rational> v(m, Rational(0));
    bool nonzero = false;
    for (int i = 0; i < m; ++i) {
      int c = comp(rng);
      v[i] = Rational(c);
      nonzero |= c != 0;
    }
    if (!nonzero) v[f % m] = Rational(1);
    Rational lambda = lambdas[lpick(rng)];
    // transvection T(x) = x + lambda omega(x, v) v; always symplectic
    SympMap<Rational> t = identity_map<Rational>(space);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        Rational omega_bv(0);
        for (int c = 0; c < m; ++c) {
          int w = space.omega(b, c);
          if (w > 0)
            omega_bv += v[c];
          else if (w < 0)
            omega_bv -= v[c];
        }
        t.matrix[static_cast<std::size_t>(a) * m + b] += lambda * v[a] * omega_bv;
      }
    out = compose(t, out);
  }
  return out;
}

}  // namespace sympten
