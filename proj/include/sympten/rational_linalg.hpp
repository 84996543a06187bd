#pragma once

#include <optional>
#include <vector>

#include "sympten/rational.hpp"

namespace sympten {

/// Dense row-major matrix of exact rationals for rank and solve work.
struct RationalMatrix {
  std::size_t rows{0}, cols{0};
  std::vector<Rational> a;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Rational(0)) {}
  Rational& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Rank by fraction-exact Gaussian elimination.
inline std::size_t rational_rank(RationalMatrix m) {
  std::size_t rank = 0, r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && sgn(m(piv, c)) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < m.cols; ++j) std::swap(m(r, j), m(piv, j));
    const Rational pv = m(r, c);
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / pv;
      for (std::size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
    ++rank;
  }
  return rank;
}

/// Solves A x = b exactly when consistent (A tall allowed); nullopt otherwise.
/// Free variables, if any, are set to zero.
inline std::optional<std::vector<Rational>> rational_solve(RationalMatrix m,
                                                           std::vector<Rational> b) {
  std::vector<std::size_t> piv_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && sgn(m(piv, c)) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(piv, j));
      std::swap(b[r], b[piv]);
    }
    const Rational pv = m(r, c);
    for (std::size_t j = 0; j < m.cols; ++j) m(r, j) /= pv;
    b[r] /= pv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) -= f * m(r, j);
      b[i] -= f * b[r];
    }
    piv_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.rows; ++i)
    if (sgn(b[i]) != 0) return std::nullopt;
  std::vector<Rational> x(m.cols, Rational(0));
  for (std::size_t k = 0; k < piv_col.size(); ++k) x[piv_col[k]] = b[k];
  return x;
}

}  // namespace sympten
