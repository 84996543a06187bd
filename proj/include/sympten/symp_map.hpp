#pragma once

#include <cstdint>
#include <vector>

#include "sympten/tensor_ops.hpp"

namespace sympten {

/// An element of Sp(2n) acting on tensor powers slot by slot.
template <class S>
struct SympMap {
  SympSpace space;
  std::vector<S> matrix;  // row-major dim x dim

  const S& g(int a, int b) const { return matrix[static_cast<std::size_t>(a) * space.dim() + b]; }

  /// max-norm of g^T omega g - omega; 0 means exact membership.
  S membership_residual() const {
    const int m = space.dim();
    S worst = Scalar<S>::from_int(0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        S acc = Scalar<S>::from_int(-space.omega(a, b));
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            int w = space.omega(i, j);
            if (w == 0) continue;
            S term = g(i, a) * g(j, b);
            if (w > 0)
              acc += term;
            else
              acc -= term;
          }
        S v = Scalar<S>::abs(acc);
        if (worst < v) worst = v;
      }
    return worst;
  }
};

template <class S>
SympMap<S> identity_map(SympSpace space) {
  const int m = space.dim();
  SympMap<S> out{space, std::vector<S>(static_cast<std::size_t>(m) * m, Scalar<S>::from_int(0))};
  for (int i = 0; i < m; ++i) out.matrix[static_cast<std::size_t>(i) * m + i] = Scalar<S>::from_int(1);
  return out;
}

template <class S>
SympMap<S> compose(const SympMap<S>& a, const SympMap<S>& b) {
  const int m = a.space.dim();
  SympMap<S> out{a.space, std::vector<S>(static_cast<std::size_t>(m) * m, Scalar<S>::from_int(0))};
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      const S& v = a.g(i, k);
      if (Scalar<S>::is_zero(v)) continue;
      for (int j = 0; j < m; ++j)
        out.matrix[static_cast<std::size_t>(i) * m + j] += v * b.g(k, j);
    }
  return out;
}

/// Inverse via omega: g^{-1} = omega_inv g^T omega for g in Sp(2n).
template <class S>
SympMap<S> symplectic_inverse(const SympMap<S>& a) {
  const int m = a.space.dim();
  SympMap<S> out{a.space, std::vector<S>(static_cast<std::size_t>(m) * m, Scalar<S>::from_int(0))};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      S acc = Scalar<S>::from_int(0);
      for (int p = 0; p < m; ++p) {
        int wi = a.space.omega_inv(i, p);
        if (wi == 0) continue;
        for (int q = 0; q < m; ++q) {
          int wo = a.space.omega(q, j);
          if (wo == 0) continue;
          S term = a.g(q, p);
          if (wi * wo > 0)
            acc += term;
          else
            acc -= term;
        }
      }
      out.matrix[static_cast<std::size_t>(i) * m + j] = acc;
    }
  return out;
}

/// Deterministic pseudo-random element of Sp(2n).  Float mode exponentiates a
/// random element of sp(2n); rational mode multiplies symplectic transvections.
template <class S>
SympMap<S> random_symplectic(SympSpace space, std::uint64_t seed);

template <>
SympMap<double> random_symplectic<double>(SympSpace space, std::uint64_t seed);
template <>
SympMap<Rational> random_symplectic<Rational>(SympSpace space, std::uint64_t seed);

/// (g t)_{j1..jk} = g_{j1 i1} ... g_{jk ik} t_{i1..ik}; preserves the signature.
template <class S>
Tensor<S> act(const SympMap<S>& g, const Tensor<S>& t) {
  if (!(g.space == t.space())) throw std::invalid_argument("act: space mismatch");
  Tensor<S> out = t;
  for (int s = 0; s < t.order(); ++s) out = mode_apply(out, g.matrix, s);
  out.set_signature(t.signature());
  return out;
}

}  // namespace sympten
