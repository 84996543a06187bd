#pragma once

#include <array>

#include "sympten/koszul.hpp"

namespace sympten {

namespace detail {

template <class S>
void require_sig(const Tensor<S>& t, Signature sig, const char* who) {
  if (!(t.signature() == sig))
    throw std::invalid_argument(std::string(who) + ": wrong signature");
}

}  // namespace detail

/// phi(u1 u2 (x) v) = omega(u1, v) u2 + omega(u2, v) u1.
template <class S>
Tensor<S> phi(const Tensor<S>& t) {
  detail::require_sig(t, {2, 1}, "phi");
  auto out = contract_omega(t, 0, 2, OmegaIndex::lower);
  out += contract_omega(t, 1, 2, OmegaIndex::lower);
  out.set_signature({1, 0});
  return out;
}

/// Basis-independent right inverse of phi; xi(v) = -1/(2n+1) B_{2,2}(v (x) omega).
template <class S>
Tensor<S> xi(const Tensor<S>& v) {
  if (v.order() != 1) throw std::invalid_argument("xi: order-1 input expected");
  const auto space = v.space();
  const int n = space.n();
  Tensor<S> out(space, 3, {2, 1});
  S h = Scalar<S>::from_int(1);
  h /= Scalar<S>::from_int(2 * (2 * n + 1));
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < space.dim(); ++d) {
      const S& vd = v[static_cast<std::size_t>(d)];
      if (Scalar<S>::is_zero(vd)) continue;
      const S w = h * vd;
      out.at({i, d, i + n}) += w;
      out.at({d, i, i + n}) += w;
      out.at({i + n, d, i}) -= w;
      out.at({d, i + n, i}) -= w;
    }
  return out;
}

/// pi(u1 u2 (x) v) = (1/3) u1 u2 v, the left inverse of A_1.
template <class S>
Tensor<S> pi_map(const Tensor<S>& t) {
  detail::require_sig(t, {2, 1}, "pi_map");
  auto out = symmetrize(t, {0, 1, 2});
  out *= Scalar<S>::from_int(1) / Scalar<S>::from_int(3);
  out.set_signature({3, 0});
  return out;
}

/// eta = Id - A_1 pi - xi phi, the projection onto ker(phi) cap ker(pi).
template <class S>
Tensor<S> eta(const Tensor<S>& t) {
  detail::require_sig(t, {2, 1}, "eta");
  Tensor<S> out = t;
  out -= koszul_A(pi_map(t));
  out -= xi(phi(t));
  out.set_signature({2, 1});
  return out;
}

/// chi(u1 u2 (x) v) = v u2 (x) u1 + v u1 (x) u2; satisfies chi^2 - chi - 2 = 0.
template <class S>
Tensor<S> chi(const Tensor<S>& t) {
  detail::require_sig(t, {2, 1}, "chi");
  const int m = t.dim();
  Tensor<S> out(t.space(), 3, {2, 1});
  const S half = Scalar<S>::from_int(1) / Scalar<S>::from_int(2);
  const auto n_out = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (n_out >= kParallelCutoff)
  for (std::int64_t f = 0; f < n_out; ++f) {
    int x[3];
    unflatten(static_cast<std::size_t>(f), m, 3, x);
    const int a = x[0], b = x[1], c = x[2];
    S acc = t.at({c, b, a});
    acc += t.at({c, a, b});
    acc += t.at({b, c, a});
    acc += t.at({a, c, b});
    out[static_cast<std::size_t>(f)] = acc * half;
  }
  return out;
}

/// C(v (x) u ^ w) = omega(u, w) v + omega(v, u) w - omega(v, w) u.
template <class S>
Tensor<S> c_map(const Tensor<S>& t) {
  detail::require_sig(t, {1, 2}, "c_map");
  auto out = contract_omega(t, 1, 2, OmegaIndex::lower);
  out += contract_omega(t, 0, 1, OmegaIndex::lower);
  out -= contract_omega(t, 0, 2, OmegaIndex::lower);
  out.set_signature({1, 0});
  return out;
}

/// The four-part split of a torsion-like tensor.  part_Tprime is totally
/// antisymmetric and killed by C; part_vec_form has the literal form v (x)
/// omega; the two remaining parts live in ker A_3 and are separated through
/// the section (1/3) B_{2,2} followed by the eta / xi calculus.
template <class S>
struct TorsionDecomposition {
  Tensor<S> input;
  Tensor<S> part_Aprime;
  Tensor<S> part_vec_sym;
  Tensor<S> part_Tprime;
  Tensor<S> part_vec_form;
  S recombination_residual;
};

template <class S>
TorsionDecomposition<S> decompose_torsion(const Tensor<S>& t) {
  detail::require_sig(t, {1, 2}, "decompose_torsion");
  const auto space = t.space();
  const int n = space.n();
  auto big_wedge = antisymmetrize(t, {0, 1, 2});
  Tensor<S> part_form(space, 3, {1, 2});
  Tensor<S> part_T(space, 3, {1, 2});
  if (n >= 2) {
    big_wedge.set_signature({1, 2});
    auto w = c_map(big_wedge);
    w *= Scalar<S>::from_int(1) / Scalar<S>::from_int(n - 1);
    part_form = v_tensor_omega(w);
    part_T = big_wedge - antisymmetrize(part_form, {0, 1, 2});
    part_T.set_signature({1, 2});
  }
  // remaining piece sits in ker A_3
  Tensor<S> k = t - part_T - part_form;
  k.set_signature({1, 2});
  auto x = koszul_B(k);
  x *= Scalar<S>::from_int(1) / Scalar<S>::from_int(3);
  auto xv = xi(phi(x));
  auto part_vsym = koszul_A(xv);
  Tensor<S> rest = x - xv;
  rest.set_signature({2, 1});
  auto part_A = koszul_A(rest);
  Tensor<S> sum = part_A + part_vsym + part_T + part_form;
  S residual = (t - sum).max_abs();
  return {t, part_A, part_vsym, part_T, part_form, residual};
}

struct ProjectorRankCensus {
  int n{0};
  std::size_t rank_a1pi{0};
  std::size_t rank_xiphi{0};
  std::size_t rank_eta{0};
  std::size_t space_dim{0};
};

/// Exact ranks of the three projector factors of S^2V (x) V.
ProjectorRankCensus projector_rank_census(int n);

/// Exact ranks of the four torsion-part projectors on V (x) Lambda^2 V.
std::array<std::size_t, 4> torsion_projector_ranks(int n);

}  // namespace sympten
