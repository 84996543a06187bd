#pragma once

#include "sympten/tensor_ops.hpp"

namespace sympten::serial {

/// Reference kernels: straightforward single-thread loops, kept for testing
/// the parallel versions and for the benchmark baseline.

template <class S>
Tensor<S> symmetrize(const Tensor<S>& t, const std::vector<int>& slots) {
  detail::check_slots(slots, t.order());
  const int m = t.dim();
  const int k = t.order();
  const int ns = static_cast<int>(slots.size());
  const auto perms = detail::slot_perms(ns);
  S inv_count = Scalar<S>::from_int(1);
  inv_count /= Scalar<S>::from_int(static_cast<long>(perms.size()));
  Tensor<S> out(t.space(), k);
  int idx[8], pidx[8];
  for (std::size_t f = 0; f < out.size(); ++f) {
    unflatten(f, m, k, idx);
    S acc = Scalar<S>::from_int(0);
    for (const auto& sp : perms) {
      for (int i = 0; i < k; ++i) pidx[i] = idx[i];
      for (int i = 0; i < ns; ++i) pidx[slots[i]] = idx[slots[sp.perm[i]]];
      acc += t[flatten(pidx, m, k)];
    }
    out[f] = acc * inv_count;
  }
  return out;
}

template <class S>
Tensor<S> antisymmetrize(const Tensor<S>& t, const std::vector<int>& slots) {
  detail::check_slots(slots, t.order());
  const int m = t.dim();
  const int k = t.order();
  const int ns = static_cast<int>(slots.size());
  const auto perms = detail::slot_perms(ns);
  S inv_count = Scalar<S>::from_int(1);
  inv_count /= Scalar<S>::from_int(static_cast<long>(perms.size()));
  Tensor<S> out(t.space(), k);
  int idx[8], pidx[8];
  for (std::size_t f = 0; f < out.size(); ++f) {
    unflatten(f, m, k, idx);
    S acc = Scalar<S>::from_int(0);
    for (const auto& sp : perms) {
      for (int i = 0; i < k; ++i) pidx[i] = idx[i];
      for (int i = 0; i < ns; ++i) pidx[slots[i]] = idx[slots[sp.perm[i]]];
      if (sp.sign > 0)
        acc += t[flatten(pidx, m, k)];
      else
        acc -= t[flatten(pidx, m, k)];
    }
    out[f] = acc * inv_count;
  }
  return out;
}

template <class S>
Tensor<S> contract_omega(const Tensor<S>& t, int slot_a, int slot_b, OmegaIndex mode) {
  if (slot_a == slot_b) throw std::invalid_argument("contract_omega: equal slots");
  detail::check_slots({slot_a, slot_b}, t.order());
  const int m = t.dim();
  const int k = t.order();
  Tensor<S> out(t.space(), k - 2);
  int oidx[8], iidx[8];
  for (std::size_t f = 0; f < out.size(); ++f) {
    unflatten(f, m, k - 2, oidx);
    int src = 0;
    for (int s = 0; s < k; ++s)
      if (s != slot_a && s != slot_b) iidx[s] = oidx[src++];
    S acc = Scalar<S>::from_int(0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        int w = mode == OmegaIndex::lower ? t.space().omega(a, b) : t.space().omega_inv(a, b);
        if (w == 0) continue;
        iidx[slot_a] = a;
        iidx[slot_b] = b;
        if (w > 0)
          acc += t[flatten(iidx, m, k)];
        else
          acc -= t[flatten(iidx, m, k)];
      }
    out[f] = acc;
  }
  return out;
}

template <class S>
Tensor<S> mode_apply(const Tensor<S>& t, const std::vector<S>& g, int slot) {
  const int m = t.dim();
  const int k = t.order();
  Tensor<S> out(t.space(), k);
  int idx[8];
  for (std::size_t f = 0; f < out.size(); ++f) {
    unflatten(f, m, k, idx);
    const int j = idx[slot];
    S acc = Scalar<S>::from_int(0);
    for (int i = 0; i < m; ++i) {
      idx[slot] = i;
      acc += g[static_cast<std::size_t>(j) * m + i] * t[flatten(idx, m, k)];
    }
    out[f] = acc;
  }
  return out;
}

/// Group action by the definition: (g t)_{j1..jk} = g_{j1 i1} ... g_{jk ik} t_{i1..ik}.
/// Exponential in the order; only for small test sizes.
template <class S>
Tensor<S> act_direct(const std::vector<S>& g, const Tensor<S>& t) {
  const int m = t.dim();
  const int k = t.order();
  Tensor<S> out(t.space(), k, t.signature());
  int jdx[8], idxv[8];
  for (std::size_t f = 0; f < out.size(); ++f) {
    unflatten(f, m, k, jdx);
    S acc = Scalar<S>::from_int(0);
    for (std::size_t fi = 0; fi < t.size(); ++fi) {
      if (Scalar<S>::is_zero(t[fi])) continue;
      unflatten(fi, m, k, idxv);
      S w = t[fi];
      for (int s = 0; s < k; ++s)
        w *= g[static_cast<std::size_t>(jdx[s]) * m + idxv[s]];
      acc += w;
    }
    out[f] = acc;
  }
  return out;
}

}  // namespace sympten::serial
