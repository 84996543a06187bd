#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "sympten/tensor.hpp"

namespace sympten {

/// Outputs smaller than this stay on one thread.
inline constexpr std::int64_t kParallelCutoff = 1 << 12;

enum class OmegaIndex { lower, raise };

namespace detail {

struct SlotPerm {
  std::vector<int> perm;
  int sign;
};

inline std::vector<SlotPerm> slot_perms(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<SlotPerm> out;
  do {
    int sign = 1;
    auto q = p;
    for (int i = 0; i < k; ++i)
      while (q[i] != i) {
        std::swap(q[i], q[q[i]]);
        sign = -sign;
      }
    out.push_back({p, sign});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline void check_slots(const std::vector<int>& slots, int order) {
  if (slots.empty()) throw std::invalid_argument("slot set must be non-empty");
  for (int s : slots)
    if (s < 0 || s >= order) throw std::out_of_range("slot out of range");
  auto sorted = slots;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("repeated slot");
}

template <class S, bool Signed>
Tensor<S> slot_average(const Tensor<S>& t, const std::vector<int>& slots) {
  check_slots(slots, t.order());
  const int m = t.dim();
  const int k = t.order();
  const int ns = static_cast<int>(slots.size());
  const auto perms = slot_perms(ns);
  S inv_count = Scalar<S>::from_int(1);
  inv_count /= Scalar<S>::from_int(static_cast<long>(perms.size()));
  Tensor<S> out(t.space(), k);
  const auto n_out = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (n_out >= kParallelCutoff)
  for (std::int64_t f = 0; f < n_out; ++f) {
    int idx[8], pidx[8];
    unflatten(static_cast<std::size_t>(f), m, k, idx);
    S acc = Scalar<S>::from_int(0);
    for (const auto& sp : perms) {
      for (int i = 0; i < k; ++i) pidx[i] = idx[i];
      for (int i = 0; i < ns; ++i) pidx[slots[i]] = idx[slots[sp.perm[i]]];
      const S& v = t[flatten(pidx, m, k)];
      if constexpr (Signed) {
        if (sp.sign > 0)
          acc += v;
        else
          acc -= v;
      } else {
        acc += v;
      }
    }
    acc *= inv_count;
    out[static_cast<std::size_t>(f)] = acc;
  }
  return out;
}

}  // namespace detail

/// Average of t over all permutations of the given slots; idempotent.
template <class S>
Tensor<S> symmetrize(const Tensor<S>& t, const std::vector<int>& slots) {
  return detail::slot_average<S, false>(t, slots);
}

/// Signed average over all permutations of the given slots; idempotent.
template <class S>
Tensor<S> antisymmetrize(const Tensor<S>& t, const std::vector<int>& slots) {
  return detail::slot_average<S, true>(t, slots);
}

/// Contracts slots (a, b) against omega_{ij} (lower) or its inverse (raise);
/// the result drops both slots and carries no signature.
template <class S>
Tensor<S> contract_omega(const Tensor<S>& t, int slot_a, int slot_b, OmegaIndex mode) {
  const int k = t.order();
  if (slot_a == slot_b) throw std::invalid_argument("contract_omega: equal slots");
  detail::check_slots({slot_a, slot_b}, k);
  const int m = t.dim();
  const auto entries = mode == OmegaIndex::lower ? t.space().omega_entries()
                                                 : t.space().omega_inv_entries();
  Tensor<S> out(t.space(), k - 2);
  const auto n_out = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (n_out >= kParallelCutoff)
  for (std::int64_t f = 0; f < n_out; ++f) {
    int oidx[8], iidx[8];
    unflatten(static_cast<std::size_t>(f), m, k - 2, oidx);
    int src = 0;
    for (int s = 0; s < k; ++s)
      if (s != slot_a && s != slot_b) iidx[s] = oidx[src++];
    S acc = Scalar<S>::from_int(0);
    for (const auto& e : entries) {
      iidx[slot_a] = e.a;
      iidx[slot_b] = e.b;
      const S& v = t[flatten(iidx, m, k)];
      if (e.sign > 0)
        acc += v;
      else
        acc -= v;
    }
    out[static_cast<std::size_t>(f)] = acc;
  }
  return out;
}

/// Applies the matrix g (row-major m x m) to one slot: out_{..j..} = g_{ji} t_{..i..}.
template <class S>
Tensor<S> mode_apply(const Tensor<S>& t, const std::vector<S>& g, int slot) {
  const int m = t.dim();
  const int k = t.order();
  if (static_cast<int>(g.size()) != m * m)
    throw std::invalid_argument("mode_apply: matrix size mismatch");
  detail::check_slots({slot}, k);
  Tensor<S> out(t.space(), k);
  const auto n_out = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (n_out >= kParallelCutoff)
  for (std::int64_t f = 0; f < n_out; ++f) {
    int idx[8];
    unflatten(static_cast<std::size_t>(f), m, k, idx);
    const int j = idx[slot];
    S acc = Scalar<S>::from_int(0);
    for (int i = 0; i < m; ++i) {
      idx[slot] = i;
      acc += g[static_cast<std::size_t>(j) * m + i] * t[flatten(idx, m, k)];
    }
    out[static_cast<std::size_t>(f)] = acc;
  }
  return out;
}

template <class S>
Tensor<S> tensor_product(const Tensor<S>& a, const Tensor<S>& b) {
  if (!(a.space() == b.space())) throw std::invalid_argument("tensor_product: space mismatch");
  Tensor<S> out(a.space(), a.order() + b.order());
  const std::size_t nb = b.size();
  const auto n_out = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (n_out >= kParallelCutoff)
  for (std::int64_t f = 0; f < n_out; ++f) {
    const auto fa = static_cast<std::size_t>(f) / nb;
    const auto fb = static_cast<std::size_t>(f) % nb;
    out[static_cast<std::size_t>(f)] = a[fa] * b[fb];
  }
  return out;
}

/// Projector-normalized symmetric product of basis/general vectors.
template <class S>
Tensor<S> sym_product(const std::vector<Tensor<S>>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("sym_product: empty");
  Tensor<S> t = vectors[0];
  for (std::size_t i = 1; i < vectors.size(); ++i) t = tensor_product(t, vectors[i]);
  std::vector<int> slots(vectors.size());
  std::iota(slots.begin(), slots.end(), 0);
  t = vectors.size() > 1 ? symmetrize(t, slots) : t;
  t.set_signature({static_cast<int>(vectors.size()), 0});
  return t;
}

/// Projector-normalized wedge product.
template <class S>
Tensor<S> wedge(const std::vector<Tensor<S>>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("wedge: empty");
  Tensor<S> t = vectors[0];
  for (std::size_t i = 1; i < vectors.size(); ++i) t = tensor_product(t, vectors[i]);
  std::vector<int> slots(vectors.size());
  std::iota(slots.begin(), slots.end(), 0);
  t = vectors.size() > 1 ? antisymmetrize(t, slots) : t;
  t.set_signature({0, static_cast<int>(vectors.size())});
  return t;
}

template <class S>
Tensor<S> basis_vector(SympSpace space, int i) {
  return Tensor<S>::unit(space, {i});
}

/// v (x) omega with omega the invariant bivector sum_i e_i ^ e_{i+n}.
template <class S>
Tensor<S> v_tensor_omega(const Tensor<S>& v) {
  if (v.order() != 1) throw std::invalid_argument("v_tensor_omega: order-1 input expected");
  const auto space = v.space();
  Tensor<S> om(space, 2, {0, 2});
  const S half = Scalar<S>::from_int(1) / Scalar<S>::from_int(2);
  for (int i = 0; i < space.n(); ++i) {
    om.at({i, i + space.n()}) += half;
    om.at({i + space.n(), i}) -= half;
  }
  auto out = tensor_product(v, om);
  out.set_signature({1, 2});
  return out;
}

}  // namespace sympten
