#pragma once

#include <functional>
#include <utility>

#include "sympten/rational_linalg.hpp"
#include "sympten/tensor_ops.hpp"

namespace sympten {

/// Identifies the space S^pV (x) Lambda^qV inside a Koszul sequence.
struct KoszulSlot {
  int p{0};
  int q{0};
};

namespace detail {

template <class S>
Signature require_signature(const Tensor<S>& t, const char* who) {
  Signature sig = t.signature();
  if (sig.is_none() && t.order() != 0)
    throw std::invalid_argument(std::string(who) + ": input must carry a (p,q) signature");
  return sig;
}

}  // namespace detail

/// A_{p,q}: S^pV (x) Lambda^{q-1}V -> S^{p-1}V (x) Lambda^qV, the map that
/// moves each symmetric factor into the wedge; identically zero when p = 0.
template <class S>
Tensor<S> koszul_A(const Tensor<S>& t) {
  const Signature in = detail::require_signature(t, "koszul_A");
  const int p = in.p, q = in.q + 1;
  const int m = t.dim();
  if (p == 0) return Tensor<S>(t.space(), t.order(), in);  // trivial target space
  Tensor<S> out(t.space(), t.order(), Signature{p - 1, q});
  const S coeff = Scalar<S>::from_int(p) / Scalar<S>::from_int(q);
  const auto n_out = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (n_out >= kParallelCutoff)
  for (std::int64_t f = 0; f < n_out; ++f) {
    int idx[8], src[8];
    unflatten(static_cast<std::size_t>(f), m, t.order(), idx);
    // idx = (a_0..a_{p-2}, b_0..b_{q-1})
    S acc = Scalar<S>::from_int(0);
    for (int j = 0; j < q; ++j) {
      for (int s = 0; s < p - 1; ++s) src[s] = idx[s];
      src[p - 1] = idx[p - 1 + j];
      int w = p;
      for (int s = 0; s < q; ++s)
        if (s != j) src[w++] = idx[p - 1 + s];
      if ((q - 1 - j) % 2 == 0)
        acc += t[flatten(src, m, t.order())];
      else
        acc -= t[flatten(src, m, t.order())];
    }
    out[static_cast<std::size_t>(f)] = acc * coeff;
  }
  return out;
}

/// B_{p,q}: S^{p-1}V (x) Lambda^qV -> S^pV (x) Lambda^{q-1}V, the dual map
/// with alternating signs; identically zero when q = 0.
template <class S>
Tensor<S> koszul_B(const Tensor<S>& t) {
  const Signature in = detail::require_signature(t, "koszul_B");
  const int p = in.p + 1, q = in.q;
  const int m = t.dim();
  if (q == 0) return Tensor<S>(t.space(), t.order(), in);  // trivial target space
  Tensor<S> out(t.space(), t.order(), Signature{p, q - 1});
  S coeff = Scalar<S>::from_int(-q);
  coeff /= Scalar<S>::from_int(p);
  const auto n_out = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (n_out >= kParallelCutoff)
  for (std::int64_t f = 0; f < n_out; ++f) {
    int idx[8], src[8];
    unflatten(static_cast<std::size_t>(f), m, t.order(), idx);
    // idx = (a_0..a_{p-1}, b_0..b_{q-2})
    S acc = Scalar<S>::from_int(0);
    for (int j = 0; j < p; ++j) {
      int w = 0;
      for (int s = 0; s < p; ++s)
        if (s != j) src[w++] = idx[s];
      src[p - 1] = idx[j];
      for (int s = 0; s < q - 1; ++s) src[p + s] = idx[p + s];
      acc += t[flatten(src, m, t.order())];
    }
    out[static_cast<std::size_t>(f)] = acc * coeff;
  }
  return out;
}

/// Canonical basis of S^pV (x) Lambda^qV: sorted multisets paired with
/// strictly increasing index sets.
std::vector<std::vector<int>> signature_basis(int m, Signature sig);

template <class S>
Tensor<S> basis_tensor(SympSpace space, Signature sig, const std::vector<int>& labels) {
  Tensor<S> t = Tensor<S>::unit(space, labels);
  if (sig.p > 1) {
    std::vector<int> slots(sig.p);
    std::iota(slots.begin(), slots.end(), 0);
    t = symmetrize(t, slots);
  }
  if (sig.q > 1) {
    std::vector<int> slots(sig.q);
    std::iota(slots.begin(), slots.end(), sig.p);
    t = antisymmetrize(t, slots);
  }
  t.set_signature(sig);
  return t;
}

/// Matrix of a linear map between signature subspaces; rows read component
/// values at the canonical index positions (an isomorphism on the subspace,
/// so ranks are faithful).
RationalMatrix materialize_map(SympSpace space, Signature in, Signature out,
                               const std::function<TensorR(const TensorR&)>& op);

struct ExactnessStage {
  KoszulSlot slot;
  std::size_t dim{0};
};

struct ExactnessReport {
  int l{0};
  int n{0};
  std::vector<ExactnessStage> stages;   // l + 1 spaces
  std::vector<std::size_t> ranks;       // l maps
  bool left_injective{false};
  bool right_surjective{false};
  std::vector<bool> interior_exact;     // l - 1 interior stages
  bool pass{false};
};

/// Materializes every A map of the length-l Koszul sequence over exact
/// rationals and certifies image = kernel at each stage.
ExactnessReport verify_exactness(int l, int n);

}  // namespace sympten
