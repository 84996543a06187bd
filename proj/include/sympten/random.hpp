#pragma once

#include <random>

#include "sympten/tensor_ops.hpp"

namespace sympten {

/// Dense tensor of small random integers, exact in both backends.
template <class S>
Tensor<S> random_tensor(SympSpace space, int order, std::mt19937_64& rng, int lo = -4,
                        int hi = 4) {
  Tensor<S> t(space, order);
  std::uniform_int_distribution<int> d(lo, hi);
  for (std::size_t f = 0; f < t.size(); ++f) t[f] = Scalar<S>::from_int(d(rng));
  return t;
}

/// Random tensor projected onto the given symmetry signature.
template <class S>
Tensor<S> random_sig_tensor(SympSpace space, Signature sig, std::mt19937_64& rng) {
  auto t = random_tensor<S>(space, sig.p + sig.q, rng);
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

}  // namespace sympten
