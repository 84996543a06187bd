#pragma once

#include <array>
#include <optional>
#include <string>

#include "sympten/rational_linalg.hpp"
#include "sympten/symp_map.hpp"

namespace sympten {

/// A perfect matching of the six index positions of Q (x) Q (positions 0..2
/// from the first factor, 3..5 from the second); each pair is contracted
/// against the raised form, oriented lower position first.
struct TracePairing {
  std::array<std::pair<int, int>, 3> pairs;
  std::optional<std::string> canonical_name;

  void validate() const;
};

/// The 15 matchings, pairs sorted, lexicographic order; the four matchings
/// spanning the invariants for n > 1 carry names "r1".."r4".
const std::vector<TracePairing>& all_matchings();

/// Named matching, which = 1..4.
const TracePairing& named_pairing(int which);

/// Full contraction Q_{ijk} Q_{pql} against three raised-form factors wired
/// by the pairing.
template <class S>
S eval_trace(const Tensor<S>& q, const TracePairing& pairing) {
  if (q.order() != 3) throw std::invalid_argument("eval_trace: order-3 tensor expected");
  pairing.validate();
  const auto entries = q.space().omega_inv_entries();
  const int m = q.dim();
  S total = Scalar<S>::from_int(0);
  int vals[6];
  for (const auto& e1 : entries)
    for (const auto& e2 : entries) {
      S w12 = Scalar<S>::from_int(e1.sign * e2.sign);
      for (const auto& e3 : entries) {
        const SympSpace::Entry* es[3] = {&e1, &e2, &e3};
        for (int p = 0; p < 3; ++p) {
          vals[pairing.pairs[static_cast<std::size_t>(p)].first] = es[p]->a;
          vals[pairing.pairs[static_cast<std::size_t>(p)].second] = es[p]->b;
        }
        const int i1[3] = {vals[0], vals[1], vals[2]};
        const int i2[3] = {vals[3], vals[4], vals[5]};
        const S& q1 = q[flatten(i1, m, 3)];
        if (Scalar<S>::is_zero(q1)) continue;
        const S& q2 = q[flatten(i2, m, 3)];
        if (Scalar<S>::is_zero(q2)) continue;
        if (e3.sign > 0)
          total += w12 * q1 * q2;
        else
          total -= w12 * q1 * q2;
      }
    }
  return total;
}

/// The four labeled traces r1..r4.
template <class S>
std::array<S, 4> r_invariants(const Tensor<S>& q) {
  return {eval_trace(q, named_pairing(1)), eval_trace(q, named_pairing(2)),
          eval_trace(q, named_pairing(3)), eval_trace(q, named_pairing(4))};
}

template <class S>
struct UniqueInvariantResult {
  S value;
  std::optional<S> mixed_route;  // mixed-index route, set when skew checked
};

/// r(Q) = Q_{ijk} Q_{pql} w^{ij} w^{kp} w^{ql}.  With the skew flag the
/// mixed-index route Q_{ij}^p Q_{qp}^q w^{ij} is evaluated as an independent
/// path and returned alongside; the two agree identically for skew Q.
template <class S>
UniqueInvariantResult<S> unique_invariant(const Tensor<S>& q, bool skew_in_first_two) {
  if (q.order() != 3) throw std::invalid_argument("unique_invariant: order-3 tensor expected");
  UniqueInvariantResult<S> out{eval_trace(q, named_pairing(2)), std::nullopt};
  if (!skew_in_first_two) return out;
  const int m = q.dim();
  int idx[3], jdx[3];
  for (std::size_t f = 0; f < q.size(); ++f) {
    unflatten(f, m, 3, idx);
    jdx[0] = idx[1];
    jdx[1] = idx[0];
    jdx[2] = idx[2];
    if (q[f] != -q[flatten(jdx, m, 3)])
      throw std::invalid_argument("unique_invariant: tensor is not skew in the first two slots");
  }
  // raise the third index with the inverse form
  std::vector<S> winv_t(static_cast<std::size_t>(m) * m, Scalar<S>::from_int(0));
  for (const auto& e : q.space().omega_inv_entries())
    winv_t[static_cast<std::size_t>(e.b) * m + e.a] = Scalar<S>::from_int(e.sign);
  auto up = mode_apply(q, winv_t, 2);
  std::vector<S> col(static_cast<std::size_t>(m), Scalar<S>::from_int(0));
  for (int p = 0; p < m; ++p) {
    S acc = Scalar<S>::from_int(0);
    for (int a = 0; a < m; ++a) acc += up.at({a, p, a});
    col[static_cast<std::size_t>(p)] = acc;
  }
  S mixed = Scalar<S>::from_int(0);
  for (const auto& e : q.space().omega_inv_entries()) {
    S term = Scalar<S>::from_int(0);
    for (int p = 0; p < m; ++p) term += up.at({e.a, e.b, p}) * col[static_cast<std::size_t>(p)];
    if (e.sign > 0)
      mixed += term;
    else
      mixed -= term;
  }
  out.mixed_route = mixed;
  return out;
}

struct MatchingClassification {
  TracePairing pairing;
  // n > 1: coordinates in the (r1..r4) basis; n = 1: multiple of r1.
  std::optional<std::array<Rational, 4>> in_named_basis;
  std::optional<Rational> multiple_of_r1;
};

struct ClassificationReport {
  int n{0};
  std::size_t span_rank{0};
  std::vector<MatchingClassification> matchings;
  bool pass{false};
};

/// Exact classification of the 15 quadratic matchings over a basis of
/// symmetric products of unit tensors; rank conclusions are proofs at the
/// given n.
ClassificationReport classify_traces(int n);

/// Torsion-like tensor T(X,Y) = omega(X,Y) A + omega(X,W) Y - omega(Y,W) X,
/// lowered; its quadratic invariant equals 2 (2 n^2 - n - 1) omega(A, W).
template <class S>
struct VectorialContraction {
  S value;
  S expected;
  Tensor<S> lowered;
};

template <class S>
VectorialContraction<S> vectorial_torsion_invariant(const Tensor<S>& a, const Tensor<S>& w) {
  if (a.order() != 1 || w.order() != 1 || !(a.space() == w.space()))
    throw std::invalid_argument("vectorial_torsion_invariant: two vectors over one space");
  const auto space = a.space();
  const int m = space.dim();
  Tensor<S> lowered(space, 3, {1, 2});
  auto omega_with = [&](const Tensor<S>& v, int i) {
    S acc = Scalar<S>::from_int(0);
    for (int c = 0; c < m; ++c) {
      int s = space.omega(i, c);
      if (s > 0)
        acc += v[static_cast<std::size_t>(c)];
      else if (s < 0)
        acc -= v[static_cast<std::size_t>(c)];
    }
    return acc;
  };
  std::vector<S> om_iw(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) om_iw[static_cast<std::size_t>(i)] = omega_with(w, i);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        S acc = Scalar<S>::from_int(0);
        for (int h = 0; h < m; ++h) {
          int s = space.omega(h, k);
          if (s == 0) continue;
          S th = Scalar<S>::from_int(space.omega(i, j)) * a[static_cast<std::size_t>(h)];
          if (h == j) th += om_iw[static_cast<std::size_t>(i)];
          if (h == i) th -= om_iw[static_cast<std::size_t>(j)];
          if (s > 0)
            acc += th;
          else
            acc -= th;
        }
        lowered.at({i, j, k}) = acc;
      }
  S omega_aw = Scalar<S>::from_int(0);
  for (int i = 0; i < m; ++i) {
    if (Scalar<S>::is_zero(a[static_cast<std::size_t>(i)])) continue;
    omega_aw += a[static_cast<std::size_t>(i)] * om_iw[static_cast<std::size_t>(i)];
  }
  const int n = space.n();
  S expected = Scalar<S>::from_int(2 * (2 * n * n - n - 1)) * omega_aw;
  S value = eval_trace(lowered, named_pairing(2));
  return {std::move(value), std::move(expected), std::move(lowered)};
}

}  // namespace sympten
