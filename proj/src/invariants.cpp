#include "sympten/invariants.hpp"

#include <algorithm>
#include <map>

namespace sympten {

void TracePairing::validate() const {
  bool seen[6] = {};
  for (const auto& [a, b] : pairs) {
    if (a < 0 || a > 5 || b < 0 || b > 5 || a == b)
      throw std::invalid_argument("TracePairing: positions must be distinct and in 0..5");
    if (seen[a] || seen[b]) throw std::invalid_argument("TracePairing: position reused");
    seen[a] = seen[b] = true;
  }
}

namespace {

std::vector<TracePairing> build_matchings() {
  std::vector<TracePairing> out;
  std::vector<std::pair<int, int>> acc;
  std::vector<int> avail{0, 1, 2, 3, 4, 5};
  auto rec = [&](auto&& self, std::vector<int> rest) -> void {
    if (rest.empty()) {
      TracePairing tp;
      std::copy_n(acc.begin(), 3, tp.pairs.begin());
      out.push_back(tp);
      return;
    }
    int a = rest.front();
    for (std::size_t i = 1; i < rest.size(); ++i) {
      int b = rest[i];
      std::vector<int> next;
      for (int v : rest)
        if (v != a && v != b) next.push_back(v);
      acc.emplace_back(a, b);
      self(self, next);
      acc.pop_back();
    }
  };
  rec(rec, avail);
  std::sort(out.begin(), out.end(),
            [](const TracePairing& x, const TracePairing& y) { return x.pairs < y.pairs; });
  const std::array<std::pair<int, int>, 3> named[4] = {
      {{{0, 2}, {1, 3}, {4, 5}}},
      {{{0, 1}, {2, 3}, {4, 5}}},
      {{{0, 2}, {1, 5}, {3, 4}}},
      {{{0, 4}, {1, 5}, {2, 3}}},
  };
  for (auto& tp : out)
    for (int k = 0; k < 4; ++k)
      if (tp.pairs == named[k]) tp.canonical_name = "r" + std::to_string(k + 1);
  return out;
}

using CoeffKey = std::pair<std::size_t, std::size_t>;  // flat unit-tensor pair, ordered
using CoeffVec = std::map<CoeffKey, Rational>;

CoeffVec coefficient_vector(const SympSpace& space, const TracePairing& tp) {
  const int m = space.dim();
  const auto entries = space.omega_inv_entries();
  CoeffVec out;
  int vals[6];
  for (const auto& e1 : entries)
    for (const auto& e2 : entries)
      for (const auto& e3 : entries) {
        const SympSpace::Entry* es[3] = {&e1, &e2, &e3};
        for (int p = 0; p < 3; ++p) {
          vals[tp.pairs[static_cast<std::size_t>(p)].first] = es[p]->a;
          vals[tp.pairs[static_cast<std::size_t>(p)].second] = es[p]->b;
        }
        const int i1[3] = {vals[0], vals[1], vals[2]};
        const int i2[3] = {vals[3], vals[4], vals[5]};
        std::size_t f1 = flatten(i1, m, 3), f2 = flatten(i2, m, 3);
        CoeffKey key = f1 <= f2 ? CoeffKey{f1, f2} : CoeffKey{f2, f1};
        Rational w(e1.sign * e2.sign * e3.sign);
        auto it = out.find(key);
        if (it == out.end())
          out.emplace(key, w);
        else {
          it->second += w;
          if (sgn(it->second) == 0) out.erase(it);
        }
      }
  return out;
}

}  // namespace

const std::vector<TracePairing>& all_matchings() {
  static const std::vector<TracePairing> table = build_matchings();
  return table;
}

const TracePairing& named_pairing(int which) {
  if (which < 1 || which > 4) throw std::invalid_argument("named_pairing: 1..4");
  for (const auto& tp : all_matchings())
    if (tp.canonical_name && *tp.canonical_name == "r" + std::to_string(which)) return tp;
  throw std::logic_error("named_pairing: table broken");
}

ClassificationReport classify_traces(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("classify_traces: n must be in 1..3");
  SympSpace space(n);
  const auto& ms = all_matchings();
  std::vector<CoeffVec> vecs;
  vecs.reserve(ms.size());
  for (const auto& tp : ms) vecs.push_back(coefficient_vector(space, tp));

  std::map<CoeffKey, std::size_t> col;
  for (const auto& v : vecs)
    for (const auto& [k, w] : v) col.emplace(k, col.size());

  RationalMatrix span(ms.size(), col.size());
  for (std::size_t r = 0; r < vecs.size(); ++r)
    for (const auto& [k, w] : vecs[r]) span(r, col.at(k)) = w;
  ClassificationReport rep;
  rep.n = n;
  rep.span_rank = rational_rank(span);

  if (n == 1) {
    // everything collapses onto multiples of r1
    const CoeffVec* base = nullptr;
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (ms[i].canonical_name && *ms[i].canonical_name == "r1") base = &vecs[i];
    bool all_ok = true;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      MatchingClassification mc{ms[i], std::nullopt, std::nullopt};
      std::optional<Rational> lam;
      bool ok = true;
      // candidate multiple from any shared key
      for (const auto& [k, w] : vecs[i]) {
        auto it = base->find(k);
        if (it == base->end()) {
          ok = false;
          break;
        }
        Rational cand = w / it->second;
        if (!lam)
          lam = cand;
        else if (*lam != cand) {
          ok = false;
          break;
        }
      }
      if (ok && vecs[i].empty()) lam = Rational(0);
      if (ok && lam) {
        for (const auto& [k, w] : *base)
          if (vecs[i].find(k) == vecs[i].end() && sgn(*lam) != 0) {
            ok = false;
            break;
          }
      }
      if (ok)
        mc.multiple_of_r1 = lam.value_or(Rational(0));
      else
        all_ok = false;
      rep.matchings.push_back(std::move(mc));
    }
    rep.pass = all_ok && rep.span_rank == 1;
    return rep;
  }

  // express every matching in the r1..r4 basis
  std::array<const CoeffVec*, 4> basis{};
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (ms[i].canonical_name) {
      int k = (*ms[i].canonical_name)[1] - '1';
      basis[static_cast<std::size_t>(k)] = &vecs[i];
    }
  RationalMatrix a(col.size(), 4);
  for (std::size_t k = 0; k < 4; ++k)
    for (const auto& [key, w] : *basis[k]) a(col.at(key), k) = w;
  bool all_ok = true;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::vector<Rational> b(col.size(), Rational(0));
    for (const auto& [key, w] : vecs[i]) b[col.at(key)] = w;
    auto sol = rational_solve(a, std::move(b));
    MatchingClassification mc{ms[i], std::nullopt, std::nullopt};
    if (sol) {
      std::array<Rational, 4> arr;
      std::copy_n(sol->begin(), 4, arr.begin());
      mc.in_named_basis = arr;
    } else {
      all_ok = false;
    }
    rep.matchings.push_back(std::move(mc));
  }
  rep.pass = all_ok && rep.span_rank == 4;
  return rep;
}

}  // namespace sympten
