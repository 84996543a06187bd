#include "sympten/koszul.hpp"

namespace sympten {

namespace {

void sorted_multisets(int m, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  int lo = cur.empty() ? 0 : cur.back();
  for (int i = lo; i < m; ++i) {
    cur.push_back(i);
    sorted_multisets(m, k, cur, out);
    cur.pop_back();
  }
}

void strict_sets(int m, int k, int lo, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = lo; i < m; ++i) {
    cur.push_back(i);
    strict_sets(m, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> signature_basis(int m, Signature sig) {
  std::vector<std::vector<int>> syms, alts;
  std::vector<int> cur;
  if (sig.p == 0) {
    syms.push_back({});
  } else {
    sorted_multisets(m, sig.p, cur, syms);
  }
  cur.clear();
  if (sig.q == 0) {
    alts.push_back({});
  } else {
    strict_sets(m, sig.q, 0, cur, alts);
  }
  std::vector<std::vector<int>> out;
  out.reserve(syms.size() * alts.size());
  for (const auto& s : syms)
    for (const auto& a : alts) {
      std::vector<int> e = s;
      e.insert(e.end(), a.begin(), a.end());
      out.push_back(std::move(e));
    }
  return out;
}

RationalMatrix materialize_map(SympSpace space, Signature in, Signature out,
                               const std::function<TensorR(const TensorR&)>& op) {
  const int m = space.dim();
  const auto bin = signature_basis(m, in);
  const auto bout = signature_basis(m, out);
  RationalMatrix mat(bout.size(), bin.size());
  for (std::size_t c = 0; c < bin.size(); ++c) {
    TensorR img = op(basis_tensor<Rational>(space, in, bin[c]));
    for (std::size_t r = 0; r < bout.size(); ++r)
      mat(r, c) = img.at(std::span<const int>(bout[r].data(), bout[r].size()));
  }
  return mat;
}

ExactnessReport verify_exactness(int l, int n) {
  if (l < 3 || l > 4) throw std::invalid_argument("verify_exactness: l must be 3 or 4");
  if (n < 1 || n > 3) throw std::invalid_argument("verify_exactness: n must be in 1..3");
  SympSpace space(n);
  const int m = space.dim();
  ExactnessReport rep;
  rep.l = l;
  rep.n = n;
  for (int k = 0; k <= l; ++k) {
    Signature sig{l - k, k};
    rep.stages.push_back({{sig.p, sig.q}, signature_basis(m, sig).size()});
  }
  for (int k = 1; k <= l; ++k) {
    Signature in{l - k + 1, k - 1};
    Signature out{l - k, k};
    auto mat = materialize_map(space, in, out,
                               [](const TensorR& t) { return koszul_A(t); });
    rep.ranks.push_back(rational_rank(std::move(mat)));
  }
  rep.left_injective = rep.ranks.front() == rep.stages.front().dim;
  rep.right_surjective = rep.ranks.back() == rep.stages.back().dim;
  rep.pass = rep.left_injective && rep.right_surjective;
  for (int k = 1; k < l; ++k) {
    bool ok = rep.ranks[k - 1] + rep.ranks[k] == rep.stages[k].dim;
    rep.interior_exact.push_back(ok);
    rep.pass = rep.pass && ok;
  }
  return rep;
}

}  // namespace sympten
