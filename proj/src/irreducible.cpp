#include "sympten/irreducible.hpp"

namespace sympten {

ProjectorRankCensus projector_rank_census(int n) {
  SympSpace space(n);
  const Signature sig{2, 1};
  ProjectorRankCensus out;
  out.n = n;
  out.space_dim = signature_basis(space.dim(), sig).size();
  out.rank_a1pi = rational_rank(
      materialize_map(space, sig, sig, [](const TensorR& t) { return koszul_A(pi_map(t)); }));
  out.rank_xiphi = rational_rank(
      materialize_map(space, sig, sig, [](const TensorR& t) { return xi(phi(t)); }));
  out.rank_eta =
      rational_rank(materialize_map(space, sig, sig, [](const TensorR& t) { return eta(t); }));
  return out;
}

std::array<std::size_t, 4> torsion_projector_ranks(int n) {
  SympSpace space(n);
  const Signature sig{1, 2};
  std::array<std::size_t, 4> out{};
  for (int part = 0; part < 4; ++part) {
    auto mat = materialize_map(space, sig, sig, [part](const TensorR& t) {
      auto d = decompose_torsion(t);
      switch (part) {
        case 0: return d.part_Aprime;
        case 1: return d.part_vec_sym;
        case 2: return d.part_Tprime;
        default: return d.part_vec_form;
      }
    });
    out[static_cast<std::size_t>(part)] = rational_rank(std::move(mat));
  }
  return out;
}

}  // namespace sympten
