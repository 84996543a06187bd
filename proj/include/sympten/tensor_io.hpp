#pragma once

#include <string>

#include "sympten/invariants.hpp"
#include "sympten/irreducible.hpp"
#include "sympten/koszul.hpp"

namespace sympten {

/// Sparse COO tensor format, 1-based indices, exact decimal/fraction value
/// strings: {"n":2,"order":3,"signature":[p,q],"entries":[{"idx":[1,1,3],"val":"1"}]}.
/// signature [0,0] means no declared symmetry; otherwise the symmetry is
/// validated on load.
template <class S>
Tensor<S> tensor_from_json(const std::string& text);

template <class S>
std::string tensor_to_json(const Tensor<S>& t, int indent = 2);

template <class S>
Tensor<S> load_tensor_file(const std::string& path);

/// Decomposition report: the four parts in the sparse format plus the
/// recombination residual and per-part norms (max component and quadratic
/// invariant).
template <class S>
std::string decomposition_to_json(const TorsionDecomposition<S>& d, int indent = 2);

std::string exactness_report_to_json(const ExactnessReport& rep, int indent = 2);
std::string classification_report_to_json(const ClassificationReport& rep, int indent = 2);

}  // namespace sympten
