#pragma once

#include <string>
#include <vector>

#include "sympten/connection_ops.hpp"

namespace sympten {

struct CheckResult {
  std::string name;
  bool pass{false};
  double value{0};      // residual or measured quantity
  double tolerance{0};  // 0 means exact
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Exactness, homotopy identity, A/B annihilation and equivariance.
SuiteReport run_koszul_suite(const std::vector<int>& ns, std::uint64_t seed);
/// The phi/xi/pi/eta/chi/C identities, rank censuses, decomposition checks.
SuiteReport run_projector_suite(const std::vector<int>& ns, std::uint64_t seed);
/// Trace classification, vanishing theorems, dual-route and Sp-invariance.
SuiteReport run_invariant_suite(const std::vector<int>& ns, std::uint64_t seed);
/// Chart-level checks: Tondeur, t-invariant routes, variation, gauge,
/// pushforward, conformal and vectorial torsion.
SuiteReport run_connection_suite(std::uint64_t seed, double tol, int lattice);

// --- builders shared by the suites, the tests and the benchmark ---

/// Chart with the constant standard form on [-1,1]^{2n} and zero base gamma.
std::shared_ptr<const Chart> make_standard_chart(int n);
/// The shipped non-closed example: omega = dx1^dx3 + (1 + x1 x2) dx2^dx4.
std::shared_ptr<const Chart> make_nonclosed_chart();

/// Scalar/vector/cube fields with small random polynomial entries.
ExprField random_polynomial_scalar(int n_vars, std::uint64_t seed, DerivativeSupply supply,
                                   double amplitude = 0.3);
ExprField random_polynomial_vector(int n_vars, std::uint64_t seed, DerivativeSupply supply,
                                   double amplitude = 0.5);
ExprField random_polynomial_cube(int n_vars, std::uint64_t seed, DerivativeSupply supply,
                                 double amplitude = 0.4);

/// Pointwise symplectic matrix field: a product of transvections with
/// polynomial parameters, exact in the group at every point.
ExprField random_symplectic_gauge_field(int n, std::uint64_t seed, DerivativeSupply supply);

/// make_almost_symplectic of a random polynomial base connection.
Connection random_almost_symplectic_connection(std::shared_ptr<const Chart> chart,
                                               std::uint64_t seed);

/// Random ray direction with w(A_X Y, Z) symmetric in (Y, Z), built by
/// raising a polynomial lowered field pointwise.
DirectionFn random_direction(std::shared_ptr<const Chart> chart, std::uint64_t seed);

}  // namespace sympten
