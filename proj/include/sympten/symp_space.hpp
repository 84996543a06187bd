#pragma once

#include <stdexcept>
#include <vector>

namespace sympten {

/// A symplectic vector space of dimension 2n in the standard basis:
/// omega(e_i, e_{j+n}) = delta_ij, all other basis pairings zero (0-based
/// internally, so omega(i, i+n) = +1 for i < n).  omega_inv is the true
/// matrix inverse, omega * omega_inv = I; for the standard form that is
/// the negative of the omega matrix.
class SympSpace {
 public:
  explicit SympSpace(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("SympSpace: n must be >= 1");
  }

  int n() const { return n_; }
  int dim() const { return 2 * n_; }

  /// omega(e_a, e_b), entries in {-1, 0, 1}.
  int omega(int a, int b) const {
    if (b == a + n_) return 1;
    if (a == b + n_) return -1;
    return 0;
  }

  /// Entry (a, b) of the inverse matrix of omega.
  int omega_inv(int a, int b) const { return -omega(a, b); }

  struct Entry {
    int a, b, sign;
  };

  /// Nonzero entries of omega, row-major order.
  std::vector<Entry> omega_entries() const {
    std::vector<Entry> out;
    out.reserve(dim());
    for (int i = 0; i < n_; ++i) out.push_back({i, i + n_, 1});
    for (int i = 0; i < n_; ++i) out.push_back({i + n_, i, -1});
    return out;
  }

  std::vector<Entry> omega_inv_entries() const {
    auto out = omega_entries();
    for (auto& e : out) e.sign = -e.sign;
    return out;
  }

  friend bool operator==(const SympSpace& a, const SympSpace& b) { return a.n_ == b.n_; }

 private:
  int n_;
};

inline SympSpace standard_space(int n) { return SympSpace(n); }

}  // namespace sympten
