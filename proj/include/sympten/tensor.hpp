#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sympten/rational.hpp"
#include "sympten/symp_space.hpp"

namespace sympten {

/// Symmetry tag: slots [0, p) symmetric among themselves, slots [p, p+q)
/// antisymmetric among themselves.  (0, 0) means no declared symmetry.
struct Signature {
  int p{0};
  int q{0};
  bool is_none() const { return p == 0 && q == 0; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

inline std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

inline void unflatten(std::size_t flat, int m, int order, int* idx) {
  for (int k = order - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % m);
    flat /= m;
  }
}

inline std::size_t flatten(const int* idx, int m, int order) {
  std::size_t f = 0;
  for (int k = 0; k < order; ++k) f = f * m + static_cast<std::size_t>(idx[k]);
  return f;
}

/// Dense tensor of components over a SympSpace, order up to 4 in practice.
template <class S>
class Tensor {
 public:
  Tensor(SympSpace space, int order, Signature sig = {})
      : space_(space), order_(order), sig_(sig), data_(ipow(space.dim(), order)) {
    if (order < 0 || order > 8) throw std::invalid_argument("Tensor: unsupported order");
    if (!sig_.is_none() && sig_.p + sig_.q != order_)
      throw std::invalid_argument("Tensor: signature does not match order");
  }

  static Tensor unit(SympSpace space, std::span<const int> idx, Signature sig = {}) {
    Tensor t(space, static_cast<int>(idx.size()), sig);
    t.at(idx) = Scalar<S>::from_int(1);
    return t;
  }
  static Tensor unit(SympSpace space, std::initializer_list<int> idx, Signature sig = {}) {
    return unit(space, std::span<const int>(idx.begin(), idx.size()), sig);
  }

  const SympSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  int order() const { return order_; }
  Signature signature() const { return sig_; }
  void set_signature(Signature sig) {
    if (!sig.is_none() && sig.p + sig.q != order_)
      throw std::invalid_argument("set_signature: mismatch with order");
    sig_ = sig;
  }

  std::size_t size() const { return data_.size(); }
  S& operator[](std::size_t flat) { return data_[flat]; }
  const S& operator[](std::size_t flat) const { return data_[flat]; }

  S& at(std::span<const int> idx) { return data_[check_flat(idx)]; }
  const S& at(std::span<const int> idx) const { return data_[check_flat(idx)]; }
  S& at(std::initializer_list<int> idx) {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }
  const S& at(std::initializer_list<int> idx) const {
    return at(std::span<const int>(idx.begin(), idx.size()));
  }

  Tensor& operator+=(const Tensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Tensor& operator*=(const S& f) {
    for (auto& v : data_) v *= f;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const S& f) { return a *= f; }
  friend Tensor operator*(const S& f, Tensor a) { return a *= f; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!Scalar<S>::is_zero(v)) return false;
    return true;
  }

  S max_abs() const {
    S best = Scalar<S>::from_int(0);
    for (const auto& v : data_) {
      S a = Scalar<S>::abs(v);
      if (best < a) best = a;
    }
    return best;
  }

  /// Exhaustive slot-swap check of the declared signature.
  bool signature_holds() const {
    if (sig_.is_none()) return true;
    const int m = dim();
    std::vector<int> idx(order_), jdx(order_);
    for (std::size_t f = 0; f < size(); ++f) {
      unflatten(f, m, order_, idx.data());
      for (int a = 0; a < sig_.p; ++a)
        for (int b = a + 1; b < sig_.p; ++b) {
          jdx = idx;
          std::swap(jdx[a], jdx[b]);
          if (data_[f] != data_[flatten(jdx.data(), m, order_)]) return false;
        }
      for (int a = sig_.p; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b) {
          jdx = idx;
          std::swap(jdx[a], jdx[b]);
          if (data_[f] != -data_[flatten(jdx.data(), m, order_)]) return false;
        }
    }
    return true;
  }

 private:
  std::size_t check_flat(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != order_)
      throw std::invalid_argument("Tensor::at: wrong number of indices");
    for (int v : idx)
      if (v < 0 || v >= dim()) throw std::out_of_range("Tensor::at: index out of range");
    return flatten(idx.data(), dim(), order_);
  }
  void check_same_shape(const Tensor& o) const {
    if (!(space_ == o.space_) || order_ != o.order_)
      throw std::invalid_argument("Tensor: shape mismatch");
  }

  SympSpace space_;
  int order_;
  Signature sig_;
  std::vector<S> data_;
};

using TensorR = Tensor<Rational>;
using TensorD = Tensor<double>;

}  // namespace sympten
