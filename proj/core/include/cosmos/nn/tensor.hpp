#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "cosmos/error.hpp"
#include "cosmos/hash.hpp"

namespace cosmos::nn {

// Dense row-major tensor. Shapes follow the (batch, channel, spatial...)
// convention used by every op in this engine.
template <class T>
struct TensorT {
  std::vector<int> shape;
  std::vector<T> v;

  TensorT() = default;
  explicit TensorT(std::vector<int> s) : shape(std::move(s)), v(numel_of(shape), T(0)) {}
  TensorT(std::vector<int> s, T fill) : shape(std::move(s)), v(numel_of(shape), fill) {}

  static std::size_t numel_of(const std::vector<int>& s) {
    std::size_t n = 1;
    for (int d : s) n *= static_cast<std::size_t>(d);
    return n;
  }
  std::size_t numel() const { return v.size(); }
  int dim(int i) const { return shape[static_cast<std::size_t>(i)]; }
  T* data() { return v.data(); }
  const T* data() const { return v.data(); }

  void zero() { std::fill(v.begin(), v.end(), T(0)); }

  std::uint64_t checksum() const {
    Fnv64 h;
    h.update(v.data(), v.size() * sizeof(T));
    return h.digest();
  }
};

using TensorF = TensorT<float>;
using TensorD = TensorT<double>;

template <class T>
bool same_shape(const TensorT<T>& a, const TensorT<T>& b) {
  return a.shape == b.shape;
}

}  // namespace cosmos::nn
