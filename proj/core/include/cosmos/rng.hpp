#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "cosmos/hash.hpp"

namespace cosmos {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

// xoshiro256** with hand-rolled distributions. std::mt19937 would do for the
// engine, but the standard distributions are implementation-defined and we
// need byte-stable streams across stdlib versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = detail::splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Modulo bias is irrelevant at our scales.
  std::uint64_t uniform_int(std::uint64_t n) { return n ? next_u64() % n : 0; }

  // Standard normal via Box-Muller (no cached spare, keeps the stream simple).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

// Deterministic sub-stream seeds: derive(seed, "phantom", i) etc. Order of the
// tag arguments matters, which is exactly what we want.
inline std::uint64_t derive_seed(std::uint64_t base) { return base; }

template <typename T, typename... Rest>
std::uint64_t derive_seed(std::uint64_t base, const T& tag, Rest... rest) {
  Fnv64 h;
  h.update_value(base);
  if constexpr (std::is_convertible_v<T, std::string>) {
    h.update(std::string(tag));
  } else {
    h.update_value(tag);
  }
  return derive_seed(h.digest(), rest...);
}

}  // namespace cosmos
