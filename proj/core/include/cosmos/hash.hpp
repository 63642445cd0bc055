#pragma once

#include <cstdint>
#include <cstddef>
#include <string>

namespace cosmos {

// FNV-1a, 64 bit. Used for content checksums, seed derivation and run ids.
// Not cryptographic; collisions are acceptable for those purposes.
class Fnv64 {
 public:
  static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ull;
  static constexpr std::uint64_t kPrime = 0x100000001b3ull;

  Fnv64& update(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      state_ ^= p[i];
      state_ *= kPrime;
    }
    return *this;
  }
  Fnv64& update(const std::string& s) { return update(s.data(), s.size()); }
  template <typename T>
  Fnv64& update_value(const T& v) {
    static_assert(std::is_trivially_copyable_v<T>);
    return update(&v, sizeof(T));
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = kOffset;
};

inline std::uint64_t fnv64(const void* data, std::size_t n) {
  return Fnv64{}.update(data, n).digest();
}
inline std::uint64_t fnv64(const std::string& s) { return fnv64(s.data(), s.size()); }

std::string hex64(std::uint64_t v);

// Checksum of a file's contents; throws IoError if unreadable.
std::uint64_t hash_file(const std::string& path);

}  // namespace cosmos
