#pragma once

#include <bit>
#include <cstdint>
#include <string_view>

namespace benefit {

// 64-bit FNV-1a. Integers and doubles are fed as little-endian bytes so the
// value does not depend on host byte order.
class Fnv1a {
 public:
  void add_byte(std::uint8_t b) noexcept {
    state_ ^= b;
    state_ *= 0x00000100000001b3ull;
  }

  void add(std::uint64_t v) noexcept {
    for (int i = 0; i < 8; ++i) add_byte(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void add(double v) noexcept { add(std::bit_cast<std::uint64_t>(v)); }

  void add(std::string_view s) noexcept {
    for (char c : s) add_byte(static_cast<std::uint8_t>(c));
  }

  std::uint64_t value() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

inline std::uint64_t fnv1a(std::string_view s) noexcept {
  Fnv1a h;
  h.add(s);
  return h.value();
}

}  // namespace benefit
