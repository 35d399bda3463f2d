#pragma once

#include <cstdint>
#include <random>

namespace benefit {

// Purposes that get their own seed stream so subsystems never perturb each
// other's randomness.
enum class Stream : std::uint64_t {
  Disease = 1,
  Fungus = 2,
  Geometry = 3,
  FitInit = 4,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master ^ (static_cast<std::uint64_t>(stream) << 56)) + index);
}

// mt19937_64 with hand-rolled draws: the standard distributions are
// implementation-defined, these are not.
//   uniform()          = (next >> 11) * 2^-53, in [0, 1)
//   uniform(lo, hi)    = lo + (hi - lo) * uniform()
//   uniform_int(lo,hi) = lo + floor(uniform() * (hi - lo + 1))
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    const int v = lo + static_cast<int>(uniform() * span);
    return v > hi ? hi : v;
  }

  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace benefit
