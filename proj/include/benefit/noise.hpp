#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace benefit {

// Seeded 2D lattice gradient noise.
//
// Algorithm (the UI reimplements it bit-for-bit from this description):
//   perm   = [0..255] shuffled by Fisher-Yates, i = 255..1, j = uniform_int(0, i)
//            drawn from Rng(seed), then duplicated to 512 entries.
//   corner hash h = perm[perm[X] + Y] & 3 selects gradient (+-1, +-1):
//            bit 0 negates the x term, bit 1 negates the y term.
//   fade(t) = t^3 (t (6t - 15) + 10), bilinear blend of the four corner dots.
// Raw values lie in [-1, 1]; sample01 maps them to [0, 1].
class GradientNoise {
 public:
  explicit GradientNoise(std::uint64_t seed);

  double sample(double x, double y) const;
  double sample01(double x, double y) const;

 private:
  std::array<std::uint8_t, 512> perm_{};
};

struct DiseaseMaskParams {
  double edge = 0.5;         // step threshold in [0, 1]
  double noise_scale = 4.0;  // lattice cells per blade length
  std::uint64_t seed = 0;
  bool operator==(const DiseaseMaskParams&) const = default;
};

// Cell (i, j) of an n x n mask samples the noise at
// ((i + 0.5) * scale / n, (j + 0.5) * scale / n); row-major, j outer.
std::vector<double> noise_grid(const DiseaseMaskParams& params, int resolution);
std::vector<double> noise_grid_reference(const DiseaseMaskParams& params, int resolution);

// Fraction of cells whose normalised noise is strictly above `edge`, i.e.
// the glowing-patch area. The plain version is OpenMP-parallel; the
// reference version is the serial loop kept for tests and benchmarks.
// Both throw std::invalid_argument when resolution < 16.
double disease_mask_fraction(const DiseaseMaskParams& params, int resolution);
double disease_mask_fraction_reference(const DiseaseMaskParams& params, int resolution);

}  // namespace benefit
