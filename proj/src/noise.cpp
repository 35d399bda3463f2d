#include "benefit/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "benefit/rng.hpp"

namespace benefit {

namespace {

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

double lerp(double a, double b, double t) { return a + t * (b - a); }

double corner(int hash, double dx, double dy) {
  const double gx = (hash & 1) ? -dx : dx;
  const double gy = (hash & 2) ? -dy : dy;
  return gx + gy;
}

void check_resolution(int resolution) {
  if (resolution < 16) throw std::invalid_argument("mask resolution must be >= 16");
}

double cell_coord(int i, double scale, int resolution) {
  return (static_cast<double>(i) + 0.5) * scale / static_cast<double>(resolution);
}

}  // namespace

GradientNoise::GradientNoise(std::uint64_t seed) {
  std::array<std::uint8_t, 256> p{};
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  Rng rng(seed);
  for (int i = 255; i > 0; --i) {
    const int j = rng.uniform_int(0, i);
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  }
  for (std::size_t i = 0; i < 512; ++i) perm_[i] = p[i & 255];
}

double GradientNoise::sample(double x, double y) const {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int xi = static_cast<int>(static_cast<long long>(fx) & 255);
  const int yi = static_cast<int>(static_cast<long long>(fy) & 255);
  const double dx = x - fx;
  const double dy = y - fy;

  const int aa = perm_[perm_[xi] + yi];
  const int ba = perm_[perm_[xi + 1] + yi];
  const int ab = perm_[perm_[xi] + yi + 1];
  const int bb = perm_[perm_[xi + 1] + yi + 1];

  const double u = fade(dx);
  const double v = fade(dy);
  const double bottom = lerp(corner(aa, dx, dy), corner(ba, dx - 1.0, dy), u);
  const double top = lerp(corner(ab, dx, dy - 1.0), corner(bb, dx - 1.0, dy - 1.0), u);
  return lerp(bottom, top, v);
}

double GradientNoise::sample01(double x, double y) const {
  return std::clamp((sample(x, y) + 1.0) * 0.5, 0.0, 1.0);
}

std::vector<double> noise_grid_reference(const DiseaseMaskParams& params, int resolution) {
  check_resolution(resolution);
  const GradientNoise noise(params.seed);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int j = 0; j < resolution; ++j) {
    for (int i = 0; i < resolution; ++i) {
      grid.push_back(noise.sample01(cell_coord(i, params.noise_scale, resolution),
                                    cell_coord(j, params.noise_scale, resolution)));
    }
  }
  return grid;
}

std::vector<double> noise_grid(const DiseaseMaskParams& params, int resolution) {
  check_resolution(resolution);
  const GradientNoise noise(params.seed);
  const auto n = static_cast<std::size_t>(resolution);
  std::vector<double> grid(n * n);
  std::vector<double> coord(n);
  for (int i = 0; i < resolution; ++i) coord[i] = cell_coord(i, params.noise_scale, resolution);

#pragma omp parallel for schedule(static)
  for (int j = 0; j < resolution; ++j) {
    double* row = grid.data() + static_cast<std::size_t>(j) * n;
    for (int i = 0; i < resolution; ++i) row[i] = noise.sample01(coord[i], coord[j]);
  }
  return grid;
}

double disease_mask_fraction_reference(const DiseaseMaskParams& params, int resolution) {
  const auto grid = noise_grid_reference(params, resolution);
  std::size_t lit = 0;
  for (double v : grid) {
    if (v > params.edge) ++lit;
  }
  return static_cast<double>(lit) / static_cast<double>(grid.size());
}

double disease_mask_fraction(const DiseaseMaskParams& params, int resolution) {
  check_resolution(resolution);
  const GradientNoise noise(params.seed);
  std::vector<double> coord(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) coord[i] = cell_coord(i, params.noise_scale, resolution);

  long long lit = 0;
#pragma omp parallel for schedule(static) reduction(+ : lit)
  for (int j = 0; j < resolution; ++j) {
    for (int i = 0; i < resolution; ++i) {
      if (noise.sample01(coord[i], coord[j]) > params.edge) ++lit;
    }
  }
  return static_cast<double>(lit) / (static_cast<double>(resolution) * resolution);
}

}  // namespace benefit
