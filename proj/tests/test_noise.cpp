#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "benefit/noise.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace benefit;

TEST_CASE("noise matches an independent implementation of the documented algorithm") {
  gen::Gen g(31);
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 0xdeadbeefull, 18446744073709551615ull}) {
    const GradientNoise noise(seed);
    const oracle::Perlin ref(seed);
    for (int k = 0; k < 2000; ++k) {
      const double x = g.real(-300.0, 300.0);
      const double y = g.real(-300.0, 300.0);
      CHECK(std::abs(noise.sample(x, y) - ref.raw(x, y)) < 1e-12);
    }
  }
}

TEST_CASE("noise is zero on lattice points and bounded") {
  const GradientNoise noise(9);
  gen::Gen g(3);
  for (int i = -5; i < 5; ++i) {
    for (int j = -5; j < 5; ++j) CHECK(noise.sample(i, j) == 0.0);
  }
  for (int k = 0; k < 20000; ++k) {
    const double v = noise.sample(g.real(0, 64), g.real(0, 64));
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
    const double u = noise.sample01(g.real(0, 64), g.real(0, 64));
    CHECK(u >= 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("different seeds give different fields") {
  const GradientNoise a(1);
  const GradientNoise b(2);
  int differ = 0;
  for (int k = 0; k < 100; ++k) differ += a.sample(k * 0.37, k * 0.61) != b.sample(k * 0.37, k * 0.61);
  CHECK(differ > 90);
}

TEST_CASE("parallel and serial grids are identical") {
  gen::Gen g(77);
  for (int trial = 0; trial < 20; ++trial) {
    const DiseaseMaskParams p{g.real(0, 1), g.real(0.5, 12), g.bits()};
    const int n = g.integer(16, 90);
    CHECK(noise_grid(p, n) == noise_grid_reference(p, n));
    CHECK(disease_mask_fraction(p, n) == disease_mask_fraction_reference(p, n));
  }
}

TEST_CASE("mask fraction equals an independent re-evaluation") {
  for (std::uint64_t seed : {3ull, 1234567ull}) {
    for (double scale : {2.0, 5.0, 8.0}) {
      const DiseaseMaskParams p{0.5, scale, seed};
      CHECK(disease_mask_fraction(p, 64) == oracle::mask_fraction(seed, scale, 0.5, 64));
    }
  }
}

TEST_CASE("mask fraction at the threshold extremes") {
  CHECK(disease_mask_fraction({1.0, 4.0, 5}, 64) == 0.0);
  CHECK(disease_mask_fraction({0.0, 4.0, 5}, 64) >= 0.99);
}

TEST_CASE("mask fraction is non-increasing in edge") {
  for (std::uint64_t seed : {1ull, 99ull, 31337ull}) {
    double prev = 2.0;
    for (int k = 0; k < 50; ++k) {
      const double f = disease_mask_fraction({k / 49.0, 5.0, seed}, 64);
      CHECK(f <= prev);
      prev = f;
    }
  }
}

TEST_CASE("grid layout: row-major with rows along y") {
  const DiseaseMaskParams p{0.5, 3.0, 8};
  const auto grid = noise_grid_reference(p, 16);
  const GradientNoise noise(8);
  CHECK(grid[2 * 16 + 5] == noise.sample01((5 + 0.5) * 3.0 / 16, (2 + 0.5) * 3.0 / 16));
}

TEST_CASE("resolution below 16 is rejected") {
  CHECK_THROWS_AS(disease_mask_fraction({0.5, 4.0, 1}, 15), std::invalid_argument);
  CHECK_THROWS_AS(disease_mask_fraction_reference({0.5, 4.0, 1}, 8), std::invalid_argument);
  CHECK_THROWS_AS(noise_grid({0.5, 4.0, 1}, 0), std::invalid_argument);
}
