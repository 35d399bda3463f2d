#pragma once

// Independent re-derivations used as test oracles. Nothing here calls the
// production code paths it is compared against.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "benefit/genmodel.hpp"

namespace oracle {

// Curve exactly as written in prose: sine rise, cosine fall, negative half-sine.
inline double ei(double c, double a1, double a2, double c1, double c2, double cycle) {
  const double pi = std::numbers::pi;
  if (c <= c1) return a1 * std::sin(pi * c / (2.0 * c1));
  if (c <= c2) return a1 * std::cos(pi * (c - c1) / (2.0 * (c2 - c1)));
  return -a2 * std::sin(pi * (c - c2) / (cycle - c2));
}

// Straightforward layer-by-layer evaluation with explicit matrix indexing.
inline double mlp(const benefit::MlpModel& m, double x) {
  std::vector<double> v{(x - m.input_min) / (m.input_max - m.input_min)};
  for (const auto& layer : m.layers) {
    std::vector<double> next;
    for (int r = 0; r < layer.outputs; ++r) {
      double acc = 0.0;
      for (int c = 0; c < layer.inputs; ++c) acc += layer.weights[r * layer.inputs + c] * v[c];
      acc += layer.bias[r];
      switch (layer.activation) {
        case benefit::Activation::Tanh:
          acc = 1.0 - 2.0 / (std::exp(2.0 * acc) + 1.0);
          break;
        case benefit::Activation::Sigmoid:
          acc = acc >= 0 ? 1.0 / (1.0 + std::exp(-acc)) : std::exp(acc) / (1.0 + std::exp(acc));
          break;
        case benefit::Activation::Identity:
          break;
      }
      next.push_back(acc);
    }
    v = next;
  }
  return v[0];
}

inline double mse(const benefit::MlpModel& m, const benefit::ResponseCurveDataset& d) {
  double s = 0.0;
  for (const auto& [x, y] : d.samples) s += (mlp(m, x) - y) * (mlp(m, x) - y);
  return s / static_cast<double>(d.samples.size());
}

// The documented gradient-noise algorithm, written out from its description.
class Perlin {
 public:
  explicit Perlin(std::uint64_t seed) {
    std::mt19937_64 g(seed);
    int p[256];
    for (int i = 0; i < 256; ++i) p[i] = i;
    for (int i = 255; i >= 1; --i) {
      const double u = static_cast<double>(g() >> 11) / 9007199254740992.0;
      int j = static_cast<int>(u * (i + 1));
      if (j > i) j = i;
      std::swap(p[i], p[j]);
    }
    for (int i = 0; i < 512; ++i) perm_[i] = p[i % 256];
  }

  double raw(double x, double y) const {
    const int X = static_cast<int>(std::floor(x)) & 255;
    const int Y = static_cast<int>(std::floor(y)) & 255;
    const double xf = x - std::floor(x);
    const double yf = y - std::floor(y);
    auto grad = [](int h, double dx, double dy) {
      const double sx = (h & 1) ? -1.0 : 1.0;
      const double sy = (h & 2) ? -1.0 : 1.0;
      return sx * dx + sy * dy;
    };
    auto fade = [](double t) { return 6 * t * t * t * t * t - 15 * t * t * t * t + 10 * t * t * t; };
    const double n00 = grad(perm_[perm_[X] + Y], xf, yf);
    const double n10 = grad(perm_[perm_[X + 1] + Y], xf - 1, yf);
    const double n01 = grad(perm_[perm_[X] + Y + 1], xf, yf - 1);
    const double n11 = grad(perm_[perm_[X + 1] + Y + 1], xf - 1, yf - 1);
    const double u = fade(xf);
    const double v = fade(yf);
    const double nx0 = n00 * (1 - u) + n10 * u;
    const double nx1 = n01 * (1 - u) + n11 * u;
    return nx0 * (1 - v) + nx1 * v;
  }

  double unit(double x, double y) const {
    const double t = (raw(x, y) + 1.0) / 2.0;
    return t < 0 ? 0 : (t > 1 ? 1 : t);
  }

 private:
  std::array<int, 512> perm_{};
};

inline double mask_fraction(std::uint64_t seed, double scale, double edge, int n) {
  const Perlin p(seed);
  int lit = 0;
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      const double x = (col + 0.5) * scale / n;
      const double y = (row + 0.5) * scale / n;
      if (p.unit(x, y) > edge) ++lit;
    }
  }
  return static_cast<double>(lit) / (n * n);
}

}  // namespace oracle
