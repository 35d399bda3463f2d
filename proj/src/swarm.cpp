#include "benefit/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "benefit/errors.hpp"
#include "benefit/rng.hpp"

namespace benefit {

namespace {

constexpr double kStipeUnit = 1.0;
constexpr double kFrondMinLength = 0.15;
constexpr double kFrondLengthUnit = 1.2;
constexpr double kFrondMinWidth = 0.04;
constexpr double kFrondWidthUnit = 0.25;
constexpr double kFanHalfAngle = 60.0;  // degrees either side of vertical
constexpr int kFrondSamples = 6;        // points per frond side

}  // namespace

void PriceWeights::validate() const {
  const double ws[] = {w_width, w_length, w_density, w_stipe};
  double sum = 0.0;
  for (double w : ws) {
    if (!(w >= 0.0)) throw ConfigError("price: weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("price: weights must sum to 1");
  if (!(disease_penalty >= 0.0 && disease_penalty <= 1.0)) throw ConfigError("price: disease_penalty in [0, 1]");
  if (!(p_max >= 0.0)) throw ConfigError("price: p_max must be non-negative");
}

bool spawn_plant(SwarmState& s, std::uint64_t tick, double health, const SpawnSource& source) {
  if (static_cast<int>(s.plants.size()) >= s.capacity) return false;
  const std::uint64_t id = s.next_id++;
  const SpawnTraits traits = source(id);
  s.plants.push_back({id, traits.shape, 0.0, std::clamp(health, 0.0, 1.0), tick, traits.disease_seed});
  return true;
}

void growth_step(SwarmState& s, const GrowthParams& params, double ei, double dt, std::uint64_t tick,
                 double swarm_health, const SpawnSource& source) {
  if (ei <= 0.0 || s.extinct) return;

  const double dm = params.g0 * ei * dt;
  for (auto& p : s.plants) p.maturity = std::min(1.0, p.maturity + dm);

  s.spawn_accumulator += params.r0 * ei * dt;
  while (s.spawn_accumulator >= 1.0) {
    s.spawn_accumulator -= 1.0;
    spawn_plant(s, tick, swarm_health, source);
  }
}

double price_of(const SeaweedPlant& p, const PriceWeights& w) {
  const double base = w.w_width * p.shape.blade_width + w.w_length * p.shape.blade_length +
                      w.w_density * p.shape.blade_density + w.w_stipe * p.shape.stipe_length;
  return w.p_max * base * (1.0 - w.disease_penalty * (1.0 - p.health));
}

std::optional<SeaweedPlant> harvest(SwarmState& s, Stage stage) {
  auto pick = s.plants.end();
  for (auto it = s.plants.begin(); it != s.plants.end(); ++it) {
    if (it->maturity < 1.0) continue;
    if (pick == s.plants.end() || it->spawn_tick < pick->spawn_tick ||
        (it->spawn_tick == pick->spawn_tick && it->id < pick->id)) {
      pick = it;
    }
  }
  std::optional<SeaweedPlant> taken;
  if (pick != s.plants.end()) {
    taken = *pick;
    s.plants.erase(pick);
  }
  if (s.plants.empty() && stage == Stage::Crisis) s.extinct = true;
  return taken;
}

int frond_count(double blade_density) {
  return static_cast<int>(std::lround(3.0 + 9.0 * std::clamp(blade_density, 0.0, 1.0)));
}

GeometryDescriptor swarm_geometry(const SeaweedPlant& p) {
  constexpr double pi = std::numbers::pi;
  GeometryDescriptor g;

  const double stipe = kStipeUnit * p.shape.stipe_length;
  const Point tip{0.0, stipe};
  g.segments.push_back({{0.0, 0.0}, tip, 0.03 + 0.04 * p.shape.blade_width, 0, -1});

  const int n = frond_count(p.shape.blade_density);
  const double length = kFrondMinLength + kFrondLengthUnit * p.shape.blade_length * p.maturity;
  const double width = kFrondMinWidth + kFrondWidthUnit * p.shape.blade_width;

  Rng rng(derive_seed(p.id, Stream::Geometry, 0));
  const double step = 2.0 * kFanHalfAngle / (n - 1);
  for (int k = 0; k < n; ++k) {
    const double jitter = rng.uniform(-0.3, 0.3) * step;
    const double angle = (-kFanHalfAngle + step * k + jitter) * pi / 180.0;
    // Frond axis points up (+y) rotated by `angle` toward +x.
    const double ax = std::sin(angle);
    const double ay = std::cos(angle);
    const double nx = ay;
    const double ny = -ax;

    Polyline frond;
    frond.closed = true;
    for (int side : {1, -1}) {
      for (int i = 0; i <= kFrondSamples; ++i) {
        const int idx = side > 0 ? i : kFrondSamples - i;
        const double t = static_cast<double>(idx) / kFrondSamples;
        const double along = length * t;
        const double half = 0.5 * width * std::sin(pi * t);
        const double off = side * half;
        if (side < 0 && (idx == kFrondSamples || idx == 0)) continue;
        frond.points.push_back({tip.x + ax * along + nx * off, tip.y + ay * along + ny * off});
      }
    }
    g.polylines.push_back(std::move(frond));
  }
  return g;
}

}  // namespace benefit
