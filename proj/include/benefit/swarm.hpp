#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "benefit/ecology.hpp"
#include "benefit/genmodel.hpp"
#include "benefit/geometry.hpp"

namespace benefit {

struct SeaweedPlant {
  std::uint64_t id = 0;
  ShapeParams shape;
  double maturity = 0.0;
  double health = 1.0;
  std::uint64_t spawn_tick = 0;
  std::uint64_t disease_seed = 0;
  bool operator==(const SeaweedPlant&) const = default;
};

struct SwarmState {
  std::vector<SeaweedPlant> plants;
  int capacity = 60;
  double spawn_accumulator = 0.0;
  bool extinct = false;
  std::uint64_t next_id = 1;
  bool operator==(const SwarmState&) const = default;
};

struct PriceWeights {
  double w_width = 0.25;
  double w_length = 0.25;
  double w_density = 0.25;
  double w_stipe = 0.25;
  double disease_penalty = 0.5;  // k
  double p_max = 2.0;            // price of a perfect, healthy plant

  void validate() const;
  bool operator==(const PriceWeights&) const = default;
};

struct GrowthParams {
  double g0 = 0.02;  // maturity per second at ei = 1
  double r0 = 0.05;  // plants per second at ei = 1
  bool operator==(const GrowthParams&) const = default;
};

// What a newly spawned plant needs from the outside world.
struct SpawnTraits {
  ShapeParams shape;
  std::uint64_t disease_seed = 0;
};

// Called with the new plant's id.
using SpawnSource = std::function<SpawnTraits(std::uint64_t id)>;

// Advances maturity by g0 * max(ei, 0) * dt and spawns one plant per whole
// unit of the spawn accumulator (units are consumed even at capacity). Nothing
// changes when ei <= 0 or the swarm is extinct.
void growth_step(SwarmState& s, const GrowthParams& params, double ei, double dt, std::uint64_t tick,
                 double swarm_health, const SpawnSource& source);

// Appends a juvenile plant (maturity 0) if below capacity.
bool spawn_plant(SwarmState& s, std::uint64_t tick, double health, const SpawnSource& source);

// p_max * (weighted shape sum) * (1 - k * (1 - health)).
double price_of(const SeaweedPlant& p, const PriceWeights& w);

// Removes the mature plant with the earliest spawn tick (lowest id on ties).
// An empty harvest is legal. A harvest during Crisis that leaves the swarm
// empty (including one that found it empty) sets extinct.
std::optional<SeaweedPlant> harvest(SwarmState& s, Stage stage);

// Frond count for a blade density in [0, 1]: round(3 + 9 * density).
int frond_count(double blade_density);

// Stipe along +y from the origin with length proportional to stipe_length,
// and frond_count fronds fanned from its tip. Each frond is a closed
// leaf-shaped polyline; length scales with blade_length * maturity, width with
// blade_width. Fan jitter is seeded by the plant id.
GeometryDescriptor swarm_geometry(const SeaweedPlant& p);

}  // namespace benefit
