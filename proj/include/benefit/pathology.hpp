#pragma once

#include <cstdint>

#include "benefit/ecology.hpp"
#include "benefit/noise.hpp"

namespace benefit {

struct PathologyConfig {
  int r_min = 2;  // fungi needed at ei = a1
  int r_max = 10;  // fungi needed at ei = -a2
  double t_min = 15.0;  // respawn delay (s) at ei = -a2
  double t_max = 90.0;  // respawn delay (s) at ei = a1
  double infected_health = 0.3;
  double e_min = 0.35;
  double e_max = 0.95;
  double scale_min = 2.0;
  double scale_max = 8.0;

  void validate() const;
  bool operator==(const PathologyConfig&) const = default;
};

// One oomycete at a time; `swarm_health` is broadcast to every plant.
struct PathologyState {
  bool oomycete_present = true;
  int fungi_count = 0;
  int required_fungi = 1;
  double respawn_timer = 0.0;
  double swarm_health = 1.0;
  bool operator==(const PathologyState&) const = default;
};

// Infected swarm at the given EI; the world starts this way.
PathologyState initial_pathology(double ei, const EcoConfig& eco, const PathologyConfig& cfg);

// Linear from (a1 -> r_min) to (-a2 -> r_max), rounded up and clamped.
int required_fungi(double ei, const EcoConfig& eco, const PathologyConfig& cfg);

// Linear from (-a2 -> t_min) to (a1 -> t_max): a worse ecology respawns sooner.
double respawn_delay(double ei, const EcoConfig& eco, const PathologyConfig& cfg);

// One fungi-target token. While infected, health = min(1, fungi / required);
// reaching `required` kills the oomycete and arms the respawn timer. With no
// oomycete present only the fungus count changes.
PathologyState cultivate_fungus(PathologyState st, double ei, const EcoConfig& eco, const PathologyConfig& cfg);

// Counts down the respawn timer while no oomycete is present; on expiry the
// swarm is re-infected at `infected_health`.
PathologyState pathology_tick(PathologyState st, double ei, double dt, const EcoConfig& eco,
                              const PathologyConfig& cfg);

// Healthier swarms get a higher edge (fewer lit cells) and a finer noise
// scale (smaller patches).
DiseaseMaskParams mask_params_from_health(double health, std::uint64_t seed, const PathologyConfig& cfg);

}  // namespace benefit
