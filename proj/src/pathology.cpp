#include "benefit/pathology.hpp"

#include <algorithm>
#include <cmath>

#include "benefit/errors.hpp"

namespace benefit {

namespace {

// Position of ei within [-a2, a1], 0 at the trough and 1 at the peak.
double ei_position(double ei, const EcoConfig& eco) {
  return (std::clamp(ei, -eco.a2, eco.a1) + eco.a2) / (eco.a1 + eco.a2);
}

}  // namespace

void PathologyConfig::validate() const {
  if (r_min < 1 || r_max < r_min) throw ConfigError("pathology: require 1 <= r_min <= r_max");
  if (!(t_min > 0.0) || t_max < t_min) throw ConfigError("pathology: require 0 < t_min <= t_max");
  if (!(infected_health >= 0.0 && infected_health <= 1.0)) throw ConfigError("pathology: infected_health in [0, 1]");
  if (!(0.0 <= e_min && e_min <= e_max && e_max <= 1.0)) throw ConfigError("pathology: require 0 <= e_min <= e_max <= 1");
  if (!(scale_min > 0.0) || scale_max < scale_min) throw ConfigError("pathology: require 0 < scale_min <= scale_max");
}

PathologyState initial_pathology(double ei, const EcoConfig& eco, const PathologyConfig& cfg) {
  PathologyState st;
  st.oomycete_present = true;
  st.fungi_count = 0;
  st.required_fungi = required_fungi(ei, eco, cfg);
  st.respawn_timer = 0.0;
  st.swarm_health = cfg.infected_health;
  return st;
}

int required_fungi(double ei, const EcoConfig& eco, const PathologyConfig& cfg) {
  const double raw = cfg.r_min + (cfg.r_max - cfg.r_min) * (1.0 - ei_position(ei, eco));
  // Absorb representation error so exact integers are not bumped up.
  const int n = static_cast<int>(std::ceil(raw - 1e-9));
  return std::clamp(n, cfg.r_min, cfg.r_max);
}

double respawn_delay(double ei, const EcoConfig& eco, const PathologyConfig& cfg) {
  return cfg.t_min + (cfg.t_max - cfg.t_min) * ei_position(ei, eco);
}

PathologyState cultivate_fungus(PathologyState st, double ei, const EcoConfig& eco, const PathologyConfig& cfg) {
  st.fungi_count += 1;
  if (!st.oomycete_present) return st;

  st.required_fungi = required_fungi(ei, eco, cfg);
  if (st.fungi_count >= st.required_fungi) {
    st.oomycete_present = false;
    st.swarm_health = 1.0;
    st.fungi_count = 0;
    st.respawn_timer = respawn_delay(ei, eco, cfg);
    return st;
  }
  st.swarm_health = std::min(1.0, static_cast<double>(st.fungi_count) / st.required_fungi);
  return st;
}

PathologyState pathology_tick(PathologyState st, double ei, double dt, const EcoConfig& eco,
                              const PathologyConfig& cfg) {
  if (st.oomycete_present) return st;
  st.respawn_timer -= dt;
  if (st.respawn_timer <= 0.0) {
    st.oomycete_present = true;
    st.respawn_timer = 0.0;
    st.required_fungi = required_fungi(ei, eco, cfg);
    st.swarm_health = cfg.infected_health;
    st.fungi_count = 0;
  }
  return st;
}

DiseaseMaskParams mask_params_from_health(double health, std::uint64_t seed, const PathologyConfig& cfg) {
  const double h = std::clamp(health, 0.0, 1.0);
  return {cfg.e_min + (cfg.e_max - cfg.e_min) * h, cfg.scale_min + (cfg.scale_max - cfg.scale_min) * h, seed};
}

}  // namespace benefit
