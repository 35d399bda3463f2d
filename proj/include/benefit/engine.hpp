#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "benefit/economy.hpp"
#include "benefit/ecology.hpp"
#include "benefit/fungigen.hpp"
#include "benefit/genmodel.hpp"
#include "benefit/pathology.hpp"
#include "benefit/swarm.hpp"

namespace benefit {

enum class Target { Seaweed, Fungi };

std::string_view target_label(Target t) noexcept;
Target target_from_label(std::string_view label);  // throws ValidationError

enum class EventKind { InsertToken, SwitchTarget, Reset };

std::string_view event_kind_label(EventKind k) noexcept;
EventKind event_kind_from_label(std::string_view label);  // throws ValidationError

// An insert_token without a target goes to the state's current target.
struct SimEvent {
  std::uint64_t tick = 0;
  EventKind kind = EventKind::InsertToken;
  std::optional<Target> target;
  bool operator==(const SimEvent&) const = default;
};

struct EngineConfig {
  double dt = 0.1;
  std::uint64_t seed = 1;
  EcoConfig eco;
  GrowthParams growth;
  int capacity = 60;
  double initial_fill = 0.5;  // fraction of capacity planted, fully mature, at start
  int reseed_count = 3;       // juveniles planted when EI turns positive after extinction
  PriceWeights price;
  SettlementConfig settlement;
  PathologyConfig pathology;
  FungusSpecies penicillium = penicillium_like();
  FungusSpecies aspergillus = aspergillus_like();
  int fungi_gallery_limit = 24;
  ShapeMapping shape_mapping;
  std::string model_dir = std::string(BENEFIT_DATA_DIR) + "/models";

  // Throws ConfigError; also checks the settlement period is a whole number of ticks.
  void validate() const;
  std::uint64_t settlement_ticks() const;
  bool operator==(const EngineConfig&) const = default;
};

struct SimState {
  std::uint64_t tick = 0;
  double sim_time = 0.0;  // tick * dt
  EcoState eco;
  SwarmState swarm;
  PathologyState pathology;
  TokenLedger ledger;
  Target current_target = Target::Seaweed;
  std::vector<FungusTree> fungi_gallery;
  std::uint64_t settlements = 0;
  std::uint64_t rng_seed = 0;
  bool operator==(const SimState&) const = default;
};

// Deterministic fixed-timestep world. State is reachable read-only; only
// apply() and step() change it.
class Engine {
 public:
  explicit Engine(EngineConfig config);  // loads models from config.model_dir
  Engine(EngineConfig config, FactorModels models);

  const SimState& state() const noexcept { return state_; }
  const EngineConfig& config() const noexcept { return config_; }
  const FactorModels& models() const noexcept { return models_; }

  // Shape a plant spawned right now would get.
  const ShapeParams& current_shape() const noexcept { return shape_; }

  // Throws SequenceError unless e.tick == state().tick.
  void apply(const SimEvent& e);

  // Advances one tick: growth, pathology, health broadcast, extinction
  // recovery and (on period boundaries) settlement.
  void step();

  // Seconds until the next settlement, in (0, period].
  double settlement_countdown() const;

 private:
  SimState initial_state() const;
  void refresh_shape();
  void broadcast_health();
  SpawnTraits spawn_traits(std::uint64_t id) const;
  void insert_seaweed();
  void insert_fungi();

  EngineConfig config_;
  FactorModels models_;
  ShapeParams shape_;
  SimState state_;
};

struct ReplayResult {
  SimState final_state;
  std::vector<SimState> snapshots;
};

// Applies `trace` in order, stepping the world between events, then runs on
// to world tick `ticks`. Ticks must be non-decreasing except right after a
// reset event, which restarts the world clock at 0. A snapshot is kept every
// `snapshot_every` ticks (0 disables). Throws ValidationError for an
// unsorted trace or `ticks` short of the last event.
ReplayResult run_replay(const EngineConfig& config, std::span<const SimEvent> trace, std::uint64_t ticks,
                        std::uint64_t snapshot_every = 0);
ReplayResult run_replay(Engine& engine, std::span<const SimEvent> trace, std::uint64_t ticks,
                        std::uint64_t snapshot_every = 0);

}  // namespace benefit
