#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "benefit/engine.hpp"

namespace benefit {

// A scripted player. Timed events and the periodic rate rule are merged;
// within one tick timed events go first, then seaweed, then fungi.
struct PolicyScript {
  struct TimedEvent {
    double time = 0.0;  // seconds
    EventKind kind = EventKind::InsertToken;
    std::optional<Target> target;
  };
  std::string name = "policy";
  std::vector<TimedEvent> events;  // sorted by time
  double seaweed_per_min = 0.0;
  double fungi_per_min = 0.0;
  double duration = 60.0;  // seconds

  void validate() const;  // throws ValidationError
};

// {"schema":"benefit.policy/1","name":...,"duration":...,
//  "rate":{"seaweed_per_min":...,"fungi_per_min":...},
//  "events":[{"time":1.5,"kind":"insert_token","target":"fungi"}, ...]}
PolicyScript policy_from_json(const nlohmann::json& j);
nlohmann::json policy_to_json(const PolicyScript& p);
PolicyScript load_policy(const std::string& path);

// Rate events land on exact periodic times k * 60 / rate (k = 0, 1, ...)
// quantised to the nearest tick; timed events are quantised the same way.
// Only events strictly before `duration` are kept.
std::vector<SimEvent> policy_events(const PolicyScript& p, double dt);

struct SimRow {
  std::uint64_t tick = 0;
  double sim_time = 0.0;
  double ei = 0.0;
  Stage stage = Stage::Prosperity;
  std::size_t plants = 0;
  double health = 0.0;
  std::uint64_t inserted_seaweed = 0;
  std::uint64_t inserted_fungi = 0;
  std::uint64_t dispensed = 0;
  bool extinct = false;
};

struct SimulationResult {
  std::vector<SimRow> rows;
  std::vector<SimEvent> trace;
  SimState final_state;
  std::uint64_t ticks = 0;
  double mean_ei = 0.0;  // mean over every tick of the run, including tick 0
  bool reached_crisis = false;
  bool went_extinct = false;
  std::optional<std::uint64_t> extinct_tick;  // first tick the swarm was extinct
};

// Runs for round(duration / dt) ticks, recording a row at tick 0 and every
// `row_every` ticks after.
SimulationResult run_simulation(Engine& engine, const PolicyScript& policy, std::uint64_t row_every = 10);

inline constexpr const char* kCsvHeader =
    "tick,sim_time,ei,stage,plants,health,inserted_seaweed,inserted_fungi,dispensed,extinct";

void write_csv(std::ostream& out, const std::vector<SimRow>& rows);

}  // namespace benefit
