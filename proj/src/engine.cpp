#include "benefit/engine.hpp"

#include <cmath>
#include <string>

#include "benefit/errors.hpp"
#include "benefit/rng.hpp"

namespace benefit {

std::string_view target_label(Target t) noexcept { return t == Target::Fungi ? "fungi" : "seaweed"; }

Target target_from_label(std::string_view label) {
  if (label == "seaweed") return Target::Seaweed;
  if (label == "fungi") return Target::Fungi;
  throw ValidationError("unknown target '" + std::string(label) + "'");
}

std::string_view event_kind_label(EventKind k) noexcept {
  switch (k) {
    case EventKind::InsertToken:
      return "insert_token";
    case EventKind::SwitchTarget:
      return "switch_target";
    case EventKind::Reset:
      return "reset";
  }
  return "insert_token";
}

EventKind event_kind_from_label(std::string_view label) {
  if (label == "insert_token") return EventKind::InsertToken;
  if (label == "switch_target") return EventKind::SwitchTarget;
  if (label == "reset") return EventKind::Reset;
  throw ValidationError("unknown event kind '" + std::string(label) + "'");
}

void EngineConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("engine: dt must be positive");
  eco.validate();
  price.validate();
  pathology.validate();
  penicillium.validate();
  aspergillus.validate();
  if (!(growth.g0 > 0.0) || !(growth.r0 >= 0.0)) throw ConfigError("engine: g0 > 0 and r0 >= 0 required");
  if (capacity < 1) throw ConfigError("engine: capacity must be >= 1");
  if (!(initial_fill >= 0.0 && initial_fill <= 1.0)) throw ConfigError("engine: initial_fill in [0, 1]");
  if (reseed_count < 0) throw ConfigError("engine: reseed_count must be >= 0");
  if (fungi_gallery_limit < 1) throw ConfigError("engine: fungi_gallery_limit must be >= 1");
  if (!(settlement.period > 0.0)) throw ConfigError("engine: settlement period must be positive");
  const double ratio = settlement.period / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw ConfigError("engine: settlement period must be a whole number of ticks");
  }
}

std::uint64_t EngineConfig::settlement_ticks() const {
  return static_cast<std::uint64_t>(std::llround(settlement.period / dt));
}

Engine::Engine(EngineConfig config) : Engine(config, load_factor_models(config.model_dir)) {}

Engine::Engine(EngineConfig config, FactorModels models) : config_(std::move(config)), models_(std::move(models)) {
  config_.validate();
  for (Factor f : kAllFactors) models_.at(f);
  state_ = initial_state();
  refresh_shape();
}

SpawnTraits Engine::spawn_traits(std::uint64_t id) const {
  return {shape_, derive_seed(config_.seed, Stream::Disease, id)};
}

void Engine::refresh_shape() {
  shape_ = shape_from_yields(yields_from_factors(models_, state_.eco.factors), config_.shape_mapping);
}

SimState Engine::initial_state() const {
  SimState s;
  s.rng_seed = config_.seed;
  s.eco = make_eco_state(0, 0, config_.eco);
  s.pathology = initial_pathology(s.eco.ei, config_.eco, config_.pathology);
  s.swarm.capacity = config_.capacity;

  const ShapeParams shape =
      shape_from_yields(yields_from_factors(models_, s.eco.factors), config_.shape_mapping);
  const auto planted = static_cast<int>(std::lround(config_.initial_fill * config_.capacity));
  const SpawnSource source = [&](std::uint64_t id) {
    return SpawnTraits{shape, derive_seed(config_.seed, Stream::Disease, id)};
  };
  for (int i = 0; i < planted; ++i) {
    spawn_plant(s.swarm, 0, s.pathology.swarm_health, source);
    s.swarm.plants.back().maturity = 1.0;
  }
  return s;
}

void Engine::broadcast_health() {
  for (auto& p : state_.swarm.plants) p.health = state_.pathology.swarm_health;
}

void Engine::insert_seaweed() {
  state_.ledger.inserted_seaweed += 1;
  state_.eco = advance_insertion(state_.eco, config_.eco);
  refresh_shape();
  if (auto plant = harvest(state_.swarm, state_.eco.stage)) {
    record_harvest(state_.ledger, price_of(*plant, config_.price));
  }
}

void Engine::insert_fungi() {
  const std::uint64_t index = state_.ledger.inserted_fungi;
  state_.ledger.inserted_fungi += 1;

  const FungusSpecies& species = index % 2 == 0 ? config_.penicillium : config_.aspergillus;
  auto& gallery = state_.fungi_gallery;
  gallery.push_back(generate_fungus(species, derive_seed(config_.seed, Stream::Fungus, index)));
  if (gallery.size() > static_cast<std::size_t>(config_.fungi_gallery_limit)) gallery.erase(gallery.begin());

  state_.pathology = cultivate_fungus(state_.pathology, state_.eco.ei, config_.eco, config_.pathology);
  broadcast_health();
}

void Engine::apply(const SimEvent& e) {
  if (e.tick != state_.tick) {
    throw SequenceError("event for tick " + std::to_string(e.tick) + " applied at tick " +
                        std::to_string(state_.tick));
  }
  switch (e.kind) {
    case EventKind::InsertToken:
      if (e.target.value_or(state_.current_target) == Target::Seaweed) {
        insert_seaweed();
      } else {
        insert_fungi();
      }
      break;
    case EventKind::SwitchTarget:
      state_.current_target = state_.current_target == Target::Seaweed ? Target::Fungi : Target::Seaweed;
      break;
    case EventKind::Reset:
      state_ = initial_state();
      refresh_shape();
      break;
  }
}

void Engine::step() {
  state_.tick += 1;
  state_.sim_time = static_cast<double>(state_.tick) * config_.dt;

  const double ei = state_.eco.ei;
  if (state_.swarm.extinct && ei > 0.0) {
    state_.swarm.extinct = false;
    const SpawnSource source = [this](std::uint64_t id) { return spawn_traits(id); };
    for (int i = 0; i < config_.reseed_count; ++i) {
      spawn_plant(state_.swarm, state_.tick, state_.pathology.swarm_health, source);
    }
  }

  growth_step(state_.swarm, config_.growth, ei, config_.dt, state_.tick, state_.pathology.swarm_health,
              [this](std::uint64_t id) { return spawn_traits(id); });
  state_.pathology = pathology_tick(state_.pathology, ei, config_.dt, config_.eco, config_.pathology);
  broadcast_health();

  if (state_.tick % config_.settlement_ticks() == 0) {
    settle(state_.ledger);
    state_.settlements += 1;
  }
}

double Engine::settlement_countdown() const {
  const std::uint64_t period = config_.settlement_ticks();
  return static_cast<double>(period - state_.tick % period) * config_.dt;
}

ReplayResult run_replay(Engine& engine, std::span<const SimEvent> trace, std::uint64_t ticks,
                        std::uint64_t snapshot_every) {
  ReplayResult out;
  const auto advance_to = [&](std::uint64_t target) {
    while (engine.state().tick < target) {
      engine.step();
      if (snapshot_every > 0 && engine.state().tick % snapshot_every == 0) out.snapshots.push_back(engine.state());
    }
  };

  for (std::size_t i = 0; i < trace.size(); ++i) {
    const SimEvent& e = trace[i];
    if (e.tick < engine.state().tick) {
      throw ValidationError("trace unsorted at event " + std::to_string(i) + " (tick " + std::to_string(e.tick) +
                            " < " + std::to_string(engine.state().tick) + ")");
    }
    advance_to(e.tick);
    engine.apply(e);
  }
  if (ticks < engine.state().tick) {
    throw ValidationError("replay length " + std::to_string(ticks) + " is before the last event tick");
  }
  advance_to(ticks);
  out.final_state = engine.state();
  return out;
}

ReplayResult run_replay(const EngineConfig& config, std::span<const SimEvent> trace, std::uint64_t ticks,
                        std::uint64_t snapshot_every) {
  Engine engine(config);
  return run_replay(engine, trace, ticks, snapshot_every);
}

}  // namespace benefit
