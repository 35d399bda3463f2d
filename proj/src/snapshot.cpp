#include "benefit/snapshot.hpp"

#include <algorithm>

#include "benefit/errors.hpp"
#include "benefit/serialize.hpp"

namespace benefit {

using nlohmann::json;

Snapshot make_snapshot(const Engine& engine) {
  const SimState& st = engine.state();
  const EngineConfig& cfg = engine.config();

  Snapshot s;
  s.tick = st.tick;
  s.sim_time = st.sim_time;
  s.ei = st.eco.ei;
  s.stage = st.eco.stage;
  s.insertions_in_cycle = st.eco.insertions_in_cycle;
  s.cycle = cfg.eco.cycle;
  s.factors = st.eco.factors;
  s.growth_rate = st.swarm.extinct ? 0.0 : cfg.growth.g0 * std::max(st.eco.ei, 0.0);
  s.capacity = st.swarm.capacity;
  s.extinct = st.swarm.extinct;

  s.plants.reserve(st.swarm.plants.size());
  for (const auto& p : st.swarm.plants) {
    PlantView v;
    v.id = p.id;
    v.shape = p.shape;
    v.maturity = p.maturity;
    v.health = p.health;
    v.mask = mask_params_from_health(p.health, p.disease_seed, cfg.pathology);
    v.mask_fraction = disease_mask_fraction(v.mask, kSnapshotMaskResolution);
    v.geometry = swarm_geometry(p);
    s.plants.push_back(std::move(v));
  }
  for (const auto& t : st.fungi_gallery) s.fungi_gallery.push_back({t.kind, t.seed, fungus_geometry(t)});

  s.pathology = st.pathology;
  s.ledger = {st.ledger.inserted_seaweed,
              st.ledger.inserted_fungi,
              st.ledger.dispensed,
              unsettled_total(st.ledger),
              st.ledger.unsettled_pool.size(),
              st.ledger.settlement_carry};
  s.current_target = st.current_target;
  s.settlement_countdown = engine.settlement_countdown();
  s.settlement_period = cfg.settlement.period;
  s.state_hash = hash_hex(state_hash(st));
  return s;
}

namespace {

std::uint64_t seed_value(const json& j) {
  if (j.is_string()) return std::stoull(j.get<std::string>());
  return j.get<std::uint64_t>();
}

}  // namespace

void to_json(json& j, const Snapshot& s) {
  json plants = json::array();
  for (const auto& p : s.plants) {
    plants.push_back({{"id", p.id},
                      {"shape", p.shape},
                      {"maturity", p.maturity},
                      {"health", p.health},
                      {"mask",
                       {{"edge", p.mask.edge},
                        {"scale", p.mask.noise_scale},
                        {"seed", std::to_string(p.mask.seed)},
                        {"fraction", p.mask_fraction}}},
                      {"geometry", p.geometry}});
  }
  json fungi = json::array();
  for (const auto& f : s.fungi_gallery) {
    fungi.push_back({{"kind", fungus_kind_label(f.kind)}, {"seed", std::to_string(f.seed)}, {"geometry", f.geometry}});
  }
  const auto& pa = s.pathology;
  const auto& l = s.ledger;
  j = {{"schema", kSnapshotSchema},
       {"tick", s.tick},
       {"sim_time", s.sim_time},
       {"ei", s.ei},
       {"stage", stage_label(s.stage)},
       {"insertions_in_cycle", s.insertions_in_cycle},
       {"cycle", s.cycle},
       {"factors", s.factors},
       {"growth_rate", s.growth_rate},
       {"swarm", {{"plants", std::move(plants)}, {"capacity", s.capacity}, {"extinct", s.extinct}}},
       {"fungi_gallery", std::move(fungi)},
       {"pathology",
        {{"oomycete_present", pa.oomycete_present},
         {"fungi_count", pa.fungi_count},
         {"required_fungi", pa.required_fungi},
         {"respawn_timer", pa.respawn_timer},
         {"swarm_health", pa.swarm_health}}},
       {"ledger",
        {{"inserted_seaweed", l.inserted_seaweed},
         {"inserted_fungi", l.inserted_fungi},
         {"dispensed", l.dispensed},
         {"unsettled_profit", l.unsettled_profit},
         {"unsettled_harvests", l.unsettled_harvests},
         {"settlement_carry", l.settlement_carry}}},
       {"current_target", target_label(s.current_target)},
       {"settlement", {{"countdown", s.settlement_countdown}, {"period", s.settlement_period}}},
       {"state_hash", s.state_hash}};
}

void from_json(const json& j, Snapshot& s) {
  if (j.at("schema").get<std::string>() != kSnapshotSchema) {
    throw ValidationError("snapshot: unsupported schema '" + j.at("schema").get<std::string>() + "'");
  }
  s = {};
  s.tick = j.at("tick").get<std::uint64_t>();
  s.sim_time = j.at("sim_time").get<double>();
  s.ei = j.at("ei").get<double>();
  s.stage = stage_from_label(j.at("stage").get<std::string>());
  s.insertions_in_cycle = j.at("insertions_in_cycle").get<int>();
  s.cycle = j.at("cycle").get<int>();
  s.factors = j.at("factors").get<NaturalFactors>();
  s.growth_rate = j.at("growth_rate").get<double>();

  const auto& sw = j.at("swarm");
  s.capacity = sw.at("capacity").get<int>();
  s.extinct = sw.at("extinct").get<bool>();
  for (const auto& pj : sw.at("plants")) {
    PlantView p;
    p.id = pj.at("id").get<std::uint64_t>();
    p.shape = pj.at("shape").get<ShapeParams>();
    p.maturity = pj.at("maturity").get<double>();
    p.health = pj.at("health").get<double>();
    const auto& m = pj.at("mask");
    p.mask = {m.at("edge").get<double>(), m.at("scale").get<double>(), seed_value(m.at("seed"))};
    p.mask_fraction = m.at("fraction").get<double>();
    p.geometry = pj.at("geometry").get<GeometryDescriptor>();
    s.plants.push_back(std::move(p));
  }
  for (const auto& fj : j.at("fungi_gallery")) {
    s.fungi_gallery.push_back({fungus_kind_from_label(fj.at("kind").get<std::string>()), seed_value(fj.at("seed")),
                               fj.at("geometry").get<GeometryDescriptor>()});
  }

  const auto& pa = j.at("pathology");
  s.pathology = {pa.at("oomycete_present").get<bool>(), pa.at("fungi_count").get<int>(),
                 pa.at("required_fungi").get<int>(), pa.at("respawn_timer").get<double>(),
                 pa.at("swarm_health").get<double>()};
  const auto& l = j.at("ledger");
  s.ledger = {l.at("inserted_seaweed").get<std::uint64_t>(), l.at("inserted_fungi").get<std::uint64_t>(),
              l.at("dispensed").get<std::uint64_t>(),        l.at("unsettled_profit").get<double>(),
              l.at("unsettled_harvests").get<std::uint64_t>(), l.at("settlement_carry").get<double>()};
  s.current_target = target_from_label(j.at("current_target").get<std::string>());
  s.settlement_countdown = j.at("settlement").at("countdown").get<double>();
  s.settlement_period = j.at("settlement").at("period").get<double>();
  s.state_hash = j.at("state_hash").get<std::string>();
}

std::string snapshot_json(const Snapshot& s) { return json(s).dump(); }

}  // namespace benefit
