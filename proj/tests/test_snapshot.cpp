#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "benefit/noise.hpp"
#include "benefit/serialize.hpp"
#include "benefit/snapshot.hpp"
#include "support/gen.hpp"

using namespace benefit;
using nlohmann::json;

namespace {

const std::string kGolden = std::string(BENEFIT_TEST_DIR) + "/golden/initial_snapshot.json";

Engine make_engine(EngineConfig cfg = {}) { return Engine(cfg, gen::bundled_models()); }

Engine played_engine(std::uint64_t seed, int events, std::uint64_t ticks) {
  gen::Gen g(seed);
  Engine e = make_engine();
  const auto trace = gen::mixed_trace(g, events, ticks);
  run_replay(e, trace, ticks);
  return e;
}

}  // namespace

TEST_CASE("snapshot json round trip is byte-identical") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Engine e = played_engine(seed, 150, 1500);
    const Snapshot s = make_snapshot(e);
    const std::string text = snapshot_json(s);
    const Snapshot back = json::parse(text).get<Snapshot>();
    CHECK(back == s);
    CHECK(snapshot_json(back) == text);
  }
}

TEST_CASE("snapshot schema tag is checked") {
  json j = make_snapshot(make_engine());
  CHECK(j["schema"] == kSnapshotSchema);
  j["schema"] = "benefit.snapshot/0";
  CHECK_THROWS(j.get<Snapshot>());
}

TEST_CASE("initial snapshot matches the golden file") {
  const std::string text = snapshot_json(make_snapshot(make_engine()));
  if (std::getenv("BENEFIT_UPDATE_GOLDEN")) std::ofstream(kGolden) << text << '\n';
  std::ifstream in(kGolden);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string golden = ss.str();
  while (!golden.empty() && golden.back() == '\n') golden.pop_back();
  CHECK(text == golden);
}

TEST_CASE("snapshot fields agree with the engine") {
  const Engine e = played_engine(8, 200, 2000);
  const SimState& st = e.state();
  const EngineConfig& cfg = e.config();
  const Snapshot s = make_snapshot(e);
  CHECK(s.tick == st.tick);
  CHECK(s.sim_time == st.sim_time);
  CHECK(s.ei == st.eco.ei);
  CHECK(s.stage == st.eco.stage);
  CHECK(s.insertions_in_cycle == st.eco.insertions_in_cycle);
  CHECK(s.cycle == cfg.eco.cycle);
  CHECK(s.factors == st.eco.factors);
  CHECK(s.capacity == cfg.capacity);
  CHECK(s.extinct == st.swarm.extinct);
  CHECK(s.pathology == st.pathology);
  CHECK(s.current_target == st.current_target);
  CHECK(s.settlement_period == cfg.settlement.period);
  CHECK(s.state_hash == hash_hex(state_hash(st)));
  CHECK(s.ledger.inserted_seaweed == st.ledger.inserted_seaweed);
  CHECK(s.ledger.inserted_fungi == st.ledger.inserted_fungi);
  CHECK(s.ledger.dispensed == st.ledger.dispensed);
  CHECK(s.ledger.unsettled_harvests == st.ledger.unsettled_pool.size());
  CHECK(s.ledger.unsettled_profit == doctest::Approx(unsettled_total(st.ledger)));
  CHECK(s.growth_rate == doctest::Approx(st.swarm.extinct ? 0.0 : cfg.growth.g0 * std::max(st.eco.ei, 0.0)));

  REQUIRE(s.plants.size() == st.swarm.plants.size());
  for (std::size_t i = 0; i < s.plants.size(); ++i) {
    const PlantView& v = s.plants[i];
    const SeaweedPlant& p = st.swarm.plants[i];
    CHECK(v.id == p.id);
    CHECK(v.shape == p.shape);
    CHECK(v.maturity == p.maturity);
    CHECK(v.health == p.health);
    CHECK(v.mask == mask_params_from_health(p.health, p.disease_seed, cfg.pathology));
    CHECK(v.mask_fraction == disease_mask_fraction_reference(v.mask, kSnapshotMaskResolution));
    CHECK(v.geometry == swarm_geometry(p));
  }
  REQUIRE(s.fungi_gallery.size() == st.fungi_gallery.size());
  for (std::size_t i = 0; i < s.fungi_gallery.size(); ++i) {
    CHECK(s.fungi_gallery[i].seed == st.fungi_gallery[i].seed);
    CHECK(s.fungi_gallery[i].geometry == fungus_geometry(st.fungi_gallery[i]));
  }
}

TEST_CASE("settlement countdown stays within one period") {
  Engine e = make_engine();
  for (int k = 0; k < 450; ++k) {
    const Snapshot s = make_snapshot(e);
    CHECK(s.settlement_countdown > 0.0);
    CHECK(s.settlement_countdown <= s.settlement_period + 1e-9);
    e.step();
  }
}

TEST_CASE("snapshot json layout") {
  const json j = make_snapshot(played_engine(4, 30, 300));
  for (const char* key : {"schema", "tick", "sim_time", "ei", "stage", "insertions_in_cycle", "cycle", "factors",
                          "growth_rate", "swarm", "fungi_gallery", "pathology", "ledger", "current_target",
                          "settlement", "state_hash"}) {
    INFO(key);
    CHECK(j.contains(key));
  }
  const json& plant = j["swarm"]["plants"].at(0);
  CHECK(plant["mask"]["seed"].is_string());
  CHECK(plant["mask"].contains("edge"));
  CHECK(plant["mask"].contains("scale"));
  CHECK(plant["mask"].contains("fraction"));
  CHECK(j["settlement"].contains("countdown"));
  CHECK(j["settlement"].contains("period"));
}
