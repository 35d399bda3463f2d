#include <doctest.h>

#include <sstream>

#include "benefit/errors.hpp"
#include "benefit/serialize.hpp"
#include "benefit/simulate.hpp"
#include "support/gen.hpp"

using namespace benefit;
using nlohmann::json;

namespace {

const std::string kData = BENEFIT_DATA_DIR;

Engine make_engine(EngineConfig cfg = {}) { return Engine(cfg, gen::bundled_models()); }

std::string csv_of(const PolicyScript& p) {
  Engine e = make_engine();
  const auto r = run_simulation(e, p);
  std::ostringstream out;
  write_csv(out, r.rows);
  return out.str();
}

}  // namespace

TEST_CASE("rate events land on quantised periodic times") {
  PolicyScript p;
  p.seaweed_per_min = 7.0;  // every 60/7 s
  p.duration = 60.0;
  const auto ev = policy_events(p, 0.1);
  REQUIRE(ev.size() == 7);
  for (std::size_t k = 0; k < ev.size(); ++k) {
    CHECK(ev[k].tick == static_cast<std::uint64_t>(std::llround(k * 60.0 / 7.0 / 0.1)));
    CHECK(ev[k].kind == EventKind::InsertToken);
    CHECK(ev[k].target == Target::Seaweed);
  }
}

TEST_CASE("events at or after the duration are dropped") {
  PolicyScript p;
  p.duration = 10.0;
  p.events = {{9.9, EventKind::SwitchTarget, std::nullopt}, {10.0, EventKind::SwitchTarget, std::nullopt}};
  CHECK(policy_events(p, 0.1).size() == 1);
}

TEST_CASE("ordering within a tick: timed, then seaweed, then fungi") {
  PolicyScript p;
  p.seaweed_per_min = 1.0;
  p.fungi_per_min = 1.0;
  p.events = {{0.0, EventKind::SwitchTarget, std::nullopt}};
  p.duration = 30.0;
  const auto ev = policy_events(p, 0.1);
  REQUIRE(ev.size() == 3);
  CHECK(ev[0].kind == EventKind::SwitchTarget);
  CHECK(ev[1].target == Target::Seaweed);
  CHECK(ev[2].target == Target::Fungi);
  for (const auto& e : ev) CHECK(e.tick == 0);
}

TEST_CASE("policy validation") {
  PolicyScript p;
  p.events = {{2.0, EventKind::InsertToken, std::nullopt}, {1.0, EventKind::InsertToken, std::nullopt}};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.events = {{-1.0, EventKind::InsertToken, std::nullopt}};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.events = {{1.0, EventKind::Reset, std::nullopt}};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.events = {{1.0, EventKind::SwitchTarget, Target::Fungi}};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.events = {};
  p.seaweed_per_min = -1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("policy json round trip and bundled policies load") {
  for (const char* name : {"greedy", "balanced", "fungi_only", "idle", "visit"}) {
    INFO(name);
    const PolicyScript p = load_policy(kData + "/policies/" + name + ".json");
    CHECK(p.name == name);
    const json j = policy_to_json(p);
    CHECK(policy_to_json(policy_from_json(j)) == j);
  }
  CHECK_THROWS(load_policy("/nonexistent/policy.json"));
  CHECK_THROWS(policy_from_json(json::parse(R"({"schema":"benefit.policy/9"})")));
}

TEST_CASE("simulation output is deterministic") {
  const PolicyScript p = load_policy(kData + "/policies/visit.json");
  const std::string a = csv_of(p);
  CHECK(a == csv_of(p));
  CHECK(a.rfind(kCsvHeader, 0) == 0);
}

TEST_CASE("simulation equals replaying its own trace") {
  PolicyScript p;
  p.seaweed_per_min = 30;
  p.fungi_per_min = 12;
  p.duration = 90;
  Engine e = make_engine();
  const auto r = run_simulation(e, p);
  CHECK(r.ticks == 900);
  CHECK(r.final_state.tick == 900);
  CHECK(r.trace == policy_events(p, 0.1));
  CHECK(run_replay(EngineConfig{}, r.trace, r.ticks).final_state == r.final_state);
  CHECK(r.rows.front().tick == 0);
  CHECK(r.rows.back().tick == 900);
  CHECK(r.rows.size() == 91);
}

TEST_CASE("idle play dispenses nothing") {
  Engine e = make_engine();
  const auto r = run_simulation(e, load_policy(kData + "/policies/idle.json"));
  CHECK(r.final_state.ledger.dispensed == 0);
  CHECK(r.mean_ei == 0.0);
  CHECK_FALSE(r.reached_crisis);
  CHECK_FALSE(r.went_extinct);
  CHECK(r.trace.empty());
}

TEST_CASE("csv rows") {
  std::vector<SimRow> rows = {{10, 1.0, 0.5, Stage::Decline, 3, 0.25, 4, 1, 2, true}};
  std::ostringstream out;
  write_csv(out, rows);
  CHECK(out.str() == std::string(kCsvHeader) + "\n10,1,0.5,decline,3,0.25,4,1,2,1\n");
}
