#include "benefit/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "benefit/errors.hpp"

namespace benefit {

using nlohmann::json;

void PolicyScript::validate() const {
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw ValidationError("policy: duration must be >= 0");
  if (!(seaweed_per_min >= 0.0) || !(fungi_per_min >= 0.0) || !std::isfinite(seaweed_per_min) ||
      !std::isfinite(fungi_per_min)) {
    throw ValidationError("policy: rates must be finite and >= 0");
  }
  double last = 0.0;
  for (const auto& e : events) {
    if (!(e.time >= 0.0) || !std::isfinite(e.time)) throw ValidationError("policy: event times must be >= 0");
    if (e.time < last) throw ValidationError("policy: events must be sorted by time");
    if (e.kind == EventKind::Reset) throw ValidationError("policy: reset events are not allowed");
    if (e.target && e.kind != EventKind::InsertToken) throw ValidationError("policy: only insert_token takes a target");
    last = e.time;
  }
}

PolicyScript policy_from_json(const json& j) {
  try {
    if (!j.is_object()) throw ValidationError("policy must be a JSON object");
    if (auto s = j.find("schema"); s != j.end() && s->get<std::string>() != "benefit.policy/1") {
      throw ValidationError("policy: unsupported schema '" + s->get<std::string>() + "'");
    }
    PolicyScript p;
    if (auto n = j.find("name"); n != j.end()) p.name = n->get<std::string>();
    if (auto d = j.find("duration"); d != j.end()) p.duration = d->get<double>();
    if (auto r = j.find("rate"); r != j.end()) {
      if (auto s = r->find("seaweed_per_min"); s != r->end()) p.seaweed_per_min = s->get<double>();
      if (auto f = r->find("fungi_per_min"); f != r->end()) p.fungi_per_min = f->get<double>();
    }
    if (auto ev = j.find("events"); ev != j.end()) {
      for (const auto& e : *ev) {
        PolicyScript::TimedEvent te;
        te.time = e.at("time").get<double>();
        te.kind = event_kind_from_label(e.at("kind").get<std::string>());
        if (auto t = e.find("target"); t != e.end()) te.target = target_from_label(t->get<std::string>());
        p.events.push_back(te);
      }
    }
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("policy: ") + e.what());
  }
}

json policy_to_json(const PolicyScript& p) {
  json events = json::array();
  for (const auto& e : p.events) {
    json ej = {{"time", e.time}, {"kind", event_kind_label(e.kind)}};
    if (e.target) ej["target"] = target_label(*e.target);
    events.push_back(std::move(ej));
  }
  return {{"schema", "benefit.policy/1"},
          {"name", p.name},
          {"duration", p.duration},
          {"rate", {{"seaweed_per_min", p.seaweed_per_min}, {"fungi_per_min", p.fungi_per_min}}},
          {"events", std::move(events)}};
}

PolicyScript load_policy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open policy '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("policy '" + path + "': " + e.what());
  }
  return policy_from_json(j);
}

namespace {

std::uint64_t to_tick(double t, double dt) { return static_cast<std::uint64_t>(std::llround(t / dt)); }

void add_rate(std::vector<std::pair<std::uint64_t, SimEvent>>& out, double per_min, Target target, int order,
              std::uint64_t end_tick, double dt) {
  if (per_min <= 0.0) return;
  const double period = 60.0 / per_min;
  for (std::uint64_t k = 0;; ++k) {
    const std::uint64_t tick = to_tick(static_cast<double>(k) * period, dt);
    if (tick >= end_tick) break;
    out.push_back({static_cast<std::uint64_t>(order), {tick, EventKind::InsertToken, target}});
  }
}

}  // namespace

std::vector<SimEvent> policy_events(const PolicyScript& p, double dt) {
  p.validate();
  const std::uint64_t end_tick = to_tick(p.duration, dt);
  std::vector<std::pair<std::uint64_t, SimEvent>> tagged;
  for (const auto& e : p.events) {
    const std::uint64_t tick = to_tick(e.time, dt);
    if (tick < end_tick) tagged.push_back({0, {tick, e.kind, e.target}});
  }
  add_rate(tagged, p.seaweed_per_min, Target::Seaweed, 1, end_tick, dt);
  add_rate(tagged, p.fungi_per_min, Target::Fungi, 2, end_tick, dt);
  std::stable_sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
    return a.second.tick != b.second.tick ? a.second.tick < b.second.tick : a.first < b.first;
  });
  std::vector<SimEvent> events;
  events.reserve(tagged.size());
  for (auto& [order, e] : tagged) events.push_back(e);
  return events;
}

namespace {

SimRow row_of(const SimState& s) {
  return {s.tick,
          s.sim_time,
          s.eco.ei,
          s.eco.stage,
          s.swarm.plants.size(),
          s.pathology.swarm_health,
          s.ledger.inserted_seaweed,
          s.ledger.inserted_fungi,
          s.ledger.dispensed,
          s.swarm.extinct};
}

}  // namespace

SimulationResult run_simulation(Engine& engine, const PolicyScript& policy, std::uint64_t row_every) {
  const double dt = engine.config().dt;
  SimulationResult out;
  out.trace = policy_events(policy, dt);
  out.ticks = to_tick(policy.duration, dt);

  double ei_sum = 0.0;
  std::uint64_t samples = 0;
  const auto observe = [&] {
    const SimState& s = engine.state();
    ei_sum += s.eco.ei;
    ++samples;
    if (s.eco.stage == Stage::Crisis) out.reached_crisis = true;
    if (s.swarm.extinct && !out.extinct_tick) out.extinct_tick = s.tick;
    if (row_every > 0 && s.tick % row_every == 0) out.rows.push_back(row_of(s));
  };

  std::size_t next = 0;
  for (std::uint64_t tick = 0;; ++tick) {
    while (next < out.trace.size() && out.trace[next].tick == tick) engine.apply(out.trace[next++]);
    observe();
    if (tick == out.ticks) break;
    engine.step();
  }
  out.final_state = engine.state();
  out.mean_ei = samples ? ei_sum / static_cast<double>(samples) : 0.0;
  out.went_extinct = out.extinct_tick.has_value();
  return out;
}

void write_csv(std::ostream& out, const std::vector<SimRow>& rows) {
  out << kCsvHeader << '\n';
  fmt::memory_buffer buf;
  for (const auto& r : rows) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{},{},{}\n", r.tick, r.sim_time, r.ei,
                   stage_label(r.stage), r.plants, r.health, r.inserted_seaweed, r.inserted_fungi, r.dispensed,
                   r.extinct ? 1 : 0);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
}

}  // namespace benefit
