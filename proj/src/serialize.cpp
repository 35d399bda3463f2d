#include "benefit/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include "benefit/errors.hpp"
#include "benefit/hash.hpp"

namespace benefit {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

// 64-bit seeds travel as decimal strings so JavaScript clients keep every bit.
json seed_json(std::uint64_t v) { return std::to_string(v); }

std::uint64_t seed_value(const json& j) {
  if (j.is_string()) {
    const auto& text = j.get_ref<const std::string&>();
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
      throw std::invalid_argument("seed '" + text + "' is not an unsigned 64-bit integer");
    }
    return v;
  }
  if (!j.is_number_unsigned()) throw std::invalid_argument("seed must be an unsigned integer");
  return j.get<std::uint64_t>();
}

template <typename T>
json interval_json(const Interval<T>& iv) {
  return json::array({iv.min, iv.max});
}

template <typename T>
void read_interval(const json& j, const char* key, Interval<T>& iv) {
  if (auto it = j.find(key); it != j.end()) {
    iv.min = it->at(0).get<T>();
    iv.max = it->at(1).get<T>();
  }
}

json branch_json(const Branch& b) {
  return {{"length", b.length}, {"thickness", b.thickness}, {"angle", b.angle}};
}

Branch branch_value(const json& j) {
  return {j.at("length").get<double>(), j.at("thickness").get<double>(), j.at("angle").get<double>()};
}

}  // namespace

void to_json(json& j, const NaturalFactors& f) {
  j = json::object();
  for (Factor k : kAllFactors) j[std::string(factor_label(k))] = f[k];
}

void from_json(const json& j, NaturalFactors& f) {
  for (Factor k : kAllFactors) f[k] = j.at(std::string(factor_label(k))).get<double>();
}

void to_json(json& j, const EcoConfig& c) {
  json ranges = json::object();
  for (Factor k : kAllFactors) {
    const auto& r = c.range(k);
    ranges[std::string(factor_label(k))] = {{"min", r.min}, {"max", r.max}, {"baseline", r.baseline}};
  }
  j = {{"a1", c.a1}, {"a2", c.a2}, {"c1", c.c1}, {"c2", c.c2}, {"cycle", c.cycle}, {"factor_ranges", ranges}};
}

void from_json(const json& j, EcoConfig& c) {
  read(j, "a1", c.a1);
  read(j, "a2", c.a2);
  read(j, "c1", c.c1);
  read(j, "c2", c.c2);
  read(j, "cycle", c.cycle);
  if (auto it = j.find("factor_ranges"); it != j.end()) {
    for (auto r = it->begin(); r != it->end(); ++r) {
      auto& range = c.factor_ranges[static_cast<std::size_t>(factor_from_label(r.key()))];
      read(*r, "min", range.min);
      read(*r, "max", range.max);
      read(*r, "baseline", range.baseline);
    }
  }
}

void to_json(json& j, const EcoState& s) {
  j = {{"insertions_in_cycle", s.insertions_in_cycle},
       {"total_insertions", s.total_insertions},
       {"ei", s.ei},
       {"stage", stage_label(s.stage)},
       {"factors", s.factors}};
}

void to_json(json& j, const FungusSpecies& s) {
  j = {{"metula_count", interval_json(s.metula_count)},
       {"phialide_count", interval_json(s.phialide_count)},
       {"conidia_count", interval_json(s.conidia_count)},
       {"stipe_length", interval_json(s.stipe_length)},
       {"metula_length", interval_json(s.metula_length)},
       {"phialide_length", interval_json(s.phialide_length)},
       {"branch_angle_spread", interval_json(s.branch_angle_spread)},
       {"stipe_thickness", interval_json(s.stipe_thickness)},
       {"metula_thickness", interval_json(s.metula_thickness)},
       {"phialide_thickness", interval_json(s.phialide_thickness)},
       {"conidium_radius", interval_json(s.conidium_radius)}};
}

void from_json(const json& j, FungusSpecies& s) {
  read_interval(j, "metula_count", s.metula_count);
  read_interval(j, "phialide_count", s.phialide_count);
  read_interval(j, "conidia_count", s.conidia_count);
  read_interval(j, "stipe_length", s.stipe_length);
  read_interval(j, "metula_length", s.metula_length);
  read_interval(j, "phialide_length", s.phialide_length);
  read_interval(j, "branch_angle_spread", s.branch_angle_spread);
  read_interval(j, "stipe_thickness", s.stipe_thickness);
  read_interval(j, "metula_thickness", s.metula_thickness);
  read_interval(j, "phialide_thickness", s.phialide_thickness);
  read_interval(j, "conidium_radius", s.conidium_radius);
}

void to_json(json& j, const FungusTree& t) {
  json metulae = json::array();
  for (const auto& m : t.metulae) {
    json phialides = json::array();
    for (const auto& p : m.phialides) {
      json conidia = json::array();
      for (const auto& c : p.conidia) conidia.push_back({{"radius", c.radius}, {"offset", c.offset}, {"angle", c.angle}});
      json pj = branch_json(p.branch);
      pj["conidia"] = std::move(conidia);
      phialides.push_back(std::move(pj));
    }
    json mj = branch_json(m.branch);
    mj["phialide_spread"] = m.phialide_spread;
    mj["phialides"] = std::move(phialides);
    metulae.push_back(std::move(mj));
  }
  j = {{"kind", fungus_kind_label(t.kind)},
       {"seed", seed_json(t.seed)},
       {"stipe", branch_json(t.stipe)},
       {"metula_spread", t.metula_spread},
       {"metulae", std::move(metulae)}};
}

void from_json(const json& j, FungusTree& t) {
  t.kind = fungus_kind_from_label(j.at("kind").get<std::string>());
  t.seed = seed_value(j.at("seed"));
  t.stipe = branch_value(j.at("stipe"));
  t.metula_spread = j.at("metula_spread").get<double>();
  t.metulae.clear();
  for (const auto& mj : j.at("metulae")) {
    Metula m;
    m.branch = branch_value(mj);
    m.phialide_spread = mj.at("phialide_spread").get<double>();
    for (const auto& pj : mj.at("phialides")) {
      Phialide p;
      p.branch = branch_value(pj);
      for (const auto& cj : pj.at("conidia")) {
        p.conidia.push_back({cj.at("radius").get<double>(), cj.at("offset").get<double>(), cj.at("angle").get<double>()});
      }
      m.phialides.push_back(std::move(p));
    }
    t.metulae.push_back(std::move(m));
  }
}

void to_json(json& j, const GeometryDescriptor& g) {
  json segments = json::array();
  for (const auto& s : g.segments) segments.push_back({s.a.x, s.a.y, s.b.x, s.b.y, s.thickness, s.level, s.parent});
  json circles = json::array();
  for (const auto& c : g.circles) circles.push_back({c.center.x, c.center.y, c.radius, c.parent});
  json polylines = json::array();
  for (const auto& p : g.polylines) {
    json pts = json::array();
    for (const auto& pt : p.points) {
      pts.push_back(pt.x);
      pts.push_back(pt.y);
    }
    polylines.push_back({{"closed", p.closed}, {"points", std::move(pts)}});
  }
  j = {{"segments", std::move(segments)}, {"circles", std::move(circles)}, {"polylines", std::move(polylines)}};
}

void from_json(const json& j, GeometryDescriptor& g) {
  g = {};
  for (const auto& s : j.at("segments")) {
    g.segments.push_back({{s.at(0).get<double>(), s.at(1).get<double>()},
                          {s.at(2).get<double>(), s.at(3).get<double>()},
                          s.at(4).get<double>(),
                          s.at(5).get<int>(),
                          s.at(6).get<int>()});
  }
  for (const auto& c : j.at("circles")) {
    g.circles.push_back({{c.at(0).get<double>(), c.at(1).get<double>()}, c.at(2).get<double>(), c.at(3).get<int>()});
  }
  for (const auto& p : j.at("polylines")) {
    Polyline line;
    line.closed = p.at("closed").get<bool>();
    const auto& pts = p.at("points");
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) line.points.push_back({pts[i].get<double>(), pts[i + 1].get<double>()});
    g.polylines.push_back(std::move(line));
  }
}

void to_json(json& j, const ShapeParams& s) {
  j = {{"blade_width", s.blade_width},
       {"blade_length", s.blade_length},
       {"blade_density", s.blade_density},
       {"stipe_length", s.stipe_length}};
}

void from_json(const json& j, ShapeParams& s) {
  s.blade_width = j.at("blade_width").get<double>();
  s.blade_length = j.at("blade_length").get<double>();
  s.blade_density = j.at("blade_density").get<double>();
  s.stipe_length = j.at("stipe_length").get<double>();
}

void to_json(json& j, const SeaweedPlant& p) {
  j = {{"id", p.id},
       {"shape", p.shape},
       {"maturity", p.maturity},
       {"health", p.health},
       {"spawn_tick", p.spawn_tick},
       {"disease_seed", seed_json(p.disease_seed)}};
}

void to_json(json& j, const SwarmState& s) {
  j = {{"plants", s.plants},
       {"capacity", s.capacity},
       {"spawn_accumulator", s.spawn_accumulator},
       {"extinct", s.extinct},
       {"next_id", s.next_id}};
}

void to_json(json& j, const PathologyState& s) {
  j = {{"oomycete_present", s.oomycete_present},
       {"fungi_count", s.fungi_count},
       {"required_fungi", s.required_fungi},
       {"respawn_timer", s.respawn_timer},
       {"swarm_health", s.swarm_health}};
}

void to_json(json& j, const TokenLedger& l) {
  j = {{"inserted_seaweed", l.inserted_seaweed},
       {"inserted_fungi", l.inserted_fungi},
       {"dispensed", l.dispensed},
       {"unsettled_pool", l.unsettled_pool},
       {"settlement_carry", l.settlement_carry}};
}

void to_json(json& j, const SimState& s) {
  j = {{"tick", s.tick},
       {"sim_time", s.sim_time},
       {"eco", s.eco},
       {"swarm", s.swarm},
       {"pathology", s.pathology},
       {"ledger", s.ledger},
       {"current_target", target_label(s.current_target)},
       {"fungi_gallery", s.fungi_gallery},
       {"settlements", s.settlements},
       {"rng_seed", seed_json(s.rng_seed)}};
}

void to_json(json& j, const EngineConfig& c) {
  const auto& p = c.pathology;
  j = {{"dt", c.dt},
       {"seed", seed_json(c.seed)},
       {"eco", c.eco},
       {"growth", {{"g0", c.growth.g0}, {"r0", c.growth.r0}}},
       {"capacity", c.capacity},
       {"initial_fill", c.initial_fill},
       {"reseed_count", c.reseed_count},
       {"price",
        {{"w_width", c.price.w_width},
         {"w_length", c.price.w_length},
         {"w_density", c.price.w_density},
         {"w_stipe", c.price.w_stipe},
         {"disease_penalty", c.price.disease_penalty},
         {"p_max", c.price.p_max}}},
       {"settlement", {{"period", c.settlement.period}}},
       {"pathology",
        {{"r_min", p.r_min},
         {"r_max", p.r_max},
         {"t_min", p.t_min},
         {"t_max", p.t_max},
         {"infected_health", p.infected_health},
         {"e_min", p.e_min},
         {"e_max", p.e_max},
         {"scale_min", p.scale_min},
         {"scale_max", p.scale_max}}},
       {"fungi", {{"penicillium", c.penicillium}, {"aspergillus", c.aspergillus}, {"gallery_limit", c.fungi_gallery_limit}}},
       {"shape_mapping", {{"irradiation_weight", c.shape_mapping.irradiation_weight}}},
       {"model_dir", c.model_dir}};
}

void from_json(const json& j, EngineConfig& c) {
  read(j, "dt", c.dt);
  if (j.contains("seed")) c.seed = seed_value(j.at("seed"));
  read(j, "eco", c.eco);
  if (auto g = j.find("growth"); g != j.end()) {
    read(*g, "g0", c.growth.g0);
    read(*g, "r0", c.growth.r0);
  }
  read(j, "capacity", c.capacity);
  read(j, "initial_fill", c.initial_fill);
  read(j, "reseed_count", c.reseed_count);
  if (auto p = j.find("price"); p != j.end()) {
    read(*p, "w_width", c.price.w_width);
    read(*p, "w_length", c.price.w_length);
    read(*p, "w_density", c.price.w_density);
    read(*p, "w_stipe", c.price.w_stipe);
    read(*p, "disease_penalty", c.price.disease_penalty);
    read(*p, "p_max", c.price.p_max);
  }
  if (auto s = j.find("settlement"); s != j.end()) read(*s, "period", c.settlement.period);
  if (auto p = j.find("pathology"); p != j.end()) {
    auto& pc = c.pathology;
    read(*p, "r_min", pc.r_min);
    read(*p, "r_max", pc.r_max);
    read(*p, "t_min", pc.t_min);
    read(*p, "t_max", pc.t_max);
    read(*p, "infected_health", pc.infected_health);
    read(*p, "e_min", pc.e_min);
    read(*p, "e_max", pc.e_max);
    read(*p, "scale_min", pc.scale_min);
    read(*p, "scale_max", pc.scale_max);
  }
  if (auto f = j.find("fungi"); f != j.end()) {
    read(*f, "penicillium", c.penicillium);
    read(*f, "aspergillus", c.aspergillus);
    read(*f, "gallery_limit", c.fungi_gallery_limit);
  }
  c.penicillium.kind = FungusKind::PenicilliumLike;
  c.aspergillus.kind = FungusKind::AspergillusLike;
  if (auto m = j.find("shape_mapping"); m != j.end()) read(*m, "irradiation_weight", c.shape_mapping.irradiation_weight);
  read(j, "model_dir", c.model_dir);
}

std::string canonical_state(const SimState& s) { return json(s).dump(); }

std::uint64_t state_hash(const SimState& s) { return fnv1a(canonical_state(s)); }

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

EngineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  EngineConfig c;
  try {
    c = json::parse(in).get<EngineConfig>();
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  } catch (const ValidationError& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  const std::filesystem::path models(c.model_dir);
  if (models.is_relative()) c.model_dir = (std::filesystem::path(path).parent_path() / models).lexically_normal().string();
  c.validate();
  return c;
}

std::string config_json(const EngineConfig& c) { return json(c).dump(2); }

json event_to_json(const SimEvent& e) {
  json j = {{"tick", e.tick}, {"kind", event_kind_label(e.kind)}};
  if (e.kind == EventKind::InsertToken && e.target) j["target"] = target_label(*e.target);
  return j;
}

SimEvent event_from_json(const json& j, bool require_tick) {
  if (!j.is_object()) throw ValidationError("event must be a JSON object");
  SimEvent e;
  const auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) throw ValidationError("event: missing string field 'kind'");
  e.kind = event_kind_from_label(kind->get<std::string>());

  if (auto t = j.find("tick"); t != j.end()) {
    if (!t->is_number_unsigned()) throw ValidationError("event: 'tick' must be a non-negative integer");
    e.tick = t->get<std::uint64_t>();
  } else if (require_tick) {
    throw ValidationError("event: missing 'tick'");
  }

  if (auto t = j.find("target"); t != j.end()) {
    if (e.kind != EventKind::InsertToken) throw ValidationError("event: only insert_token takes a target");
    if (!t->is_string()) throw ValidationError("event: 'target' must be a string");
    e.target = target_from_label(t->get<std::string>());
  }
  return e;
}

std::vector<SimEvent> read_trace(std::istream& in) {
  std::vector<SimEvent> trace;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      trace.push_back(event_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ValidationError("trace line " + std::to_string(lineno) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return trace;
}

std::vector<SimEvent> read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open trace '" + path + "'");
  return read_trace(in);
}

void append_trace_line(std::ostream& out, const SimEvent& e) { out << event_to_json(e).dump() << '\n'; }

void write_trace(std::ostream& out, const std::vector<SimEvent>& trace) {
  for (const auto& e : trace) append_trace_line(out, e);
}

}  // namespace benefit
