#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "benefit/engine.hpp"

namespace benefit {

// ADL hooks so `nlohmann::json j = value;` and `j.get<T>()` work for the
// domain types. Config-type readers fall back to defaults for missing keys.
void to_json(nlohmann::json& j, const NaturalFactors& f);
void from_json(const nlohmann::json& j, NaturalFactors& f);
void to_json(nlohmann::json& j, const EcoConfig& c);
void from_json(const nlohmann::json& j, EcoConfig& c);
void to_json(nlohmann::json& j, const EcoState& s);
void to_json(nlohmann::json& j, const FungusSpecies& s);
void from_json(const nlohmann::json& j, FungusSpecies& s);
void to_json(nlohmann::json& j, const FungusTree& t);
void from_json(const nlohmann::json& j, FungusTree& t);
void to_json(nlohmann::json& j, const GeometryDescriptor& g);
void from_json(const nlohmann::json& j, GeometryDescriptor& g);
void to_json(nlohmann::json& j, const SeaweedPlant& p);
void to_json(nlohmann::json& j, const SwarmState& s);
void to_json(nlohmann::json& j, const PathologyState& s);
void to_json(nlohmann::json& j, const TokenLedger& l);
void to_json(nlohmann::json& j, const ShapeParams& s);
void from_json(const nlohmann::json& j, ShapeParams& s);
void to_json(nlohmann::json& j, const SimState& s);
void to_json(nlohmann::json& j, const EngineConfig& c);
void from_json(const nlohmann::json& j, EngineConfig& c);

// Canonical serialisation: sorted keys, compact, shortest round-trip doubles.
std::string canonical_state(const SimState& s);
std::uint64_t state_hash(const SimState& s);
std::string hash_hex(std::uint64_t h);

// Reads a config file; a relative model_dir is resolved against the file's
// directory. Throws ConfigError.
EngineConfig load_config(const std::string& path);
std::string config_json(const EngineConfig& c);

// JSON-lines trace, one event per line:
//   {"tick":12,"kind":"insert_token","target":"seaweed"}
// `target` is optional for insert_token and absent for the other kinds.
nlohmann::json event_to_json(const SimEvent& e);
// Throws ValidationError. When `require_tick` is false a missing tick reads as 0.
SimEvent event_from_json(const nlohmann::json& j, bool require_tick = true);

std::vector<SimEvent> read_trace(std::istream& in);
std::vector<SimEvent> read_trace_file(const std::string& path);
void write_trace(std::ostream& out, const std::vector<SimEvent>& trace);
void append_trace_line(std::ostream& out, const SimEvent& e);

}  // namespace benefit
