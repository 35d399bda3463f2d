#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "benefit/engine.hpp"
#include "benefit/noise.hpp"

namespace benefit {

inline constexpr const char* kSnapshotSchema = "benefit.snapshot/1";
inline constexpr int kSnapshotMaskResolution = 64;

struct PlantView {
  std::uint64_t id = 0;
  ShapeParams shape;
  double maturity = 0.0;
  double health = 1.0;
  DiseaseMaskParams mask;
  double mask_fraction = 0.0;  // engine-side lit fraction on a 64 x 64 grid
  GeometryDescriptor geometry;
  bool operator==(const PlantView&) const = default;
};

struct FungusView {
  FungusKind kind = FungusKind::PenicilliumLike;
  std::uint64_t seed = 0;
  GeometryDescriptor geometry;
  bool operator==(const FungusView&) const = default;
};

struct LedgerView {
  std::uint64_t inserted_seaweed = 0;
  std::uint64_t inserted_fungi = 0;
  std::uint64_t dispensed = 0;
  double unsettled_profit = 0.0;
  std::uint64_t unsettled_harvests = 0;
  double settlement_carry = 0.0;
  bool operator==(const LedgerView&) const = default;
};

// What the UI renders. Built from the engine, never fed back into it.
struct Snapshot {
  std::uint64_t tick = 0;
  double sim_time = 0.0;
  double ei = 0.0;
  Stage stage = Stage::Prosperity;
  int insertions_in_cycle = 0;
  int cycle = 120;
  NaturalFactors factors;
  double growth_rate = 0.0;  // maturity per second right now
  std::vector<PlantView> plants;
  int capacity = 0;
  bool extinct = false;
  std::vector<FungusView> fungi_gallery;
  PathologyState pathology;
  LedgerView ledger;
  Target current_target = Target::Seaweed;
  double settlement_countdown = 0.0;
  double settlement_period = 0.0;
  std::string state_hash;
  bool operator==(const Snapshot&) const = default;
};

Snapshot make_snapshot(const Engine& engine);

void to_json(nlohmann::json& j, const Snapshot& s);
void from_json(const nlohmann::json& j, Snapshot& s);

std::string snapshot_json(const Snapshot& s);

}  // namespace benefit
