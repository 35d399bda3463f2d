#include "benefit/ecology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "benefit/errors.hpp"

namespace benefit {

namespace {

constexpr std::array<std::string_view, kFactorCount> kFactorLabels = {
    "water_temperature", "salinity", "flow_velocity", "irradiation", "nutrient_concentration"};

void check_count(int c, const EcoConfig& cfg) {
  if (c < 0 || c >= cfg.cycle) {
    throw std::domain_error("insertion count " + std::to_string(c) + " outside [0, " +
                            std::to_string(cfg.cycle) + ")");
  }
}

}  // namespace

std::string_view factor_label(Factor f) noexcept { return kFactorLabels[static_cast<std::size_t>(f)]; }

Factor factor_from_label(std::string_view label) {
  for (std::size_t i = 0; i < kFactorCount; ++i) {
    if (kFactorLabels[i] == label) return static_cast<Factor>(i);
  }
  throw ValidationError("unknown factor '" + std::string(label) + "'");
}

std::string_view stage_label(Stage s) noexcept {
  switch (s) {
    case Stage::Prosperity:
      return "prosperity";
    case Stage::Decline:
      return "decline";
    case Stage::Crisis:
      return "crisis";
  }
  return "prosperity";
}

Stage stage_from_label(std::string_view label) {
  if (label == "prosperity") return Stage::Prosperity;
  if (label == "decline") return Stage::Decline;
  if (label == "crisis") return Stage::Crisis;
  throw ValidationError("unknown stage '" + std::string(label) + "'");
}

void EcoConfig::validate() const {
  if (!(0 < c1 && c1 < c2 && c2 < cycle)) throw ConfigError("eco: require 0 < c1 < c2 < cycle");
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw ConfigError("eco: amplitudes must be positive");
  for (std::size_t i = 0; i < kFactorCount; ++i) {
    const auto& r = factor_ranges[i];
    if (!(r.min < r.max) || !(r.min <= r.baseline && r.baseline <= r.max)) {
      throw ConfigError("eco: bad range for " + std::string(kFactorLabels[i]));
    }
  }
}

double ei_curve(double c, const EcoConfig& cfg) {
  constexpr double pi = std::numbers::pi;
  const double c1 = cfg.c1;
  const double c2 = cfg.c2;
  const double cycle = cfg.cycle;
  if (c <= c1) return cfg.a1 * std::sin(pi * c / (2.0 * c1));
  if (c <= c2) return cfg.a1 * std::sin(pi * (c2 - c) / (2.0 * (c2 - c1)));
  return -cfg.a2 * std::sin(pi * (c - c2) / (cycle - c2));
}

double ei_from_insertions(int c, const EcoConfig& cfg) {
  check_count(c, cfg);
  return ei_curve(static_cast<double>(c), cfg);
}

Stage stage_of(int c, const EcoConfig& cfg) {
  check_count(c, cfg);
  if (c <= cfg.c1) return Stage::Prosperity;
  if (c <= cfg.c2) return Stage::Decline;
  return Stage::Crisis;
}

NaturalFactors factors_from_ei(double ei, const EcoConfig& cfg) {
  const double u = std::clamp(ei / cfg.a1, -1.0, 1.0);
  NaturalFactors out;
  for (std::size_t i = 0; i < kFactorCount; ++i) {
    const auto& r = cfg.factor_ranges[i];
    const double span = u >= 0.0 ? (r.max - r.baseline) : (r.baseline - r.min);
    out.values[i] = std::clamp(r.baseline + span * u, r.min, r.max);
  }
  return out;
}

EcoState make_eco_state(int insertions_in_cycle, std::uint64_t total_insertions, const EcoConfig& cfg) {
  EcoState s;
  s.insertions_in_cycle = insertions_in_cycle;
  s.total_insertions = total_insertions;
  s.ei = ei_from_insertions(insertions_in_cycle, cfg);
  s.stage = stage_of(insertions_in_cycle, cfg);
  s.factors = factors_from_ei(s.ei, cfg);
  return s;
}

EcoState advance_insertion(const EcoState& s, const EcoConfig& cfg) {
  return make_eco_state((s.insertions_in_cycle + 1) % cfg.cycle, s.total_insertions + 1, cfg);
}

}  // namespace benefit
