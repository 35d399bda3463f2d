#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace benefit {

enum class Factor : std::size_t {
  WaterTemperature = 0,
  Salinity,
  FlowVelocity,
  Irradiation,
  NutrientConcentration,
};

inline constexpr std::size_t kFactorCount = 5;

inline constexpr std::array<Factor, kFactorCount> kAllFactors = {
    Factor::WaterTemperature, Factor::Salinity, Factor::FlowVelocity, Factor::Irradiation,
    Factor::NutrientConcentration};

// Stable labels used in file names and JSON.
std::string_view factor_label(Factor f) noexcept;
Factor factor_from_label(std::string_view label);

enum class Stage { Prosperity, Decline, Crisis };

std::string_view stage_label(Stage s) noexcept;
Stage stage_from_label(std::string_view label);

struct FactorRange {
  double min = 0.0;
  double max = 1.0;
  double baseline = 0.5;
  bool operator==(const FactorRange&) const = default;
};

// Water temperature (degC), salinity (PSU), flow velocity (m/s),
// irradiation (umol photons m^-2 s^-1), nutrient concentration (umol/L).
struct NaturalFactors {
  std::array<double, kFactorCount> values{};

  double& operator[](Factor f) { return values[static_cast<std::size_t>(f)]; }
  double operator[](Factor f) const { return values[static_cast<std::size_t>(f)]; }
  bool operator==(const NaturalFactors&) const = default;
};

struct EcoConfig {
  double a1 = 1.0;  // prosperity peak
  double a2 = 0.5;  // crisis trough depth
  int c1 = 40;      // last insertion of the prosperity stage
  int c2 = 80;      // last insertion of the decline stage
  int cycle = 120;
  std::array<FactorRange, kFactorCount> factor_ranges = {{
      {4.0, 16.0, 10.0},
      {20.0, 35.0, 30.0},
      {0.05, 0.5, 0.2},
      {20.0, 180.0, 80.0},
      {2.0, 25.0, 10.0},
  }};

  const FactorRange& range(Factor f) const { return factor_ranges[static_cast<std::size_t>(f)]; }

  // Throws ConfigError when an invariant is violated.
  void validate() const;
  bool operator==(const EcoConfig&) const = default;
};

struct EcoState {
  int insertions_in_cycle = 0;
  std::uint64_t total_insertions = 0;
  double ei = 0.0;
  Stage stage = Stage::Prosperity;
  NaturalFactors factors;
  bool operator==(const EcoState&) const = default;
};

// Ecological index after `c` seaweed insertions into the current cycle.
//   prosperity  c in [0, c1]:      a1 sin(pi c / (2 c1))
//   decline     c in (c1, c2]:     a1 sin(pi (c2 - c) / (2 (c2 - c1)))
//   crisis      c in (c2, cycle):  -a2 sin(pi (c - c2) / (cycle - c2))
// The decline arm is the quarter-cosine written as a sine so that the value
// at c2 is exactly zero. Throws std::domain_error outside [0, cycle).
double ei_from_insertions(int c, const EcoConfig& cfg);

// Continuous extension of the same curve on [0, cycle]; ei_curve(cycle) == 0.
double ei_curve(double c, const EcoConfig& cfg);

// Throws std::domain_error outside [0, cycle).
Stage stage_of(int c, const EcoConfig& cfg);

// Each factor moves from its baseline toward max (ei > 0) or min (ei < 0) in
// proportion to u = clamp(ei / a1, -1, 1).
NaturalFactors factors_from_ei(double ei, const EcoConfig& cfg);

EcoState make_eco_state(int insertions_in_cycle, std::uint64_t total_insertions, const EcoConfig& cfg);

// One seaweed-target insertion: advances the cycle counter modulo `cycle`.
EcoState advance_insertion(const EcoState& s, const EcoConfig& cfg);

}  // namespace benefit
