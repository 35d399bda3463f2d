#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "benefit/geometry.hpp"

namespace benefit {

enum class FungusKind { PenicilliumLike, AspergillusLike };

std::string_view fungus_kind_label(FungusKind k) noexcept;
FungusKind fungus_kind_from_label(std::string_view label);

template <typename T>
struct Interval {
  T min{};
  T max{};
  bool contains(T v) const { return min <= v && v <= max; }
  bool operator==(const Interval&) const = default;
};

// Generation rules: every drawn quantity comes from one of these intervals.
struct FungusSpecies {
  FungusKind kind = FungusKind::PenicilliumLike;
  Interval<int> metula_count{2, 5};
  Interval<int> phialide_count{2, 5};  // per metula
  Interval<int> conidia_count{3, 8};   // per phialide
  Interval<double> stipe_length{0.6, 1.0};
  Interval<double> metula_length{0.2, 0.4};
  Interval<double> phialide_length{0.1, 0.2};
  Interval<double> branch_angle_spread{20.0, 70.0};  // degrees, full fan width
  Interval<double> stipe_thickness{0.04, 0.07};
  Interval<double> metula_thickness{0.025, 0.04};
  Interval<double> phialide_thickness{0.012, 0.025};
  Interval<double> conidium_radius{0.012, 0.024};

  // Throws ConfigError if an interval is inverted or a count is not positive.
  void validate() const;
  bool operator==(const FungusSpecies&) const = default;
};

FungusSpecies penicillium_like();
FungusSpecies aspergillus_like();

struct Branch {
  double length = 0.0;
  double thickness = 0.0;
  double angle = 0.0;  // degrees relative to the parent axis
  bool operator==(const Branch&) const = default;
};

struct Conidium {
  double radius = 0.0;
  double offset = 0.0;  // distance of the centre beyond the phialide tip
  double angle = 0.0;   // degrees relative to the phialide axis
  bool operator==(const Conidium&) const = default;
};

struct Phialide {
  Branch branch;
  std::vector<Conidium> conidia;
  bool operator==(const Phialide&) const = default;
};

struct Metula {
  Branch branch;
  double phialide_spread = 0.0;  // drawn fan width (degrees)
  std::vector<Phialide> phialides;
  bool operator==(const Metula&) const = default;
};

// stipe -> metulae -> phialides -> conidia; the nesting is the level discipline.
struct FungusTree {
  FungusKind kind = FungusKind::PenicilliumLike;
  std::uint64_t seed = 0;
  Branch stipe;
  std::vector<Metula> metulae;
  double metula_spread = 0.0;  // drawn fan width (degrees)
  bool operator==(const FungusTree&) const = default;
};

// Deterministic in (species, seed). Draw order, level by level:
//   1. stipe: length, thickness, metula count, metula fan spread
//   2. each metula in index order: length, thickness, phialide count, phialide fan spread
//   3. each phialide (metula-major): length, thickness, conidia count
//   4. each conidium (phialide-major): radius
// Children are fanned symmetrically about the parent axis across the drawn
// spread. Penicillium-like conidia form a chain along the phialide axis;
// Aspergillus-like conidia radiate around the tip.
FungusTree generate_fungus(const FungusSpecies& species, std::uint64_t seed);

// Stipe rises from the origin along +y. Segments are emitted stipe, metulae,
// phialides (each level in generation order) with parent indices; conidia are
// circles whose parent is their phialide's segment.
GeometryDescriptor fungus_geometry(const FungusTree& t);

// FNV-1a over the tree's structure and drawn parameters (not the seed).
std::uint64_t structural_hash(const FungusTree& t);

}  // namespace benefit
