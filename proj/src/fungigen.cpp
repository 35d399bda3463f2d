#include "benefit/fungigen.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "benefit/errors.hpp"
#include "benefit/hash.hpp"
#include "benefit/rng.hpp"

namespace benefit {

namespace {

double draw(Rng& rng, const Interval<double>& iv) { return rng.uniform(iv.min, iv.max); }
int draw(Rng& rng, const Interval<int>& iv) { return rng.uniform_int(iv.min, iv.max); }

// Angle of child i of n across a fan of width `spread`, centred on the parent.
double fan_angle(int i, int n, double spread) {
  if (n == 1) return 0.0;
  return -0.5 * spread + spread * static_cast<double>(i) / static_cast<double>(n - 1);
}

template <typename T>
void check(const Interval<T>& iv, const char* name) {
  if (!(iv.min <= iv.max)) throw ConfigError(std::string("fungus species: inverted interval ") + name);
}

struct Frame {
  Point origin;
  double heading;  // radians from +y toward +x
};

Point advance(const Frame& f, double distance) {
  return {f.origin.x + std::sin(f.heading) * distance, f.origin.y + std::cos(f.heading) * distance};
}

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

std::string_view fungus_kind_label(FungusKind k) noexcept {
  return k == FungusKind::AspergillusLike ? "aspergillus" : "penicillium";
}

FungusKind fungus_kind_from_label(std::string_view label) {
  if (label == "penicillium") return FungusKind::PenicilliumLike;
  if (label == "aspergillus") return FungusKind::AspergillusLike;
  throw ValidationError("unknown fungus kind '" + std::string(label) + "'");
}

void FungusSpecies::validate() const {
  check(metula_count, "metula_count");
  check(phialide_count, "phialide_count");
  check(conidia_count, "conidia_count");
  check(stipe_length, "stipe_length");
  check(metula_length, "metula_length");
  check(phialide_length, "phialide_length");
  check(branch_angle_spread, "branch_angle_spread");
  check(stipe_thickness, "stipe_thickness");
  check(metula_thickness, "metula_thickness");
  check(phialide_thickness, "phialide_thickness");
  check(conidium_radius, "conidium_radius");
  if (metula_count.min < 1 || phialide_count.min < 1 || conidia_count.min < 1) {
    throw ConfigError("fungus species: child counts must be positive");
  }
}

FungusSpecies penicillium_like() { return FungusSpecies{}; }

FungusSpecies aspergillus_like() {
  FungusSpecies s;
  s.kind = FungusKind::AspergillusLike;
  s.conidia_count = {6, 12};
  s.stipe_length = {0.7, 1.0};
  s.metula_length = {0.15, 0.3};
  s.branch_angle_spread = {40.0, 70.0};
  s.conidium_radius = {0.015, 0.028};
  return s;
}

FungusTree generate_fungus(const FungusSpecies& species, std::uint64_t seed) {
  Rng rng(seed);
  FungusTree t;
  t.kind = species.kind;
  t.seed = seed;

  t.stipe.length = draw(rng, species.stipe_length);
  t.stipe.thickness = draw(rng, species.stipe_thickness);
  t.stipe.angle = 0.0;
  const int metula_n = draw(rng, species.metula_count);
  const double metula_spread = draw(rng, species.branch_angle_spread);
  t.metula_spread = metula_spread;

  t.metulae.resize(static_cast<std::size_t>(metula_n));
  std::vector<int> phialide_n(t.metulae.size());
  for (std::size_t m = 0; m < t.metulae.size(); ++m) {
    auto& b = t.metulae[m].branch;
    b.length = draw(rng, species.metula_length);
    b.thickness = draw(rng, species.metula_thickness);
    b.angle = fan_angle(static_cast<int>(m), metula_n, metula_spread);
    phialide_n[m] = draw(rng, species.phialide_count);
    t.metulae[m].phialide_spread = draw(rng, species.branch_angle_spread);
  }

  std::vector<int> conidia_n;
  for (std::size_t m = 0; m < t.metulae.size(); ++m) {
    auto& phialides = t.metulae[m].phialides;
    phialides.resize(static_cast<std::size_t>(phialide_n[m]));
    for (std::size_t p = 0; p < phialides.size(); ++p) {
      auto& b = phialides[p].branch;
      b.length = draw(rng, species.phialide_length);
      b.thickness = draw(rng, species.phialide_thickness);
      b.angle = fan_angle(static_cast<int>(p), phialide_n[m], t.metulae[m].phialide_spread);
      conidia_n.push_back(draw(rng, species.conidia_count));
    }
  }

  std::size_t k = 0;
  for (auto& metula : t.metulae) {
    for (auto& phialide : metula.phialides) {
      const int n = conidia_n[k++];
      phialide.conidia.resize(static_cast<std::size_t>(n));
      double chain = 0.0;
      for (int c = 0; c < n; ++c) {
        auto& con = phialide.conidia[static_cast<std::size_t>(c)];
        con.radius = draw(rng, species.conidium_radius);
        if (species.kind == FungusKind::PenicilliumLike) {
          con.offset = chain + con.radius;
          con.angle = 0.0;
          chain += 2.0 * con.radius;
        } else {
          con.offset = con.radius;
          con.angle = fan_angle(c, n, 180.0);
        }
      }
    }
  }
  return t;
}

GeometryDescriptor fungus_geometry(const FungusTree& t) {
  GeometryDescriptor g;
  const Frame root{{0.0, 0.0}, 0.0};
  const Point stipe_tip = advance(root, t.stipe.length);
  g.segments.push_back({root.origin, stipe_tip, t.stipe.thickness, 0, -1});

  std::vector<Frame> metula_tips;
  for (const auto& m : t.metulae) {
    const Frame f{stipe_tip, radians(m.branch.angle)};
    const Point tip = advance(f, m.branch.length);
    g.segments.push_back({f.origin, tip, m.branch.thickness, 1, 0});
    metula_tips.push_back({tip, f.heading});
  }

  struct PhialideTip {
    Frame frame;
    int segment;
  };
  std::vector<PhialideTip> phialide_tips;
  for (std::size_t mi = 0; mi < t.metulae.size(); ++mi) {
    const int parent = static_cast<int>(1 + mi);
    for (const auto& p : t.metulae[mi].phialides) {
      const Frame f{metula_tips[mi].origin, metula_tips[mi].heading + radians(p.branch.angle)};
      const Point tip = advance(f, p.branch.length);
      phialide_tips.push_back({{tip, f.heading}, static_cast<int>(g.segments.size())});
      g.segments.push_back({f.origin, tip, p.branch.thickness, 2, parent});
    }
  }

  std::size_t k = 0;
  for (const auto& m : t.metulae) {
    for (const auto& p : m.phialides) {
      const auto& tip = phialide_tips[k++];
      for (const auto& c : p.conidia) {
        const Frame f{tip.frame.origin, tip.frame.heading + radians(c.angle)};
        g.circles.push_back({advance(f, c.offset), c.radius, tip.segment});
      }
    }
  }
  return g;
}

std::uint64_t structural_hash(const FungusTree& t) {
  Fnv1a h;
  h.add(static_cast<std::uint64_t>(t.kind));
  h.add(t.metula_spread);
  const auto branch = [&h](const Branch& b) {
    h.add(b.length);
    h.add(b.thickness);
    h.add(b.angle);
  };
  branch(t.stipe);
  h.add(static_cast<std::uint64_t>(t.metulae.size()));
  for (const auto& m : t.metulae) {
    branch(m.branch);
    h.add(m.phialide_spread);
    h.add(static_cast<std::uint64_t>(m.phialides.size()));
    for (const auto& p : m.phialides) {
      branch(p.branch);
      h.add(static_cast<std::uint64_t>(p.conidia.size()));
      for (const auto& c : p.conidia) {
        h.add(c.radius);
        h.add(c.offset);
        h.add(c.angle);
      }
    }
  }
  return h.value();
}

}  // namespace benefit
