#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "benefit/ecology.hpp"
#include "benefit/errors.hpp"
#include "support/oracles.hpp"

using namespace benefit;

namespace {

double ref_ei(double c, const EcoConfig& k) { return oracle::ei(c, k.a1, k.a2, k.c1, k.c2, k.cycle); }

}  // namespace

TEST_CASE("ei at named points") {
  const EcoConfig cfg;
  CHECK(ei_from_insertions(0, cfg) == 0.0);
  CHECK(ei_from_insertions(40, cfg) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ei_from_insertions(100, cfg) == doctest::Approx(-0.5 * std::sin(M_PI * 20.0 / 40.0)).epsilon(1e-12));
  CHECK(ei_from_insertions(100, cfg) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(ei_from_insertions(80, cfg) == 0.0);
}

TEST_CASE("ei matches the prose formula at every integer count") {
  EcoConfig cfg;
  for (int c = 0; c < cfg.cycle; ++c) CHECK(ei_from_insertions(c, cfg) == doctest::Approx(ref_ei(c, cfg)).epsilon(1e-12));

  cfg.a1 = 2.0;
  cfg.a2 = 0.7;
  cfg.c1 = 10;
  cfg.c2 = 55;
  cfg.cycle = 64;
  for (int c = 0; c < cfg.cycle; ++c) {
    CHECK(ei_from_insertions(c, cfg) == doctest::Approx(ref_ei(c, cfg)).epsilon(1e-12));
    CHECK(ei_curve(c, cfg) == ei_from_insertions(c, cfg));
  }
}

TEST_CASE("ei is defined on [0, cycle) only") {
  const EcoConfig cfg;
  CHECK_THROWS_AS(ei_from_insertions(-1, cfg), std::domain_error);
  CHECK_THROWS_AS(ei_from_insertions(120, cfg), std::domain_error);
  CHECK_THROWS_AS(stage_of(120, cfg), std::domain_error);
  CHECK_THROWS_AS(stage_of(-3, cfg), std::domain_error);
}

TEST_CASE("curve is continuous at both joints and across the wrap") {
  const EcoConfig cfg;
  const double eps = 1e-6;
  for (double joint : {double(cfg.c1), double(cfg.c2)}) {
    CHECK(std::abs(ei_curve(joint - eps, cfg) - ei_curve(joint + eps, cfg)) < 1e-4);
  }
  CHECK(std::abs(ei_curve(cfg.cycle - eps, cfg) - ei_curve(0.0 + eps, cfg)) < 1e-4);
  CHECK(ei_curve(cfg.cycle, cfg) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sign structure over one cycle") {
  const EcoConfig cfg;
  for (int c = 1; c < cfg.c2; ++c) CHECK(ei_from_insertions(c, cfg) > 0.0);
  for (int c = cfg.c2; c < cfg.cycle; ++c) CHECK(ei_from_insertions(c, cfg) <= 0.0);
}

TEST_CASE("stages") {
  const EcoConfig cfg;
  CHECK(stage_of(0, cfg) == Stage::Prosperity);
  CHECK(stage_of(40, cfg) == Stage::Prosperity);
  CHECK(stage_of(41, cfg) == Stage::Decline);
  CHECK(stage_of(80, cfg) == Stage::Decline);
  CHECK(stage_of(81, cfg) == Stage::Crisis);
  CHECK(stage_of(119, cfg) == Stage::Crisis);
  for (auto s : {Stage::Prosperity, Stage::Decline, Stage::Crisis}) CHECK(stage_from_label(stage_label(s)) == s);
}

TEST_CASE("periodicity through repeated insertions") {
  const EcoConfig cfg;
  EcoState s = make_eco_state(0, 0, cfg);
  std::vector<double> first;
  for (int k = 0; k < 3 * cfg.cycle; ++k) {
    if (k < cfg.cycle) first.push_back(s.ei);
    CHECK(s.ei == first[static_cast<std::size_t>(k % cfg.cycle)]);
    CHECK(s.ei == ei_from_insertions(s.insertions_in_cycle, cfg));
    CHECK(s.stage == stage_of(s.insertions_in_cycle, cfg));
    CHECK(s.total_insertions == static_cast<std::uint64_t>(k));
    s = advance_insertion(s, cfg);
  }
  CHECK(s.insertions_in_cycle == 0);
}

TEST_CASE("factors at the ends of the EI range") {
  const EcoConfig cfg;
  const NaturalFactors base = factors_from_ei(0.0, cfg);
  const NaturalFactors top = factors_from_ei(cfg.a1, cfg);
  const NaturalFactors low = factors_from_ei(-cfg.a2, cfg);
  for (Factor f : kAllFactors) {
    const auto& r = cfg.range(f);
    CHECK(base[f] == r.baseline);
    CHECK(top[f] == doctest::Approx(r.max).epsilon(1e-12));
    CHECK(low[f] == doctest::Approx(r.baseline - 0.5 * (r.baseline - r.min)).epsilon(1e-12));
  }
  // Hand evaluation for temperature: 10 - 0.5 * (10 - 4) = 7.
  CHECK(low[Factor::WaterTemperature] == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("factors are monotone in ei and stay in range") {
  const EcoConfig cfg;
  NaturalFactors prev = factors_from_ei(-cfg.a2, cfg);
  for (int k = 1; k <= 1000; ++k) {
    const double ei = -cfg.a2 + (cfg.a1 + cfg.a2) * k / 1000.0;
    const NaturalFactors cur = factors_from_ei(ei, cfg);
    for (Factor f : kAllFactors) {
      CHECK(cur[f] >= prev[f]);
      CHECK(cur[f] >= cfg.range(f).min);
      CHECK(cur[f] <= cfg.range(f).max);
    }
    prev = cur;
  }
  // Out-of-range EI is clamped, not rejected.
  CHECK(factors_from_ei(5.0, cfg) == factors_from_ei(cfg.a1, cfg));
}

TEST_CASE("config validation") {
  EcoConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.c1 = 90;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.a2 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.factor_ranges[1].baseline = 40.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("factor labels round-trip") {
  for (Factor f : kAllFactors) CHECK(factor_from_label(factor_label(f)) == f);
  CHECK_THROWS(factor_from_label("temperature"));
}
