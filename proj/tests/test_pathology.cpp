#include <doctest.h>

#include "benefit/errors.hpp"
#include "benefit/pathology.hpp"
#include "support/gen.hpp"

using namespace benefit;

namespace {

const EcoConfig kEco;
const PathologyConfig kCfg;

PathologyState infected(int required) {
  PathologyState st;
  st.oomycete_present = true;
  st.required_fungi = required;
  st.swarm_health = kCfg.infected_health;
  return st;
}

// EI at which the linear map yields exactly `required` fungi.
double ei_for_required(int required) {
  const double t = static_cast<double>(required - kCfg.r_min) / (kCfg.r_max - kCfg.r_min);
  return kEco.a1 - t * (kEco.a1 + kEco.a2);
}

}  // namespace

TEST_CASE("required fungi") {
  CHECK(required_fungi(kEco.a1, kEco, kCfg) == 2);
  CHECK(required_fungi(-kEco.a2, kEco, kCfg) == 10);
  // Midpoint of [-0.5, 1] is 0.25; 2 + 8 * 0.5 = 6.
  CHECK(required_fungi((kEco.a1 - kEco.a2) / 2.0, kEco, kCfg) == 6);
  // Just above the midpoint rounds up.
  CHECK(required_fungi(0.24, kEco, kCfg) == 7);
  CHECK(required_fungi(5.0, kEco, kCfg) == 2);
  CHECK(required_fungi(-5.0, kEco, kCfg) == 10);
}

TEST_CASE("respawn delay") {
  CHECK(respawn_delay(-kEco.a2, kEco, kCfg) == doctest::Approx(15.0));
  CHECK(respawn_delay(kEco.a1, kEco, kCfg) == doctest::Approx(90.0));
  CHECK(respawn_delay((kEco.a1 - kEco.a2) / 2.0, kEco, kCfg) == doctest::Approx(52.5));
}

TEST_CASE("monotone couplings to EI") {
  int prev_req = 1 << 30;
  double prev_delay = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double ei = -kEco.a2 + (kEco.a1 + kEco.a2) * k / 1000.0;
    const int req = required_fungi(ei, kEco, kCfg);
    const double delay = respawn_delay(ei, kEco, kCfg);
    CHECK(req <= prev_req);
    CHECK(delay >= prev_delay);
    CHECK(req >= kCfg.r_min);
    CHECK(req <= kCfg.r_max);
    prev_req = req;
    prev_delay = delay;
  }
}

TEST_CASE("cultivating raises health in proportion") {
  const double ei = ei_for_required(4);
  REQUIRE(required_fungi(ei, kEco, kCfg) == 4);
  PathologyState st = cultivate_fungus(infected(4), ei, kEco, kCfg);
  CHECK(st.fungi_count == 1);
  CHECK(st.swarm_health == doctest::Approx(0.25));
  CHECK(st.oomycete_present);
}

TEST_CASE("the required count kills the oomycete") {
  const double ei = ei_for_required(4);
  PathologyState st = infected(4);
  st.fungi_count = 3;
  st = cultivate_fungus(st, ei, kEco, kCfg);
  CHECK_FALSE(st.oomycete_present);
  CHECK(st.swarm_health == 1.0);
  CHECK(st.fungi_count == 0);
  CHECK(st.respawn_timer == doctest::Approx(respawn_delay(ei, kEco, kCfg)));
}

TEST_CASE("cultivating with no oomycete leaves health alone") {
  PathologyState st;
  st.oomycete_present = false;
  st.swarm_health = 1.0;
  st.respawn_timer = 30.0;
  const PathologyState after = cultivate_fungus(st, 0.3, kEco, kCfg);
  CHECK(after.swarm_health == 1.0);
  CHECK_FALSE(after.oomycete_present);
  CHECK(after.respawn_timer == 30.0);
  CHECK(after.fungi_count == 1);
}

TEST_CASE("respawn timer") {
  PathologyState st;
  st.oomycete_present = false;
  st.swarm_health = 1.0;

  st.respawn_timer = 20.0;
  PathologyState a = pathology_tick(st, 0.0, 10.0, kEco, kCfg);
  CHECK_FALSE(a.oomycete_present);
  CHECK(a.respawn_timer == doctest::Approx(10.0));

  st.respawn_timer = 5.0;
  st.fungi_count = 3;
  PathologyState b = pathology_tick(st, -0.5, 10.0, kEco, kCfg);
  CHECK(b.oomycete_present);
  CHECK(b.swarm_health == doctest::Approx(0.3));
  CHECK(b.fungi_count == 0);
  CHECK(b.required_fungi == 10);
  CHECK(b.respawn_timer == 0.0);

  PathologyState present = infected(5);
  present.respawn_timer = 0.0;
  CHECK(pathology_tick(present, 0.0, 10.0, kEco, kCfg) == present);
}

TEST_CASE("infect, cure, respawn scenario") {
  const double ei = 0.25;  // needs 6 fungi, respawns after 52.5 s
  PathologyState st = initial_pathology(ei, kEco, kCfg);
  CHECK(st.oomycete_present);
  CHECK(st.swarm_health == doctest::Approx(0.3));
  CHECK(st.required_fungi == 6);

  for (int k = 1; k < 6; ++k) {
    st = cultivate_fungus(st, ei, kEco, kCfg);
    CHECK(st.oomycete_present);
    CHECK(st.swarm_health == doctest::Approx(k / 6.0));
  }
  st = cultivate_fungus(st, ei, kEco, kCfg);
  CHECK_FALSE(st.oomycete_present);
  CHECK(st.swarm_health == 1.0);

  // Healthy until the timer fires, then infected again.
  const double dt = 0.1;
  int ticks = 0;
  while (!st.oomycete_present) {
    CHECK(st.swarm_health == 1.0);
    st = pathology_tick(st, ei, dt, kEco, kCfg);
    ++ticks;
    REQUIRE(ticks < 10000);
  }
  CHECK(ticks == doctest::Approx(525).epsilon(0.005));
  CHECK(st.swarm_health == doctest::Approx(0.3));
  CHECK(st.required_fungi == 6);
}

TEST_CASE("state invariants under random play") {
  gen::Gen g(17);
  PathologyState st = initial_pathology(0.0, kEco, kCfg);
  for (int k = 0; k < 20000; ++k) {
    const double ei = g.real(-kEco.a2, kEco.a1);
    st = g.coin(0.3) ? cultivate_fungus(st, ei, kEco, kCfg) : pathology_tick(st, ei, 0.1, kEco, kCfg);
    CHECK(st.required_fungi >= 1);
    CHECK(st.swarm_health >= 0.0);
    CHECK(st.swarm_health <= 1.0);
    CHECK(st.respawn_timer >= 0.0);
    if (!st.oomycete_present) CHECK(st.swarm_health == 1.0);
  }
}

TEST_CASE("mask parameters from health") {
  const auto full = mask_params_from_health(1.0, 7, kCfg);
  CHECK(full.edge == doctest::Approx(0.95));
  CHECK(full.noise_scale == doctest::Approx(8.0));
  CHECK(full.seed == 7);
  const auto none = mask_params_from_health(0.0, 7, kCfg);
  CHECK(none.edge == doctest::Approx(0.35));
  CHECK(none.noise_scale == doctest::Approx(2.0));
  const auto half = mask_params_from_health(0.5, 7, kCfg);
  CHECK(half.edge == doctest::Approx(0.65));
  CHECK(half.noise_scale == doctest::Approx(5.0));
}

TEST_CASE("healthier plants show fewer lit cells") {
  for (std::uint64_t seed : {4ull, 40ull, 400ull}) {
    const double sick = disease_mask_fraction(mask_params_from_health(0.0, seed, kCfg), 64);
    const double well = disease_mask_fraction(mask_params_from_health(1.0, seed, kCfg), 64);
    CHECK(well < sick);
  }
}

TEST_CASE("config validation") {
  PathologyConfig c;
  CHECK_NOTHROW(c.validate());
  c.r_min = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.t_max = 10.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.e_max = 1.2;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}
