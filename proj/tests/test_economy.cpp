#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "benefit/economy.hpp"
#include "support/gen.hpp"

using namespace benefit;

TEST_CASE("settle pays whole tokens and carries the rest") {
  TokenLedger l;
  record_harvest(l, 0.75);
  record_harvest(l, 0.5);
  CHECK(unsettled_total(l) == doctest::Approx(1.25));
  CHECK(settle(l) == 1);
  CHECK(l.dispensed == 1);
  CHECK(l.settlement_carry == doctest::Approx(0.25));
  CHECK(l.unsettled_pool.empty());

  record_harvest(l, 0.8);
  CHECK(settle(l) == 1);
  CHECK(l.settlement_carry == doctest::Approx(0.05));
  CHECK(l.dispensed == 2);
}

TEST_CASE("settling an empty pool pays nothing") {
  TokenLedger l;
  CHECK(settle(l) == 0);
  l.settlement_carry = 0.9;
  CHECK(settle(l) == 0);
  CHECK(l.settlement_carry == doctest::Approx(0.9));
}

TEST_CASE("negative prices are a logic error") {
  TokenLedger l;
  CHECK_THROWS_AS(record_harvest(l, -0.01), std::logic_error);
}

TEST_CASE("value is conserved across settlements") {
  gen::Gen g(44);
  for (int trial = 0; trial < 200; ++trial) {
    TokenLedger l;
    double total = 0.0;
    const int rounds = g.integer(1, 30);
    for (int r = 0; r < rounds; ++r) {
      const int n = g.integer(0, 6);
      for (int i = 0; i < n; ++i) {
        const double p = g.real(0, 2);
        total += p;
        record_harvest(l, p);
      }
      const auto before = l.dispensed;
      const auto paid = settle(l);
      CHECK(l.dispensed == before + paid);
      CHECK(l.settlement_carry >= 0.0);
      CHECK(l.settlement_carry < 1.0);
      CHECK(l.unsettled_pool.empty());
    }
    CHECK(static_cast<double>(l.dispensed) + l.settlement_carry == doctest::Approx(total).epsilon(1e-9));
    CHECK(l.dispensed == static_cast<std::uint64_t>(std::floor(total + 1e-9)));
  }
}
