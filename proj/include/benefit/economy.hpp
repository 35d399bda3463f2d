#pragma once

#include <cstdint>
#include <vector>

namespace benefit {

struct TokenLedger {
  std::uint64_t inserted_seaweed = 0;
  std::uint64_t inserted_fungi = 0;
  std::uint64_t dispensed = 0;
  std::vector<double> unsettled_pool;  // prices of plants harvested since the last settlement
  double settlement_carry = 0.0;       // fractional remainder, in [0, 1)
  bool operator==(const TokenLedger&) const = default;
};

struct SettlementConfig {
  double period = 20.0;  // seconds
  bool operator==(const SettlementConfig&) const = default;
};

// Throws std::logic_error on a negative price.
void record_harvest(TokenLedger& ledger, double price);

// Pays out floor(sum(pool) + carry) whole tokens, keeps the remainder as the
// new carry and clears the pool. Returns the number of tokens dispensed.
std::uint64_t settle(TokenLedger& ledger);

double unsettled_total(const TokenLedger& ledger);

}  // namespace benefit
