#include "benefit/economy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace benefit {

void record_harvest(TokenLedger& ledger, double price) {
  if (!(price >= 0.0)) throw std::logic_error("harvest price must be non-negative");
  ledger.unsettled_pool.push_back(price);
}

double unsettled_total(const TokenLedger& ledger) {
  return std::accumulate(ledger.unsettled_pool.begin(), ledger.unsettled_pool.end(), 0.0);
}

std::uint64_t settle(TokenLedger& ledger) {
  const double total = unsettled_total(ledger) + ledger.settlement_carry;
  const double whole = std::floor(total);
  ledger.settlement_carry = total - whole;
  ledger.unsettled_pool.clear();
  const auto dispense = static_cast<std::uint64_t>(whole);
  ledger.dispensed += dispense;
  return dispense;
}

}  // namespace benefit
