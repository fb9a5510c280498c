/*
  Copyright 2026 The sensorco Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#include "sensorco/ledger.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "sensorco/error.hpp"

namespace sensorco {

std::int64_t CapTable::shares(const HolderId& holder) const {
  auto it = entries_.find(holder);
  return it == entries_.end() ? 0 : it->second;
}

void CapTable::check_invariants() const {
  std::int64_t sum = 0;
  for (const auto& [holder, count] : entries_) {
    if (count < 0) throw std::logic_error("cap table: negative share count for " + holder);
    sum += count;
  }
  if (sum != total_) throw std::logic_error("cap table: entries do not sum to total_shares");
}

CapTable issue_equity(const CapTable& table, const HolderId& holder, std::int64_t shares) {
  if (shares <= 0) throw ValidationError("shares: must be > 0 to issue equity");
  if (holder.empty()) throw ValidationError("holder: must not be empty");
  CapTable out = table;
  out.entries_[holder] += shares;
  out.total_ += shares;
  return out;
}

CapTable transfer_shares(const CapTable& table, const HolderId& from, const HolderId& to,
                         std::int64_t shares) {
  if (shares <= 0) throw ValidationError("shares: must be > 0 to transfer");
  if (to.empty()) throw ValidationError("to: must not be empty");
  const std::int64_t held = table.shares(from);
  if (held < shares) {
    throw ValidationError("shares: " + from + " holds " + std::to_string(held) +
                          ", cannot transfer " + std::to_string(shares));
  }
  CapTable out = table;
  out.entries_[from] -= shares;
  out.entries_[to] += shares;
  return out;
}

namespace {

Money sum_postings(const std::vector<Posting>& postings) {
  Money total;
  for (const auto& p : postings) total += p.amount;
  return total;
}

} // namespace

Transaction::Transaction(std::vector<Posting> debits, std::vector<Posting> credits, std::string memo,
                         int month)
    : debits_(std::move(debits)), credits_(std::move(credits)), memo_(std::move(memo)), month_(month) {
  for (const auto* side : {&debits_, &credits_}) {
    for (const auto& p : *side) {
      if (p.amount < Money{}) throw ValidationError("transaction: posting to " + p.account + " is negative");
    }
  }
  if (sum_postings(debits_) != sum_postings(credits_)) {
    throw ValidationError("transaction '" + memo_ + "': debits " + sum_postings(debits_).str() +
                          " != credits " + sum_postings(credits_).str());
  }
}

Money Transaction::amount() const { return sum_postings(debits_); }

void ReserveFund::validate() const {
  std::vector<std::string> issues;
  if (balance < Money{}) issues.push_back("reserve.balance: must be >= 0");
  if (!(contribution_rate >= 0.0 && contribution_rate <= 1.0))
    issues.push_back("reserve.contribution_rate: must be in [0, 1]");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

Money DividendResult::total_paid() const {
  Money total;
  for (const auto& [holder, amount] : payouts) total += amount;
  return total;
}

namespace {

// floor(amount * shares / total) without overflow.
std::int64_t pro_rata_floor(std::int64_t amount, std::int64_t shares, std::int64_t total) {
  const __int128 num = static_cast<__int128>(amount) * shares;
  return static_cast<std::int64_t>(num / total);
}

} // namespace

DividendResult distribute_dividend(const CapTable& table, Money profit, const ReserveFund& reserve) {
  if (table.empty()) throw ValidationError("cap_table: cannot distribute a dividend with no shares issued");
  if (profit < Money{}) throw ValidationError("profit: must be >= 0; losses are absorbed by the reserve");
  reserve.validate();

  DividendResult result;
  const Money contribution = std::min(profit, Money::floor(profit.as_real() * reserve.contribution_rate));
  const Money distributable = profit - contribution;

  Money paid;
  for (const auto& [holder, count] : table.entries()) {
    const Money share{pro_rata_floor(distributable.cents, count, table.total_shares())};
    result.payouts[holder] = share;
    paid += share;
  }
  result.reserve_contribution = profit - paid;
  result.reserve = reserve;
  result.reserve.balance += result.reserve_contribution;
  return result;
}

std::map<HolderId, Money> distribute_pro_rata(const CapTable& table, Money amount) {
  if (table.empty()) throw ValidationError("cap_table: cannot distribute with no shares issued");
  if (amount < Money{}) throw ValidationError("amount: must be >= 0");

  struct Slot {
    HolderId holder;
    std::int64_t remainder;
  };
  std::map<HolderId, Money> out;
  std::vector<Slot> slots;
  Money paid;
  for (const auto& [holder, count] : table.entries()) {
    const __int128 num = static_cast<__int128>(amount.cents) * count;
    const Money share{static_cast<std::int64_t>(num / table.total_shares())};
    out[holder] = share;
    paid += share;
    slots.push_back({holder, static_cast<std::int64_t>(num % table.total_shares())});
  }
  // Leftover cents go one each to the largest remainders, ties by holder id.
  std::stable_sort(slots.begin(), slots.end(),
                   [](const Slot& a, const Slot& b) { return a.remainder > b.remainder; });
  std::int64_t leftover = (amount - paid).cents;
  for (std::size_t i = 0; leftover > 0; i = (i + 1) % slots.size()) {
    out[slots[i].holder] += Money{1};
    --leftover;
  }
  return out;
}

Money depreciate(Money purchase_price, int months_elapsed) {
  if (months_elapsed < 0) throw ValidationError("months_elapsed: must be >= 0");
  // Sub-10-cent residue from flooring the monthly charge is written off in month 10.
  if (months_elapsed >= 10) return Money{};
  const Money monthly = Money::floor(purchase_price.as_real() * 0.10);
  const Money value = purchase_price - monthly * months_elapsed;
  return std::max(Money{}, value);
}

Money depreciation_charge(Money purchase_price, int month) {
  if (month < 1) throw ValidationError("month: must be >= 1");
  return depreciate(purchase_price, month - 1) - depreciate(purchase_price, month);
}

} // namespace sensorco
