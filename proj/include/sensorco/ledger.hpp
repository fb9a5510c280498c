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

#ifndef SENSORCO_LEDGER_HPP
#define SENSORCO_LEDGER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sensorco/money.hpp"

namespace sensorco {

using HolderId = std::string;

/// Share register. Holders with a zero balance stay listed after transfers.
class CapTable {
public:
  CapTable() = default;

  std::int64_t shares(const HolderId& holder) const;
  std::int64_t total_shares() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }
  const std::map<HolderId, std::int64_t>& entries() const noexcept { return entries_; }

  /// Throws std::logic_error if the sum of entries disagrees with the total.
  void check_invariants() const;

  friend bool operator==(const CapTable&, const CapTable&) = default;

private:
  friend CapTable issue_equity(const CapTable&, const HolderId&, std::int64_t);
  friend CapTable transfer_shares(const CapTable&, const HolderId&, const HolderId&, std::int64_t);

  std::map<HolderId, std::int64_t> entries_;
  std::int64_t total_ = 0;
};

CapTable issue_equity(const CapTable& table, const HolderId& holder, std::int64_t shares);
CapTable transfer_shares(const CapTable& table, const HolderId& from, const HolderId& to,
                         std::int64_t shares);

struct Posting {
  std::string account;
  Money amount;
};

/// Balanced journal entry; the constructor rejects unbalanced postings.
class Transaction {
public:
  Transaction(std::vector<Posting> debits, std::vector<Posting> credits, std::string memo,
              int month);

  const std::vector<Posting>& debits() const noexcept { return debits_; }
  const std::vector<Posting>& credits() const noexcept { return credits_; }
  const std::string& memo() const noexcept { return memo_; }
  int month() const noexcept { return month_; }
  Money amount() const;

private:
  std::vector<Posting> debits_;
  std::vector<Posting> credits_;
  std::string memo_;
  int month_;
};

struct ReserveFund {
  Money balance;
  double contribution_rate = 0.10;

  void validate() const;
};

struct DividendResult {
  std::map<HolderId, Money> payouts;
  ReserveFund reserve;
  /// floor(profit * rate) plus the per-holder rounding remainder.
  Money reserve_contribution;
  Money total_paid() const;
};

/// Splits profit into a reserve contribution and pro-rata payouts, all in
/// whole cents. payouts + reserve_contribution == profit exactly.
DividendResult distribute_dividend(const CapTable& table, Money profit, const ReserveFund& reserve);

/// Pro-rata split of amount with largest-remainder allocation of leftover
/// cents, so the payouts always sum to amount. Used for liquidation.
std::map<HolderId, Money> distribute_pro_rata(const CapTable& table, Money amount);

/// Straight-line book value: purchase - months * floor(10% of purchase), floored at zero.
Money depreciate(Money purchase_price, int months_elapsed);

/// Depreciation expense booked in the given 1-based month of operation.
Money depreciation_charge(Money purchase_price, int month);

} // namespace sensorco

#endif
