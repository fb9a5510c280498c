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

#include <doctest.h>

#include <random>

#include "sensorco/error.hpp"
#include "sensorco/ledger.hpp"

using namespace sensorco;

namespace {

CapTable table_of(std::initializer_list<std::pair<const char*, std::int64_t>> rows) {
  CapTable t;
  for (auto [h, n] : rows) t = issue_equity(t, h, n);
  return t;
}

} // namespace

TEST_CASE("issue equity") {
  CapTable t = issue_equity(CapTable{}, "A", 100);
  CHECK(t.shares("A") == 100);
  CHECK(t.total_shares() == 100);
  t = issue_equity(t, "B", 25);
  CHECK(t.shares("B") == 25);
  CHECK(t.total_shares() == 125);
  CHECK_THROWS_AS(issue_equity(t, "A", 0), ValidationError);
  CHECK_THROWS_AS(issue_equity(t, "", 5), ValidationError);
  t.check_invariants();
}

TEST_CASE("transfer shares") {
  CapTable t = transfer_shares(table_of({{"A", 100}}), "A", "B", 100);
  CHECK(t.shares("B") == 100);
  CHECK(t.shares("A") == 0);
  CHECK(t.total_shares() == 100);
  CHECK_THROWS_AS(transfer_shares(table_of({{"A", 10}}), "A", "B", 11), ValidationError);
  t = transfer_shares(table_of({{"A", 60}, {"B", 40}}), "B", "A", 40);
  CHECK(t.shares("A") == 100);
  CHECK(t.shares("B") == 0);
  CHECK(t.entries().count("B") == 1);
}

TEST_CASE("transactions must balance") {
  Transaction ok({{"cash", 500_cents}}, {{"equity", 300_cents}, {"reserve", 200_cents}}, "ipo", 0);
  CHECK(ok.amount() == 500_cents);
  CHECK_THROWS_AS(Transaction({{"cash", 500_cents}}, {{"equity", 499_cents}}, "bad", 0), ValidationError);
  CHECK_THROWS_AS(Transaction({{"cash", Money{-1}}}, {{"equity", Money{-1}}}, "neg", 0), ValidationError);
}

TEST_CASE("dividend examples") {
  ReserveFund reserve{Money{}, 0.10};
  auto r = distribute_dividend(table_of({{"A", 3}}), 100_usd, reserve);
  CHECK(r.reserve_contribution == 10_usd);
  CHECK(r.payouts.at("A") == 90_usd);
  CHECK(r.reserve.balance == 10_usd);

  r = distribute_dividend(table_of({{"A", 2}, {"B", 1}}), 100_usd, reserve);
  CHECK(r.reserve_contribution == 10_usd);
  CHECK(r.payouts.at("A") == 60_usd);
  CHECK(r.payouts.at("B") == 30_usd);

  r = distribute_dividend(table_of({{"A", 1}, {"B", 1}, {"C", 1}}), 1_usd, ReserveFund{Money{}, 0.0});
  CHECK(r.payouts.at("A") == 33_cents);
  CHECK(r.payouts.at("B") == 33_cents);
  CHECK(r.payouts.at("C") == 33_cents);
  CHECK(r.reserve_contribution == 1_cents);

  CHECK_THROWS_AS(distribute_dividend(CapTable{}, 1_usd, reserve), ValidationError);
  CHECK_THROWS_AS(distribute_dividend(table_of({{"A", 1}}), Money{-1}, reserve), ValidationError);
}

TEST_CASE("dividend conserves cents for random tables") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> holders(1, 9);
  std::uniform_int_distribution<std::int64_t> shares(1, 5000);
  std::uniform_int_distribution<std::int64_t> profit(0, 10'000'000);
  std::uniform_real_distribution<double> rate(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    CapTable t;
    const int h = holders(rng);
    for (int k = 0; k < h; ++k) t = issue_equity(t, "h" + std::to_string(k), shares(rng));
    const Money p{profit(rng)};
    const auto r = distribute_dividend(t, p, ReserveFund{Money{}, rate(rng)});
    Money paid;
    for (const auto& [holder, m] : r.payouts) {
      CHECK(m >= Money{});
      paid += m;
    }
    CHECK(paid + r.reserve_contribution == p);
  }
}

TEST_CASE("pro rata uses largest remainders") {
  const auto out = distribute_pro_rata(table_of({{"A", 1}, {"B", 1}, {"C", 1}}), 100_cents);
  CHECK(out.at("A") == 34_cents);
  CHECK(out.at("B") == 33_cents);
  CHECK(out.at("C") == 33_cents);
  const auto two = distribute_pro_rata(table_of({{"A", 2}, {"B", 1}}), 5_cents);
  CHECK(two.at("A") == 3_cents);
  CHECK(two.at("B") == 2_cents);
}

TEST_CASE("straight-line depreciation") {
  CHECK(depreciate(179_usd, 1) == Money{16110});
  CHECK(depreciate(179_usd, 0) == 179_usd);
  CHECK(depreciate(39_usd, 10) == Money{});
  CHECK(depreciate(39_usd, 25) == Money{});
  CHECK(depreciation_charge(179_usd, 1) == Money{1790});
  CHECK(depreciation_charge(179_usd, 11) == Money{});
  // Charges over the life add up to the purchase price even when 10% is fractional.
  const Money odd{12345};
  Money total;
  for (int m = 1; m <= 12; ++m) total += depreciation_charge(odd, m);
  CHECK(total == odd);
  CHECK_THROWS_AS(depreciate(1_usd, -1), ValidationError);
}
