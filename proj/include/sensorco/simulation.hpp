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

#ifndef SENSORCO_SIMULATION_HPP
#define SENSORCO_SIMULATION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sensorco/ipo.hpp"
#include "sensorco/ledger.hpp"
#include "sensorco/money.hpp"
#include "sensorco/pricing.hpp"
#include "sensorco/scenario.hpp"
#include "sensorco/valuation.hpp"

namespace sensorco {

enum class CompanyState { Proposed, Funding, Operating, SteadyProfit, Bankrupt, Terminated };

const char* to_string(CompanyState s);

/// Proposed->Funding->{Operating|Terminated}, Operating->{SteadyProfit|Bankrupt},
/// SteadyProfit->Bankrupt.
bool transition_allowed(CompanyState from, CompanyState to);

struct SensorCompany {
  std::string id;
  CompanyState state = CompanyState::Proposed;
  CapTable cap_table;
  Money cash;
  ReserveFund reserve;
  std::vector<ServiceSpec> services;
  CostStructure costs;
  Money purchase_price;
  int founding_month = 0;
  int months_operated = 0;
  ValuationState valuation;
  double pe_ratio = 1.0 / kUtilityApr;
  int steady_k = 3;
  EsopGrant esop;
  std::map<HolderId, Money> liquidation_payouts;

  /// Throws StateError for a transition the lifecycle does not allow.
  void move_to(CompanyState next);
};

struct ScenarioMonth {
  int month = 1;
  std::int64_t active_users = 0;
  bool uptime_ok = true;
};

struct MonthlyStatement {
  int month = 0;
  std::int64_t active_users = 0;
  bool uptime_ok = true;
  std::vector<Money> revenue_by_service;
  Money marginal_costs;
  Money fixed_costs;
  Money maintenance_pay;
  Money incentive_pay;
  Money depreciation;
  Money profit;
  Money dividend_paid;
  /// Positive when the reserve grows, negative when it absorbs a loss.
  Money reserve_delta;
  /// Loss the company could not cover; non-zero only in the bankrupt month.
  Money unpaid_obligations;
  Money opening_cash;
  Money closing_cash;
  std::map<HolderId, Money> dividends;

  Money revenue() const;
  Money total_cost() const;
  /// Profit identity and cash continuity.
  bool balanced() const;
};

/// Revenue and cost lines for one month; no cash movement.
MonthlyStatement project_statement(const SensorCompany& company, const ScenarioMonth& month);

/// Books one month. Losses draw the reserve first, then cash. Profit in
/// SteadyProfit is paid out as dividends after the reserve contribution.
std::pair<SensorCompany, MonthlyStatement> step_month(SensorCompany company, const ScenarioMonth& month);

/// Steady-profit promotion (k profitable months in a row, market valuation,
/// ESOP) and bankruptcy with liquidation.
SensorCompany lifecycle_transition(SensorCompany company, const std::vector<MonthlyStatement>& history);

/// Trailing twelve months of profit, annualized when fewer months exist.
Money trailing_annual_earnings(const std::vector<MonthlyStatement>& history);

struct SweepRow {
  std::int64_t users = 0;
  Money annual_revenue;
  Money annual_cost;
  Money profit;
};

struct BreakEvenSweep {
  std::vector<SweepRow> rows;
  std::optional<std::int64_t> break_even_users;
};

/// Fresh post-IPO company built from the scenario, prices optimized.
SensorCompany make_operating_company(const Scenario& scenario, const CapTable& cap_table, Money cash);

/// One twelve-month projection per user count in [min_users, max_users].
BreakEvenSweep break_even_sweep(const Scenario& scenario, std::int64_t min_users, std::int64_t max_users);

struct TableMetrics {
  Money asset_valuation;
  Money pre_ipo_value;
  Money working_capital;
  std::optional<Money> income_per_year;
  double pe_ratio = 0.0;
  std::optional<Money> market_value;
  std::optional<Money> reference_market_value;
  std::optional<double> implied_reference_pe;
  std::optional<double> return_over_preipo_pct;
  std::optional<double> return_over_preipo_pct_at_reference;
  std::optional<double> preipo_apr;
  std::optional<Money> proposer_reward;
  std::optional<Money> proposer_reward_at_reference;
  std::optional<std::int64_t> break_even_users;
  std::optional<std::int64_t> reference_users;
  Money admin_hourly_rate;
  double admin_hours_per_year = 0.0;
  Money admin_pay_per_year;
  Money annual_revenue_per_user;
  Money simulated_annual_profit;
  std::vector<std::string> flags;
};

struct SimulationReport {
  std::string scenario_name;
  Settlement ipo;
  std::vector<MonthlyStatement> statements;
  SensorCompany company;
  std::vector<std::string> service_ids;
  std::vector<Money> prices;
  BreakEvenSweep sweep;
  TableMetrics metrics;
};

SimulationReport run_scenario(const Scenario& scenario);

/// Uptime draw for a month; deterministic in (seed, month).
bool uptime_for_month(const UptimeModel& model, std::uint64_t seed, int month);

} // namespace sensorco

#endif
