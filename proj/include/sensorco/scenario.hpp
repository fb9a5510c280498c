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

#ifndef SENSORCO_SCENARIO_HPP
#define SENSORCO_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sensorco/ledger.hpp"
#include "sensorco/money.hpp"
#include "sensorco/pricing.hpp"

namespace sensorco {

struct ScheduledPledge {
  int month = 0;
  HolderId investor;
  Money amount;

  friend bool operator==(const ScheduledPledge&, const ScheduledPledge&) = default;
};

enum class UptimeMode { Always, Schedule, Bernoulli };

struct UptimeModel {
  UptimeMode mode = UptimeMode::Always;
  /// Indexed by month - 1; months past the end count as up.
  std::vector<bool> schedule;
  double probability_up = 1.0;

  friend bool operator==(const UptimeModel&, const UptimeModel&) = default;
};

/// A service as configured: the curve plus where it came from, so the
/// scenario can be echoed with the same references.
struct ServiceConfig {
  ServiceSpec spec;
  std::string curve_ref;
  /// Price fixed by the scenario; otherwise it is optimized.
  bool price_fixed = false;

  friend bool operator==(const ServiceConfig&, const ServiceConfig&) = default;
};

struct Scenario {
  std::string name;

  // company
  std::string company_id;
  HolderId proposer_id;
  std::int64_t sensor_count = 1;
  Money hardware_cost_per_sensor;
  Money installation_cost;
  Money other_startup_costs;
  Money pre_ipo_value;
  double esop_fraction = 0.0;
  Money share_price = 1_usd;
  CostStructure costs;
  std::vector<ServiceConfig> services;

  // ipo
  Money funding_goal;
  int window_months = 3;
  std::vector<ScheduledPledge> pledges;

  // simulation
  int months = 12;
  /// One entry per month; shorter schedules repeat their last value.
  std::vector<std::int64_t> users;
  UptimeModel uptime;
  double reserve_rate = 0.10;
  int steady_k = 3;
  std::uint64_t seed = 1;
  PriceObjective price_objective = PriceObjective::Revenue;

  // valuation
  std::optional<double> target_apr;
  std::optional<double> pe_ratio;
  int months_to_steady = 12;
  std::optional<Money> reference_income_per_year;
  std::optional<Money> reference_market_value;
  std::optional<std::int64_t> reference_users;

  // sweep
  std::int64_t sweep_min_users = 0;
  std::int64_t sweep_max_users = 100;

  Money purchase_price() const { return hardware_cost_per_sensor * sensor_count; }
  std::int64_t users_in_month(int month) const;
  /// Explicit P/E if given, else 1/target APR, else 1/4.1%.
  double effective_pe() const;

  /// Every invariant breach, with field paths.
  std::vector<std::string> check() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ScenarioOverrides {
  std::optional<std::int64_t> users;
  std::optional<int> months;
  std::optional<std::uint64_t> seed;
  std::optional<double> pe;
  std::optional<double> apr;
};

/// Applies overrides and revalidates; throws ValidationError on any breach.
Scenario apply_overrides(Scenario scenario, const ScenarioOverrides& overrides);

} // namespace sensorco

#endif
