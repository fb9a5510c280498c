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

#include "sensorco/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sensorco/error.hpp"
#include "sensorco/valuation.hpp"

namespace sensorco {

std::int64_t Scenario::users_in_month(int month) const {
  if (users.empty()) return 0;
  const std::size_t i = static_cast<std::size_t>(std::max(1, month) - 1);
  return users[std::min(i, users.size() - 1)];
}

double Scenario::effective_pe() const {
  if (pe_ratio) return *pe_ratio;
  return pe_from_apr(target_apr.value_or(kUtilityApr));
}

std::vector<std::string> Scenario::check() const {
  std::vector<std::string> issues;
  auto need = [&issues](bool ok, std::string msg) {
    if (!ok) issues.push_back(std::move(msg));
  };

  need(!name.empty(), "name: must not be empty");
  need(!company_id.empty(), "company.id: must not be empty");
  need(!proposer_id.empty(), "company.proposer: must not be empty");
  need(sensor_count >= 1, "company.sensor_count: must be >= 1");
  need(hardware_cost_per_sensor >= Money{}, "company.hardware_cost_per_sensor_cents: must be >= 0");
  need(installation_cost >= Money{}, "company.installation_cost_cents: must be >= 0");
  need(other_startup_costs >= Money{}, "company.other_startup_costs_cents: must be >= 0");
  need(pre_ipo_value > Money{}, "company.pre_ipo_value_cents: must be > 0");
  need(esop_fraction >= 0.0 && esop_fraction < 1.0, "company.esop_fraction: must be in [0, 1)");
  need(share_price > Money{}, "company.share_price_cents: must be > 0");
  auto cost_issues = costs.check("company.costs");
  issues.insert(issues.end(), cost_issues.begin(), cost_issues.end());

  std::set<std::string> ids;
  for (std::size_t i = 0; i < services.size(); ++i) {
    const auto& s = services[i].spec;
    const std::string at = "company.services[" + std::to_string(i) + "]";
    need(!s.id.empty(), at + ".id: must not be empty");
    need(ids.insert(s.id).second, at + ".id: duplicate service id '" + s.id + "'");
    need(s.unit_price >= Money{}, at + ".unit_price_cents: must be >= 0");
    need(s.marginal_cost >= Money{}, at + ".marginal_cost_cents: must be >= 0");
    need(s.fixed_cost_per_month >= Money{}, at + ".fixed_cost_cents_per_month: must be >= 0");
  }

  need(funding_goal > Money{}, "ipo.goal_cents: must be > 0");
  if (funding_goal > Money{} && share_price > Money{})
    need(funding_goal.cents % share_price.cents == 0,
         "ipo.goal_cents: must be a whole number of shares at the share price");
  need(window_months >= 1, "ipo.window_months: must be >= 1");
  for (std::size_t i = 0; i < pledges.size(); ++i) {
    const auto& p = pledges[i];
    const std::string at = "ipo.pledges[" + std::to_string(i) + "]";
    need(p.month >= 0 && p.month < window_months, at + ".month: must fall inside the funding window");
    need(!p.investor.empty(), at + ".investor: must not be empty");
    need(p.amount > Money{}, at + ".amount_cents: must be > 0");
    if (share_price > Money{})
      need(p.amount.cents % share_price.cents == 0, at + ".amount_cents: must be a whole number of shares");
  }

  need(months >= 1, "simulation.months: must be >= 1");
  for (std::size_t i = 0; i < users.size(); ++i)
    need(users[i] >= 0, "simulation.users[" + std::to_string(i) + "]: must be >= 0");
  if (uptime.mode == UptimeMode::Bernoulli)
    need(uptime.probability_up >= 0.0 && uptime.probability_up <= 1.0,
         "simulation.uptime.probability_up: must be in [0, 1]");
  need(reserve_rate >= 0.0 && reserve_rate <= 1.0, "simulation.reserve_rate: must be in [0, 1]");
  need(steady_k >= 1, "simulation.steady_k: must be >= 1");

  if (target_apr) need(*target_apr > 0.0 && std::isfinite(*target_apr), "valuation.target_apr: must be > 0");
  if (pe_ratio) need(*pe_ratio > 0.0 && std::isfinite(*pe_ratio), "valuation.pe_ratio: must be > 0");
  need(months_to_steady >= 1, "valuation.months_to_steady: must be >= 1");
  if (reference_users) need(*reference_users >= 0, "valuation.reference_users: must be >= 0");

  need(sweep_min_users >= 0, "sweep.min_users: must be >= 0");
  need(sweep_max_users >= sweep_min_users, "sweep.max_users: must be >= sweep.min_users");
  return issues;
}

Scenario apply_overrides(Scenario scenario, const ScenarioOverrides& overrides) {
  if (overrides.users) scenario.users = {*overrides.users};
  if (overrides.months) scenario.months = *overrides.months;
  if (overrides.seed) scenario.seed = *overrides.seed;
  if (overrides.apr) {
    scenario.target_apr = *overrides.apr;
    scenario.pe_ratio.reset();
  }
  if (overrides.pe) scenario.pe_ratio = *overrides.pe;
  auto issues = scenario.check();
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return scenario;
}

} // namespace sensorco
