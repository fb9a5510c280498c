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

#include "sensorco/valuation.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "sensorco/error.hpp"

namespace sensorco {

void ValuationParams::validate() const {
  std::vector<std::string> issues;
  if (!(target_apr > 0.0)) issues.push_back("valuation.target_apr: must be > 0");
  if (!(pe_ratio > 0.0)) issues.push_back("valuation.pe_ratio: must be > 0");
  if (months_to_steady < 1) issues.push_back("valuation.months_to_steady: must be >= 1");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

double pe_from_apr(double apr) {
  if (!(apr > 0.0) || !std::isfinite(apr)) throw ValidationError("apr: must be a finite value > 0");
  return 1.0 / apr;
}

double apr_from_pe(double pe) {
  if (!(pe > 0.0) || !std::isfinite(pe)) throw ValidationError("pe: must be a finite value > 0");
  return 1.0 / pe;
}

Money market_valuation(Money annual_earnings, double pe) {
  if (!(pe > 0.0) || !std::isfinite(pe)) throw ValidationError("pe: must be a finite value > 0");
  return Money::round(annual_earnings.as_real() * pe);
}

Money asset_valuation(Money hardware_cost, Money installation_cost, Money other_startup_costs) {
  std::vector<std::string> issues;
  if (hardware_cost < Money{}) issues.push_back("hardware_cost: must be >= 0");
  if (installation_cost < Money{}) issues.push_back("installation_cost: must be >= 0");
  if (other_startup_costs < Money{}) issues.push_back("other_startup_costs: must be >= 0");
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return hardware_cost + installation_cost + other_startup_costs;
}

double preipo_apr(double pe, Money steady_annual_profit, Money pre_ipo_value, int months_to_steady) {
  if (pre_ipo_value <= Money{}) throw ValidationError("pre_ipo_value: must be > 0");
  if (months_to_steady < 1) throw ValidationError("months_to_steady: must be >= 1");
  if (!(pe > 0.0)) throw ValidationError("pe: must be > 0");
  const double market = pe * steady_annual_profit.as_real();
  if (!(market > 0.0)) throw DomainError("pe * annual profit must be > 0 for a pre-IPO return");

  const double base = (market - pre_ipo_value.as_real()) / pre_ipo_value.as_real();
  const double exponent = 12.0 / static_cast<double>(months_to_steady);
  if (base < 0.0 && std::floor(exponent) != exponent) {
    throw DomainError("pre-IPO APR is not real: market value " + Money::round(market).str() +
                      " is below the pre-IPO value " + pre_ipo_value.str() +
                      " and the annualization exponent 12/" + std::to_string(months_to_steady) +
                      " is fractional");
  }
  return std::pow(base, exponent) - 1.0;
}

double appreciation_over_preipo(Money market_value, Money pre_ipo_value) {
  if (pre_ipo_value <= Money{}) throw ValidationError("pre_ipo_value: must be > 0");
  return 100.0 * market_value.as_real() / pre_ipo_value.as_real();
}

Money proposer_reward(Money market_value, double esop_fraction) {
  if (!(esop_fraction >= 0.0 && esop_fraction <= 1.0)) throw ValidationError("esop_fraction: must be in [0, 1]");
  return Money::round(market_value.as_real() * esop_fraction);
}

double implied_pe(Money market_value, Money annual_earnings) {
  if (annual_earnings <= Money{}) throw DomainError("annual earnings must be > 0 to imply a P/E");
  return market_value.as_real() / annual_earnings.as_real();
}

} // namespace sensorco
