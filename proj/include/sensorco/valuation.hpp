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

#ifndef SENSORCO_VALUATION_HPP
#define SENSORCO_VALUATION_HPP

#include "sensorco/money.hpp"

namespace sensorco {

inline constexpr double kUtilityApr = 0.041;

struct ValuationParams {
  double target_apr = kUtilityApr;
  double pe_ratio = 1.0 / kUtilityApr;
  int months_to_steady = 12;

  void validate() const;
};

enum class ValuationMethod { AssetApproach, MarketApproach };

struct ValuationState {
  ValuationMethod method = ValuationMethod::AssetApproach;
  Money current_value;
  Money pre_ipo_value;
};

/// With all earnings paid out, yield p/s = 1/x.
double pe_from_apr(double apr);
double apr_from_pe(double pe);

Money market_valuation(Money annual_earnings, double pe);
Money asset_valuation(Money hardware_cost, Money installation_cost, Money other_startup_costs);

/// Annualized return of a pre-IPO stake that appreciates from I to x*P over z months:
/// ((x*P - I) / I)^(12/z) - 1.
double preipo_apr(double pe, Money steady_annual_profit, Money pre_ipo_value, int months_to_steady);

/// 100 * market_value / I.
double appreciation_over_preipo(Money market_value, Money pre_ipo_value);

Money proposer_reward(Money market_value, double esop_fraction);

/// P/E that would turn `annual_earnings` into `market_value`.
double implied_pe(Money market_value, Money annual_earnings);

} // namespace sensorco

#endif
