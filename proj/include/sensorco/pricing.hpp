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

#ifndef SENSORCO_PRICING_HPP
#define SENSORCO_PRICING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sensorco/money.hpp"

namespace sensorco {

inline constexpr double kDefaultZeroPayFraction = 99.0 / 350.0;

struct CurvePoint {
  Money price;
  double usages_per_user_per_month = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Survey-derived demand: expected usages per user per month at a unit price.
/// Prices strictly increase, usages never increase, at least two points.
class PriceUsageCurve {
public:
  PriceUsageCurve(std::vector<CurvePoint> points, double zero_pay_fraction = kDefaultZeroPayFraction);

  /// Returns every broken invariant, prefixed with `path`.
  static std::vector<std::string> check(const std::vector<CurvePoint>& points,
                                        double zero_pay_fraction, const std::string& path = "curve");

  const std::vector<CurvePoint>& points() const noexcept { return points_; }
  double zero_pay_fraction() const noexcept { return zero_pay_fraction_; }
  double paying_fraction() const noexcept { return 1.0 - zero_pay_fraction_; }

  friend bool operator==(const PriceUsageCurve&, const PriceUsageCurve&) = default;

private:
  std::vector<CurvePoint> points_;
  double zero_pay_fraction_;
};

/// Linear between surveyed points; clamps to the first usage below the first
/// price and returns 0 above the last one.
double interpolate_usage(const PriceUsageCurve& curve, Money price);

struct ServiceSpec {
  std::string id;
  std::string name;
  Money unit_price;
  Money marginal_cost;
  Money fixed_cost_per_month;
  PriceUsageCurve curve;

  friend bool operator==(const ServiceSpec&, const ServiceSpec&) = default;
};

struct CostStructure {
  Money admin_fees_per_month;
  double incentive_rate = 0.05;
  double maintenance_hours_per_month = 0.0;
  Money maintenance_hourly_rate;

  Money maintenance_pay() const { return Money::round(maintenance_hours_per_month * maintenance_hourly_rate.as_real()); }
  /// F: company-level monthly fixed cost for a month with the given depreciation charge.
  Money company_fixed_cost(Money depreciation_charge = Money{}) const {
    return depreciation_charge + maintenance_pay() + admin_fees_per_month;
  }
  std::vector<std::string> check(const std::string& path = "costs") const;

  friend bool operator==(const CostStructure&, const CostStructure&) = default;
};

/// P = sum_i((phi_i - psi_i) * n_i - f_i) - F, truncated to cents at the end.
/// `usages` are total usages n_i for the month.
Money monthly_profit(std::span<const ServiceSpec> services, std::span<const double> usages,
                     const CostStructure& costs, Money depreciation_charge = Money{});

enum class PriceObjective { Revenue, Profit };

struct PriceChoice {
  Money price;
  Money expected_monthly_value;
  /// Unrounded objective in cents per month.
  double objective_cents = 0.0;
};

/// Best price on the 1-cent grid spanning the surveyed range. Ties within
/// 1e-9 go to the lowest price.
PriceChoice optimize_price(const ServiceSpec& service, std::int64_t user_count,
                           PriceObjective objective = PriceObjective::Revenue);

/// Copy of `services` with each unit price replaced by its per-user optimum.
std::vector<ServiceSpec> with_optimized_prices(std::vector<ServiceSpec> services,
                                               PriceObjective objective = PriceObjective::Revenue);

/// 12 * sum_i phi_i * n_i(phi_i) * (1 - zero_pay), at the services' current prices.
Money annual_revenue_per_user(std::span<const ServiceSpec> services);

} // namespace sensorco

#endif
