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

#include "sensorco/pricing.hpp"

#include <algorithm>
#include <cmath>

#include "sensorco/error.hpp"

namespace sensorco {

namespace {

constexpr double kTieTolerance = 1e-9;

} // namespace

PriceUsageCurve::PriceUsageCurve(std::vector<CurvePoint> points, double zero_pay_fraction)
    : points_(std::move(points)), zero_pay_fraction_(zero_pay_fraction) {
  auto issues = check(points_, zero_pay_fraction_);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::vector<std::string> PriceUsageCurve::check(const std::vector<CurvePoint>& points,
                                                double zero_pay_fraction, const std::string& path) {
  std::vector<std::string> issues;
  if (points.size() < 2) issues.push_back(path + ".points: need at least 2 points");
  if (!(zero_pay_fraction >= 0.0 && zero_pay_fraction <= 1.0))
    issues.push_back(path + ".zero_pay_fraction: must be in [0, 1]");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string at = path + ".points[" + std::to_string(i) + "]";
    if (points[i].price < Money{}) issues.push_back(at + ".price_cents: must be >= 0");
    const double u = points[i].usages_per_user_per_month;
    if (!std::isfinite(u) || u < 0.0) issues.push_back(at + ".usages_per_user_per_month: must be finite and >= 0");
    if (i == 0) continue;
    if (points[i].price <= points[i - 1].price)
      issues.push_back(at + ".price_cents: prices must be strictly increasing");
    if (u > points[i - 1].usages_per_user_per_month)
      issues.push_back(at + ".usages_per_user_per_month: usages must be non-increasing in price");
  }
  return issues;
}

double interpolate_usage(const PriceUsageCurve& curve, Money price) {
  if (price < Money{}) throw ValidationError("price: must be >= 0");
  const auto& pts = curve.points();
  if (price <= pts.front().price) return pts.front().usages_per_user_per_month;
  if (price > pts.back().price) return 0.0;
  auto hi = std::lower_bound(pts.begin(), pts.end(), price,
                             [](const CurvePoint& p, Money v) { return p.price < v; });
  if (hi->price == price) return hi->usages_per_user_per_month;
  auto lo = std::prev(hi);
  const double t = (price - lo->price).as_real() / (hi->price - lo->price).as_real();
  return lo->usages_per_user_per_month + t * (hi->usages_per_user_per_month - lo->usages_per_user_per_month);
}

std::vector<std::string> CostStructure::check(const std::string& path) const {
  std::vector<std::string> issues;
  if (admin_fees_per_month < Money{}) issues.push_back(path + ".admin_fees_per_month: must be >= 0");
  if (!(incentive_rate >= 0.0 && incentive_rate <= 1.0)) issues.push_back(path + ".incentive_rate: must be in [0, 1]");
  if (!std::isfinite(maintenance_hours_per_month) || maintenance_hours_per_month < 0.0)
    issues.push_back(path + ".maintenance_hours_per_month: must be >= 0");
  if (maintenance_hourly_rate < Money{}) issues.push_back(path + ".maintenance_hourly_rate: must be >= 0");
  return issues;
}

Money monthly_profit(std::span<const ServiceSpec> services, std::span<const double> usages,
                     const CostStructure& costs, Money depreciation_charge) {
  if (services.size() != usages.size()) {
    throw ValidationError("usages: expected " + std::to_string(services.size()) + " entries, got " +
                          std::to_string(usages.size()));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < services.size(); ++i) {
    if (usages[i] < 0.0) throw ValidationError("usages[" + std::to_string(i) + "]: must be >= 0");
    const auto& s = services[i];
    total += (s.unit_price - s.marginal_cost).as_real() * usages[i] - s.fixed_cost_per_month.as_real();
  }
  total -= costs.company_fixed_cost(depreciation_charge).as_real();
  return Money::truncate(total);
}

namespace {

double objective_at(const ServiceSpec& service, Money price, double scale, PriceObjective objective) {
  const Money margin = objective == PriceObjective::Revenue ? price : price - service.marginal_cost;
  return margin.as_real() * interpolate_usage(service.curve, price) * scale;
}

} // namespace

PriceChoice optimize_price(const ServiceSpec& service, std::int64_t user_count, PriceObjective objective) {
  if (user_count < 0) throw ValidationError("user_count: must be >= 0");
  const auto& pts = service.curve.points();
  const double scale = static_cast<double>(user_count) * service.curve.paying_fraction();
  const double margin_offset =
      objective == PriceObjective::Revenue ? 0.0 : service.marginal_cost.as_real();

  // On each segment usage is a + b*c, so the objective (c - m)(a + b*c) is a
  // concave quadratic in c: its grid maximum sits at an endpoint or at the
  // integers bracketing the vertex.
  std::vector<std::int64_t> candidates;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double p0 = pts[i].price.as_real();
    const double p1 = pts[i + 1].price.as_real();
    const double u0 = pts[i].usages_per_user_per_month;
    const double u1 = pts[i + 1].usages_per_user_per_month;
    candidates.push_back(pts[i].price.cents);
    candidates.push_back(pts[i + 1].price.cents);
    const double b = (u1 - u0) / (p1 - p0);
    if (b < 0.0) {
      const double a = u0 - b * p0;
      const double vertex = -(a - margin_offset * b) / (2.0 * b);
      if (vertex > p0 && vertex < p1) {
        candidates.push_back(static_cast<std::int64_t>(std::floor(vertex)));
        candidates.push_back(static_cast<std::int64_t>(std::ceil(vertex)));
      }
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  PriceChoice best{pts.front().price, Money{}, objective_at(service, pts.front().price, scale, objective)};
  for (std::int64_t c : candidates) {
    const Money price{c};
    const double v = objective_at(service, price, scale, objective);
    if (v > best.objective_cents + kTieTolerance) best = {price, Money{}, v};
  }
  best.expected_monthly_value = Money::round(best.objective_cents);
  return best;
}

std::vector<ServiceSpec> with_optimized_prices(std::vector<ServiceSpec> services, PriceObjective objective) {
  for (auto& s : services) s.unit_price = optimize_price(s, 1, objective).price;
  return services;
}

Money annual_revenue_per_user(std::span<const ServiceSpec> services) {
  double monthly = 0.0;
  for (const auto& s : services) {
    monthly += s.unit_price.as_real() * interpolate_usage(s.curve, s.unit_price) * s.curve.paying_fraction();
  }
  return Money::round(12.0 * monthly);
}

} // namespace sensorco
