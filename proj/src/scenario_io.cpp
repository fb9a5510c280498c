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

#include "sensorco/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sensorco/error.hpp"

namespace sensorco {

namespace fs = std::filesystem;

namespace {

/// Field reader that records problems instead of throwing, so a load
/// reports everything wrong with a file in one pass.
class Reader {
public:
  explicit Reader(std::vector<std::string>& issues) : issues_(issues) {}

  void fail(const std::string& path, const std::string& msg) { issues_.push_back(path + ": " + msg); }

  const Json* field(const Json& obj, const std::string& path, const char* key, bool required) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
      if (required) fail(join(path, key), "required field is missing");
      return nullptr;
    }
    return &*it;
  }

  const Json* object(const Json& obj, const std::string& path, const char* key, bool required = true) {
    const Json* v = field(obj, path, key, required);
    if (v && !v->is_object()) {
      fail(join(path, key), "expected an object");
      return nullptr;
    }
    return v;
  }

  std::string text(const Json& obj, const std::string& path, const char* key, bool required = true,
                   std::string fallback = {}) {
    const Json* v = field(obj, path, key, required);
    if (!v) return fallback;
    if (!v->is_string()) {
      fail(join(path, key), "expected a string");
      return fallback;
    }
    return v->get<std::string>();
  }

  std::int64_t integer(const Json& obj, const std::string& path, const char* key, bool required = true,
                       std::int64_t fallback = 0) {
    const Json* v = field(obj, path, key, required);
    if (!v) return fallback;
    return as_integer(*v, join(path, key), fallback);
  }

  std::int64_t as_integer(const Json& v, const std::string& path, std::int64_t fallback = 0) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
    }
    fail(path, "expected an integer (money is always whole cents)");
    return fallback;
  }

  Money money(const Json& obj, const std::string& path, const char* key, bool required = true,
              Money fallback = Money{}) {
    const Json* v = field(obj, path, key, required);
    if (!v) return fallback;
    return Money{as_integer(*v, join(path, key), fallback.cents)};
  }

  std::optional<Money> optional_money(const Json& obj, const std::string& path, const char* key) {
    if (!field(obj, path, key, false)) return std::nullopt;
    return money(obj, path, key);
  }

  double real(const Json& obj, const std::string& path, const char* key, bool required = true,
              double fallback = 0.0) {
    const Json* v = field(obj, path, key, required);
    if (!v) return fallback;
    return as_real(*v, join(path, key), fallback);
  }

  double as_real(const Json& v, const std::string& path, double fallback = 0.0) {
    if (!v.is_number()) {
      fail(path, "expected a number");
      return fallback;
    }
    return v.get<double>();
  }

  std::optional<double> optional_real(const Json& obj, const std::string& path, const char* key) {
    if (!field(obj, path, key, false)) return std::nullopt;
    return real(obj, path, key);
  }

  static std::string join(const std::string& path, const char* key) {
    return path.empty() ? std::string(key) : path + "." + key;
  }

private:
  std::vector<std::string>& issues_;
};

Json parse_file(const fs::path& file, const std::string& what) {
  std::ifstream in(file);
  if (!in) throw ValidationError(what + ": cannot open '" + file.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(what + ": '" + file.string() + "' is not valid JSON (" + e.what() + ")");
  }
}

std::optional<PriceUsageCurve> read_curve(Reader& r, std::vector<std::string>& issues, const Json& doc,
                                          const std::string& path) {
  if (!doc.is_object()) {
    r.fail(path, "expected a curve object");
    return std::nullopt;
  }
  const double zero_pay = r.real(doc, path, "zero_pay_fraction", false, kDefaultZeroPayFraction);
  std::vector<CurvePoint> points;
  const Json* pts = r.field(doc, path, "points", true);
  if (pts && !pts->is_array()) r.fail(path + ".points", "expected an array");
  if (pts && pts->is_array()) {
    for (std::size_t i = 0; i < pts->size(); ++i) {
      const std::string at = path + ".points[" + std::to_string(i) + "]";
      const Json& p = (*pts)[i];
      if (!p.is_object()) {
        r.fail(at, "expected an object");
        continue;
      }
      points.push_back({r.money(p, at, "price_cents"), r.real(p, at, "usages_per_user_per_month")});
    }
  }
  auto curve_issues = PriceUsageCurve::check(points, zero_pay, path);
  if (!curve_issues.empty()) {
    issues.insert(issues.end(), curve_issues.begin(), curve_issues.end());
    return std::nullopt;
  }
  return PriceUsageCurve(std::move(points), zero_pay);
}

std::string objective_name(PriceObjective o) { return o == PriceObjective::Revenue ? "revenue" : "profit"; }

Json optional_cents(const std::optional<Money>& m) { return m ? Json(m->cents) : Json(nullptr); }
Json optional_real(const std::optional<double>& d) { return d ? Json(*d) : Json(nullptr); }
Json optional_int(const std::optional<std::int64_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json cap_table_to_json(const CapTable& table) {
  Json holders = Json::object();
  for (const auto& [holder, count] : table.entries()) holders[holder] = count;
  return Json{{"total_shares", table.total_shares()}, {"holders", holders}};
}

Json payouts_to_json(const std::map<HolderId, Money>& payouts) {
  Json out = Json::object();
  for (const auto& [holder, amount] : payouts) out[holder] = amount.cents;
  return out;
}

} // namespace

PriceUsageCurve curve_from_json(const Json& doc, const std::string& path) {
  std::vector<std::string> issues;
  Reader r(issues);
  auto curve = read_curve(r, issues, doc, path);
  if (!issues.empty() || !curve) throw ValidationError(std::move(issues));
  return *curve;
}

PriceUsageCurve load_curve(const fs::path& file) {
  return curve_from_json(parse_file(file, "curve"), "curve");
}

Json curve_to_json(const PriceUsageCurve& curve) {
  Json points = Json::array();
  for (const auto& p : curve.points())
    points.push_back(Json{{"price_cents", p.price.cents}, {"usages_per_user_per_month", p.usages_per_user_per_month}});
  return Json{{"zero_pay_fraction", curve.zero_pay_fraction()}, {"points", points}};
}

Scenario scenario_from_json(const Json& doc, const fs::path& base_dir) {
  std::vector<std::string> issues;
  Reader r(issues);
  Scenario s;
  if (!doc.is_object()) throw ValidationError("scenario: expected a JSON object at the top level");

  s.name = r.text(doc, "", "name");

  if (const Json* c = r.object(doc, "", "company")) {
    const std::string p = "company";
    s.company_id = r.text(*c, p, "id");
    s.proposer_id = r.text(*c, p, "proposer");
    s.sensor_count = r.integer(*c, p, "sensor_count", false, 1);
    s.hardware_cost_per_sensor = r.money(*c, p, "hardware_cost_per_sensor_cents");
    s.installation_cost = r.money(*c, p, "installation_cost_cents", false);
    s.other_startup_costs = r.money(*c, p, "other_startup_costs_cents", false);
    s.pre_ipo_value = r.money(*c, p, "pre_ipo_value_cents");
    s.esop_fraction = r.real(*c, p, "esop_fraction", false, 0.0);
    s.share_price = r.money(*c, p, "share_price_cents", false, 1_usd);

    if (const Json* k = r.object(*c, p, "costs")) {
      const std::string kp = p + ".costs";
      s.costs.admin_fees_per_month = r.money(*k, kp, "admin_fees_cents_per_month", false);
      s.costs.incentive_rate = r.real(*k, kp, "incentive_rate", false, 0.05);
      s.costs.maintenance_hours_per_month = r.real(*k, kp, "maintenance_hours_per_month", false, 0.0);
      s.costs.maintenance_hourly_rate = r.money(*k, kp, "maintenance_hourly_rate_cents", false);
    }

    const Json* svcs = r.field(*c, p, "services", true);
    if (svcs && !svcs->is_array()) r.fail(p + ".services", "expected an array");
    if (svcs && svcs->is_array()) {
      for (std::size_t i = 0; i < svcs->size(); ++i) {
        const std::string at = p + ".services[" + std::to_string(i) + "]";
        const Json& sv = (*svcs)[i];
        if (!sv.is_object()) {
          r.fail(at, "expected an object");
          continue;
        }
        ServiceConfig cfg{ServiceSpec{{}, {}, {}, {}, {}, PriceUsageCurve({{Money{0}, 0.0}, {Money{1}, 0.0}}, 0.0)},
                          {}, false};
        cfg.spec.id = r.text(sv, at, "id");
        cfg.spec.name = r.text(sv, at, "name", false, cfg.spec.id);
        cfg.spec.marginal_cost = r.money(sv, at, "marginal_cost_cents", false);
        cfg.spec.fixed_cost_per_month = r.money(sv, at, "fixed_cost_cents_per_month", false);
        if (auto fixed = r.optional_money(sv, at, "unit_price_cents")) {
          cfg.spec.unit_price = *fixed;
          cfg.price_fixed = true;
        }
        const Json* curve = r.field(sv, at, "curve", true);
        std::optional<PriceUsageCurve> loaded;
        if (curve && curve->is_string()) {
          cfg.curve_ref = curve->get<std::string>();
          const fs::path file = base_dir / cfg.curve_ref;
          std::ifstream in(file);
          if (!in) {
            r.fail(at + ".curve", "curve file not found: '" + file.string() + "'");
          } else {
            try {
              loaded = read_curve(r, issues, Json::parse(in), at + ".curve");
            } catch (const nlohmann::json::parse_error& e) {
              r.fail(at + ".curve", "'" + file.string() + "' is not valid JSON (" + e.what() + ")");
            }
          }
        } else if (curve && curve->is_object()) {
          cfg.curve_ref = r.text(*curve, at + ".curve", "source", false);
          loaded = read_curve(r, issues, *curve, at + ".curve");
        } else if (curve) {
          r.fail(at + ".curve", "expected a file path or an inline curve object");
        }
        if (loaded) cfg.spec.curve = std::move(*loaded);
        s.services.push_back(std::move(cfg));
      }
    }
  }

  if (const Json* ipo = r.object(doc, "", "ipo")) {
    s.funding_goal = r.money(*ipo, "ipo", "goal_cents");
    s.window_months = static_cast<int>(r.integer(*ipo, "ipo", "window_months", false, 3));
    if (const Json* pl = r.field(*ipo, "ipo", "pledges", false)) {
      if (!pl->is_array()) r.fail("ipo.pledges", "expected an array");
      for (std::size_t i = 0; pl->is_array() && i < pl->size(); ++i) {
        const std::string at = "ipo.pledges[" + std::to_string(i) + "]";
        const Json& e = (*pl)[i];
        if (!e.is_object()) {
          r.fail(at, "expected an object");
          continue;
        }
        s.pledges.push_back({static_cast<int>(r.integer(e, at, "month")), r.text(e, at, "investor"),
                             r.money(e, at, "amount_cents")});
      }
    }
  }

  if (const Json* sim = r.object(doc, "", "simulation")) {
    const std::string p = "simulation";
    s.months = static_cast<int>(r.integer(*sim, p, "months", false, 12));
    if (const Json* u = r.field(*sim, p, "users", true)) {
      if (u->is_array()) {
        for (std::size_t i = 0; i < u->size(); ++i)
          s.users.push_back(r.as_integer((*u)[i], p + ".users[" + std::to_string(i) + "]"));
        if (s.users.empty()) r.fail(p + ".users", "schedule must not be empty");
      } else {
        s.users.push_back(r.as_integer(*u, p + ".users"));
      }
    }
    if (const Json* up = r.field(*sim, p, "uptime", false)) {
      if (up->is_string() && up->get<std::string>() == "always") {
        s.uptime.mode = UptimeMode::Always;
      } else if (up->is_array()) {
        s.uptime.mode = UptimeMode::Schedule;
        for (std::size_t i = 0; i < up->size(); ++i) {
          if (!(*up)[i].is_boolean()) r.fail(p + ".uptime[" + std::to_string(i) + "]", "expected true or false");
          else s.uptime.schedule.push_back((*up)[i].get<bool>());
        }
      } else if (up->is_object()) {
        s.uptime.mode = UptimeMode::Bernoulli;
        s.uptime.probability_up = r.real(*up, p + ".uptime", "probability_up");
      } else {
        r.fail(p + ".uptime", "expected \"always\", a boolean schedule, or {\"probability_up\": p}");
      }
    }
    s.reserve_rate = r.real(*sim, p, "reserve_rate", false, 0.10);
    s.steady_k = static_cast<int>(r.integer(*sim, p, "steady_k", false, 3));
    const std::int64_t seed = r.integer(*sim, p, "seed", false, 1);
    if (seed < 0) r.fail(p + ".seed", "must be >= 0");
    s.seed = static_cast<std::uint64_t>(seed);
    const std::string objective = r.text(*sim, p, "price_objective", false, "revenue");
    if (objective == "revenue") s.price_objective = PriceObjective::Revenue;
    else if (objective == "profit") s.price_objective = PriceObjective::Profit;
    else r.fail(p + ".price_objective", "expected \"revenue\" or \"profit\"");
  }

  if (const Json* v = r.object(doc, "", "valuation", false)) {
    const std::string p = "valuation";
    s.target_apr = r.optional_real(*v, p, "target_apr");
    s.pe_ratio = r.optional_real(*v, p, "pe_ratio");
    s.months_to_steady = static_cast<int>(r.integer(*v, p, "months_to_steady", false, 12));
    s.reference_income_per_year = r.optional_money(*v, p, "reference_income_per_year_cents");
    s.reference_market_value = r.optional_money(*v, p, "reference_market_value_cents");
    if (r.field(*v, p, "reference_users", false)) s.reference_users = r.integer(*v, p, "reference_users");
  }

  if (const Json* sw = r.object(doc, "", "sweep", false)) {
    s.sweep_min_users = r.integer(*sw, "sweep", "min_users", false, 0);
    s.sweep_max_users = r.integer(*sw, "sweep", "max_users", false, 100);
  }

  // Skip invariant messages for fields that already have a structural error.
  std::set<std::string> reported;
  for (const auto& i : issues) reported.insert(i.substr(0, i.find(':')));
  for (auto& i : s.check()) {
    if (!reported.count(i.substr(0, i.find(':')))) issues.push_back(std::move(i));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return s;
}

Scenario load_scenario(const fs::path& file) {
  const Json doc = parse_file(file, "scenario");
  return scenario_from_json(doc, file.parent_path());
}

Json scenario_to_json(const Scenario& s) {
  Json services = Json::array();
  for (const auto& cfg : s.services) {
    Json curve = curve_to_json(cfg.spec.curve);
    if (!cfg.curve_ref.empty()) curve["source"] = cfg.curve_ref;
    Json svc{{"id", cfg.spec.id},
             {"name", cfg.spec.name},
             {"marginal_cost_cents", cfg.spec.marginal_cost.cents},
             {"fixed_cost_cents_per_month", cfg.spec.fixed_cost_per_month.cents}};
    if (cfg.price_fixed) svc["unit_price_cents"] = cfg.spec.unit_price.cents;
    svc["curve"] = std::move(curve);
    services.push_back(std::move(svc));
  }
  Json pledges = Json::array();
  for (const auto& p : s.pledges)
    pledges.push_back(Json{{"month", p.month}, {"investor", p.investor}, {"amount_cents", p.amount.cents}});

  Json uptime;
  switch (s.uptime.mode) {
    case UptimeMode::Always: uptime = "always"; break;
    case UptimeMode::Schedule: {
      uptime = Json::array();
      for (bool b : s.uptime.schedule) uptime.push_back(b);
      break;
    }
    case UptimeMode::Bernoulli: uptime = Json{{"probability_up", s.uptime.probability_up}}; break;
  }

  Json users = Json::array();
  for (auto u : s.users) users.push_back(u);

  Json valuation{{"months_to_steady", s.months_to_steady}};
  if (s.target_apr) valuation["target_apr"] = *s.target_apr;
  if (s.pe_ratio) valuation["pe_ratio"] = *s.pe_ratio;
  if (s.reference_income_per_year) valuation["reference_income_per_year_cents"] = s.reference_income_per_year->cents;
  if (s.reference_market_value) valuation["reference_market_value_cents"] = s.reference_market_value->cents;
  if (s.reference_users) valuation["reference_users"] = *s.reference_users;

  return Json{
      {"name", s.name},
      {"company",
       {{"id", s.company_id},
        {"proposer", s.proposer_id},
        {"sensor_count", s.sensor_count},
        {"hardware_cost_per_sensor_cents", s.hardware_cost_per_sensor.cents},
        {"installation_cost_cents", s.installation_cost.cents},
        {"other_startup_costs_cents", s.other_startup_costs.cents},
        {"pre_ipo_value_cents", s.pre_ipo_value.cents},
        {"esop_fraction", s.esop_fraction},
        {"share_price_cents", s.share_price.cents},
        {"costs",
         {{"admin_fees_cents_per_month", s.costs.admin_fees_per_month.cents},
          {"incentive_rate", s.costs.incentive_rate},
          {"maintenance_hours_per_month", s.costs.maintenance_hours_per_month},
          {"maintenance_hourly_rate_cents", s.costs.maintenance_hourly_rate.cents}}},
        {"services", services}}},
      {"ipo", {{"goal_cents", s.funding_goal.cents}, {"window_months", s.window_months}, {"pledges", pledges}}},
      {"simulation",
       {{"months", s.months},
        {"users", users},
        {"uptime", uptime},
        {"reserve_rate", s.reserve_rate},
        {"steady_k", s.steady_k},
        {"seed", s.seed},
        {"price_objective", objective_name(s.price_objective)}}},
      {"valuation", valuation},
      {"sweep", {{"min_users", s.sweep_min_users}, {"max_users", s.sweep_max_users}}},
  };
}

PortfolioInstance instance_from_json(const Json& doc) {
  std::vector<std::string> issues;
  Reader r(issues);
  PortfolioInstance inst;
  if (!doc.is_object()) throw ValidationError("instance: expected a JSON object at the top level");
  const Json* companies = r.field(doc, "", "companies", true);
  if (companies && !companies->is_array()) r.fail("companies", "expected an array");
  for (std::size_t i = 0; companies && companies->is_array() && i < companies->size(); ++i) {
    const std::string at = "companies[" + std::to_string(i) + "]";
    const Json& c = (*companies)[i];
    if (!c.is_object()) {
      r.fail(at, "expected an object");
      continue;
    }
    inst.companies.push_back(
        {r.text(c, at, "id"), r.money(c, at, "valuation_cents"), r.real(c, at, "x_m"), r.real(c, at, "y_m")});
  }
  inst.entity_count = static_cast<int>(r.integer(doc, "", "N"));
  inst.threshold = r.money(doc, "", "T_cents");
  inst.min_entity_valuation = r.optional_money(doc, "", "min_entity_valuation_cents");
  if (const Json* m = r.field(doc, "", "pairwise_scores", false)) {
    const std::size_t n = inst.companies.size();
    std::vector<double> values;
    bool ok = m->is_array() && m->size() == n;
    for (std::size_t i = 0; ok && i < n; ++i) {
      ok = (*m)[i].is_array() && (*m)[i].size() == n;
      for (std::size_t k = 0; ok && k < n; ++k) {
        ok = (*m)[i][k].is_number();
        if (ok) values.push_back((*m)[i][k].get<double>());
      }
    }
    if (!ok) {
      r.fail("pairwise_scores", "expected an " + std::to_string(n) + " x " + std::to_string(n) + " numeric matrix");
    } else {
      try {
        inst.scores = PairwiseScores(n, std::move(values));
      } catch (const ValidationError& e) {
        issues.insert(issues.end(), e.issues().begin(), e.issues().end());
      }
    }
  }
  const std::vector<std::string> parsed = issues;
  for (auto& i : inst.check("")) {
    std::string issue = i.substr(i[0] == '.' ? 1 : 0);
    const std::string path = issue.substr(0, issue.find(':'));
    const bool seen = std::any_of(parsed.begin(), parsed.end(),
                                  [&](const std::string& p) { return p.rfind(path + ":", 0) == 0; });
    if (!seen) issues.push_back(std::move(issue));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return inst;
}

PortfolioInstance load_instance(const fs::path& file) { return instance_from_json(parse_file(file, "instance")); }

Json assignment_to_json(const PortfolioInstance& instance, const VirtualAssignment& a,
                        const std::optional<OracleCheck>& oracle) {
  Json entities = Json::array();
  for (int j = 0; j < instance.entity_count; ++j) {
    Json members = Json::array();
    Money load;
    for (std::size_t i = 0; i < a.entity_of.size(); ++i) {
      if (a.entity_of[i] != j) continue;
      members.push_back(instance.companies[i].id);
      load += instance.companies[i].valuation;
    }
    entities.push_back(Json{{"entity", j + 1},
                            {"members", members},
                            {"valuation_cents", load.cents},
                            {"score", a.entity_scores.at(static_cast<std::size_t>(j))}});
  }
  Json assignment = Json::object();
  for (std::size_t i = 0; i < a.entity_of.size(); ++i) assignment[instance.companies[i].id] = a.entity_of[i] + 1;

  Json out{{"method", a.exhaustive ? "exhaustive" : "heuristic"},
           {"objective", a.objective},
           {"N", instance.entity_count},
           {"T_cents", instance.threshold.cents},
           {"assignment", assignment},
           {"entities", entities}};
  out["oracle"] = oracle ? Json{{"objective", oracle->objective}, {"gap", oracle->gap}} : Json(nullptr);
  return out;
}

Json settlement_to_json(const Settlement& s) {
  return Json{{"outcome", to_string(s.outcome)},
              {"total_pledged_cents", s.total_pledged.cents},
              {"retained_cents", s.cash.cents},
              {"refunded_cents", s.total_refunded().cents},
              {"refunds", payouts_to_json(s.refunds)},
              {"cap_table", cap_table_to_json(s.cap_table)}};
}

Json metrics_to_json(const SimulationReport& report) {
  const TableMetrics& m = report.metrics;
  Json flags = Json::array();
  for (const auto& f : m.flags) flags.push_back(f);
  return Json{
      {"scenario", report.scenario_name},
      {"ipo_value",
       {{"asset_cents", (m.pre_ipo_value - m.working_capital).cents},
        {"working_capital_cents", m.working_capital.cents},
        {"total_cents", m.pre_ipo_value.cents}}},
      {"asset_valuation_cents", m.asset_valuation.cents},
      {"income_per_year_cents", optional_cents(m.income_per_year)},
      {"pe_ratio", m.pe_ratio},
      {"market_value_cents", optional_cents(m.market_value)},
      {"reference_market_value_cents", optional_cents(m.reference_market_value)},
      {"implied_reference_pe", optional_real(m.implied_reference_pe)},
      {"users", {{"break_even", optional_int(m.break_even_users)}, {"reference", optional_int(m.reference_users)}}},
      {"return_over_preipo_pct", optional_real(m.return_over_preipo_pct)},
      {"return_over_preipo_pct_at_reference", optional_real(m.return_over_preipo_pct_at_reference)},
      {"preipo_apr", optional_real(m.preipo_apr)},
      {"proposer_reward_cents", optional_cents(m.proposer_reward)},
      {"proposer_reward_cents_at_reference", optional_cents(m.proposer_reward_at_reference)},
      {"admin_pay",
       {{"hourly_rate_cents", m.admin_hourly_rate.cents},
        {"hours_per_year", m.admin_hours_per_year},
        {"annual_cents", m.admin_pay_per_year.cents}}},
      {"annual_revenue_per_user_cents", m.annual_revenue_per_user.cents},
      {"simulated_first_year_profit_cents", m.simulated_annual_profit.cents},
      {"final_state", to_string(report.company.state)},
      {"flags", flags},
  };
}

Json report_to_json(const SimulationReport& report) {
  Json statements = Json::array();
  for (const auto& st : report.statements) {
    Json revenue = Json::array();
    for (Money r : st.revenue_by_service) revenue.push_back(r.cents);
    statements.push_back(Json{{"month", st.month},
                              {"active_users", st.active_users},
                              {"uptime_ok", st.uptime_ok},
                              {"revenue_by_service_cents", revenue},
                              {"marginal_costs_cents", st.marginal_costs.cents},
                              {"fixed_costs_cents", st.fixed_costs.cents},
                              {"maintenance_pay_cents", st.maintenance_pay.cents},
                              {"incentive_pay_cents", st.incentive_pay.cents},
                              {"depreciation_cents", st.depreciation.cents},
                              {"profit_cents", st.profit.cents},
                              {"dividend_paid_cents", st.dividend_paid.cents},
                              {"reserve_delta_cents", st.reserve_delta.cents},
                              {"unpaid_obligations_cents", st.unpaid_obligations.cents},
                              {"opening_cash_cents", st.opening_cash.cents},
                              {"closing_cash_cents", st.closing_cash.cents},
                              {"dividends", payouts_to_json(st.dividends)}});
  }
  Json prices = Json::object();
  for (std::size_t i = 0; i < report.prices.size(); ++i) prices[report.service_ids.at(i)] = report.prices[i].cents;
  const SensorCompany& c = report.company;
  return Json{
      {"scenario", report.scenario_name},
      {"ipo", settlement_to_json(report.ipo)},
      {"prices_cents", prices},
      {"statements", statements},
      {"company",
       {{"id", c.id},
        {"state", to_string(c.state)},
        {"months_operated", c.months_operated},
        {"cash_cents", c.cash.cents},
        {"reserve_cents", c.reserve.balance.cents},
        {"cap_table", cap_table_to_json(c.cap_table)},
        {"valuation",
         {{"method", c.valuation.method == ValuationMethod::AssetApproach ? "asset" : "market"},
          {"current_value_cents", c.valuation.current_value.cents},
          {"pre_ipo_value_cents", c.valuation.pre_ipo_value.cents}}},
        {"esop_granted", c.esop.granted},
        {"liquidation_payouts", payouts_to_json(c.liquidation_payouts)}}},
      {"break_even_users", optional_int(report.sweep.break_even_users)},
      {"metrics", metrics_to_json(report)},
  };
}

std::string sweep_csv(const BreakEvenSweep& sweep) {
  std::ostringstream out;
  out << "users,annual_revenue_cents,annual_cost_cents,profit_cents\n";
  for (const auto& r : sweep.rows)
    out << r.users << ',' << r.annual_revenue.cents << ',' << r.annual_cost.cents << ',' << r.profit.cents << '\n';
  return out.str();
}

std::string statements_csv(const std::vector<MonthlyStatement>& statements) {
  std::ostringstream out;
  out << "month,active_users,uptime_ok,revenue_cents,marginal_costs_cents,fixed_costs_cents,"
         "maintenance_pay_cents,incentive_pay_cents,depreciation_cents,profit_cents,dividend_paid_cents,"
         "reserve_delta_cents,unpaid_obligations_cents,opening_cash_cents,closing_cash_cents\n";
  for (const auto& s : statements) {
    out << s.month << ',' << s.active_users << ',' << (s.uptime_ok ? 1 : 0) << ',' << s.revenue().cents << ','
        << s.marginal_costs.cents << ',' << s.fixed_costs.cents << ',' << s.maintenance_pay.cents << ','
        << s.incentive_pay.cents << ',' << s.depreciation.cents << ',' << s.profit.cents << ','
        << s.dividend_paid.cents << ',' << s.reserve_delta.cents << ',' << s.unpaid_obligations.cents << ','
        << s.opening_cash.cents << ',' << s.closing_cash.cents << '\n';
  }
  return out.str();
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

void write_text_file(const fs::path& file, const std::string& text) {
  std::error_code ec;
  if (file.has_parent_path()) fs::create_directories(file.parent_path(), ec);
  if (ec) throw IoError("cannot create directory '" + file.parent_path().string() + "': " + ec.message());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + file.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + file.string() + "'");
}

std::vector<fs::path> emit_report(const SimulationReport& report, ReportFormat format, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) throw IoError("output directory '" + out_dir.string() + "' is not usable");

  std::vector<fs::path> written;
  auto emit = [&](const char* name, const std::string& text) {
    write_text_file(out_dir / name, text);
    written.push_back(out_dir / name);
  };
  if (format == ReportFormat::Json || format == ReportFormat::All) {
    emit("metrics.json", dump_json(metrics_to_json(report)));
    emit("report.json", dump_json(report_to_json(report)));
  }
  if (format == ReportFormat::Csv || format == ReportFormat::All) {
    emit("statements.csv", statements_csv(report.statements));
    emit("sweep.csv", sweep_csv(report.sweep));
  }
  return written;
}

} // namespace sensorco
