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

#include <string>

#include "sensorco/sensorco.h"

namespace {

const std::string kData = SENSORCO_DATA_DIR;

std::string take(char* s) {
  std::string out = s ? s : "";
  sc_string_free(s);
  return out;
}

} // namespace

TEST_CASE("null arguments are rejected") {
  CHECK(sc_scenario_load(nullptr, nullptr) == SC_ERR_INVALID_ARGUMENT);
  CHECK(std::string(sc_last_error()).find("must not be null") != std::string::npos);
  CHECK(sc_simulate(nullptr, nullptr) == SC_ERR_INVALID_ARGUMENT);
  CHECK(sc_sweep_size(nullptr) == 0);
  CHECK(sc_sweep_break_even(nullptr, nullptr) == 0);
  sc_scenario_free(nullptr);
  sc_report_free(nullptr);
}

TEST_CASE("missing scenario is a validation error") {
  sc_scenario* s = nullptr;
  CHECK(sc_scenario_load((kData + "/scenarios/missing.json").c_str(), &s) == SC_ERR_VALIDATION);
  CHECK(s == nullptr);
  CHECK(std::string(sc_last_error()).size() > 0);
  CHECK(std::string(sc_status_name(SC_ERR_VALIDATION)) == "validation error");
}

TEST_CASE("valuation functions") {
  double pe = 0.0;
  REQUIRE(sc_pe_from_apr(0.041, &pe) == SC_OK);
  CHECK(pe == doctest::Approx(24.39).epsilon(0.0005));
  CHECK(sc_pe_from_apr(0.0, &pe) == SC_ERR_VALIDATION);
  int64_t value = 0;
  REQUIRE(sc_market_valuation(2375, 24.4, &value) == SC_OK);
  CHECK(value == 57950);
  double pct = 0.0;
  REQUIRE(sc_appreciation_over_preipo(390400, 49500, &pct) == SC_OK);
  CHECK(pct == doctest::Approx(788.69).epsilon(0.0001));
  int64_t reward = 0;
  REQUIRE(sc_proposer_reward(57950, 0.2, &reward) == SC_OK);
  CHECK(reward == 11590);
  double apr = 0.0;
  REQUIRE(sc_preipo_apr(24.4, 2375, 23900, 12, &apr) == SC_OK);
  CHECK(apr == doctest::Approx(0.4247).epsilon(0.0005));
  CHECK(sc_preipo_apr(1.0, 1000, 10000, 5, &apr) == SC_ERR_DOMAIN);
}

TEST_CASE("simulate and sweep through handles") {
  sc_scenario* s = nullptr;
  REQUIRE(sc_scenario_load((kData + "/scenarios/parking.scenario.json").c_str(), &s) == SC_OK);
  sc_report* r = nullptr;
  REQUIRE(sc_simulate(s, &r) == SC_OK);
  char* metrics = nullptr;
  REQUIRE(sc_report_metrics_json(r, &metrics) == SC_OK);
  CHECK(take(metrics).find("\"market_value_cents\": 57950") != std::string::npos);

  sc_sweep* sw = nullptr;
  REQUIRE(sc_sweep_run(s, 0, 100, &sw) == SC_OK);
  CHECK(sc_sweep_size(sw) == 101);
  sc_sweep_row row{};
  REQUIRE(sc_sweep_row_at(sw, 0, &row) == SC_OK);
  CHECK(row.users == 0);
  CHECK(row.profit_cents == row.annual_revenue_cents - row.annual_cost_cents);
  CHECK(sc_sweep_row_at(sw, 101, &row) == SC_ERR_INVALID_ARGUMENT);
  int64_t be = -1;
  CHECK(sc_sweep_break_even(sw, &be) == 1);
  CHECK(be > 0);

  sc_overrides o{};
  o.has_users = 1;
  o.users = -3;
  CHECK(sc_scenario_apply_overrides(s, &o) == SC_ERR_VALIDATION);
  o.users = 0;
  CHECK(sc_scenario_apply_overrides(s, &o) == SC_OK);

  sc_sweep_free(sw);
  sc_report_free(r);
  sc_scenario_free(s);
}

TEST_CASE("echo json reloads") {
  sc_scenario* s = nullptr;
  REQUIRE(sc_scenario_load((kData + "/scenarios/air.scenario.json").c_str(), &s) == SC_OK);
  char* echo = nullptr;
  REQUIRE(sc_scenario_echo_json(s, &echo) == SC_OK);
  const std::string text = take(echo);
  CHECK(text.find("\"source\": \"../curves/air_realtime.curve.json\"") != std::string::npos);
  sc_scenario_free(s);
}

TEST_CASE("pricing") {
  sc_curve* c = nullptr;
  REQUIRE(sc_curve_load((kData + "/curves/air_five_year.curve.json").c_str(), &c) == SC_OK);
  int64_t price = 0, monthly = 0;
  REQUIRE(sc_optimize_price(c, 0, 1, SC_OBJECTIVE_REVENUE, &price, &monthly) == SC_OK);
  CHECK(price == 400);
  double u = -1.0;
  REQUIRE(sc_curve_interpolate(c, 1000000, &u) == SC_OK);
  CHECK(u == 0.0);
  CHECK(sc_optimize_price(c, -1, 1, SC_OBJECTIVE_PROFIT, &price, nullptr) == SC_ERR_VALIDATION);
  sc_curve_free(c);
}

TEST_CASE("virtualize with oracle") {
  sc_instance* inst = nullptr;
  REQUIRE(sc_instance_load((kData + "/instances/demo4.instance.json").c_str(), &inst) == SC_OK);
  for (int heuristic : {0, 1}) {
    sc_assignment* a = nullptr;
    REQUIRE(sc_virtualize(inst, heuristic, 1, &a) == SC_OK);
    CHECK(sc_assignment_objective(a) == doctest::Approx(-20.0));
    double oracle = 0.0, gap = 1.0;
    REQUIRE(sc_assignment_oracle(a, &oracle, &gap) == 1);
    CHECK(oracle == doctest::Approx(-20.0));
    CHECK(gap == doctest::Approx(0.0));
    char* json = nullptr;
    REQUIRE(sc_assignment_json(a, &json) == SC_OK);
    CHECK(take(json).find("\"entity\": 1") != std::string::npos);
    sc_assignment_free(a);
  }
  sc_instance_free(inst);
}

TEST_CASE("ipo settlement") {
  sc_scenario* s = nullptr;
  REQUIRE(sc_scenario_load((kData + "/scenarios/air.scenario.json").c_str(), &s) == SC_OK);
  char* json = nullptr;
  REQUIRE(sc_ipo_settle(s, &json) == SC_OK);
  const std::string text = take(json);
  CHECK(text.find("Funded") != std::string::npos);
  CHECK(text.find("\"goal_cents\": 49500") != std::string::npos);
  sc_scenario_free(s);
}
