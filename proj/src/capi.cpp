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

#include "sensorco/sensorco.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <algorithm>
#include <optional>
#include <string>

#include "sensorco/error.hpp"
#include "sensorco/ipo.hpp"
#include "sensorco/scenario_io.hpp"
#include "sensorco/simulation.hpp"
#include "sensorco/valuation.hpp"
#include "sensorco/virtualizer.hpp"

using namespace sensorco;

struct sc_scenario {
  Scenario value;
};
struct sc_report {
  SimulationReport value;
};
struct sc_sweep {
  BreakEvenSweep value;
};
struct sc_curve {
  PriceUsageCurve value;
};
struct sc_instance {
  PortfolioInstance value;
};
struct sc_assignment {
  PortfolioInstance instance;
  VirtualAssignment value;
  std::optional<OracleCheck> oracle;
};

namespace {

thread_local std::string last_error;

sc_status fail(sc_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
sc_status guarded(F&& body) {
  try {
    body();
    return SC_OK;
  } catch (const ValidationError& e) {
    return fail(SC_ERR_VALIDATION, e.what());
  } catch (const InfeasibleError& e) {
    return fail(SC_ERR_INFEASIBLE, e.what());
  } catch (const StateError& e) {
    return fail(SC_ERR_STATE, e.what());
  } catch (const DomainError& e) {
    return fail(SC_ERR_DOMAIN, e.what());
  } catch (const IoError& e) {
    return fail(SC_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SC_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(SC_ERR_RUNTIME, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define SC_REQUIRE(ptr)                                                        \
  do {                                                                         \
    if (!(ptr)) return fail(SC_ERR_INVALID_ARGUMENT, #ptr " must not be null"); \
  } while (0)

} // namespace

extern "C" {

const char* sc_last_error(void) { return last_error.c_str(); }

const char* sc_status_name(sc_status status) {
  switch (status) {
    case SC_OK: return "ok";
    case SC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SC_ERR_VALIDATION: return "validation error";
    case SC_ERR_INFEASIBLE: return "infeasible";
    case SC_ERR_STATE: return "state error";
    case SC_ERR_DOMAIN: return "domain error";
    case SC_ERR_IO: return "i/o error";
    case SC_ERR_RUNTIME: return "runtime error";
  }
  return "unknown status";
}

void sc_string_free(char* s) { std::free(s); }

sc_status sc_scenario_load(const char* path, sc_scenario** out) {
  SC_REQUIRE(path);
  SC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new sc_scenario{load_scenario(path)}; });
}

sc_status sc_scenario_apply_overrides(sc_scenario* scenario, const sc_overrides* o) {
  SC_REQUIRE(scenario);
  SC_REQUIRE(o);
  return guarded([&] {
    ScenarioOverrides ov;
    if (o->has_users) ov.users = o->users;
    if (o->has_months) ov.months = o->months;
    if (o->has_seed) ov.seed = o->seed;
    if (o->has_pe) ov.pe = o->pe;
    if (o->has_apr) ov.apr = o->apr;
    scenario->value = apply_overrides(scenario->value, ov);
  });
}

sc_status sc_scenario_echo_json(const sc_scenario* scenario, char** out_json) {
  SC_REQUIRE(scenario);
  SC_REQUIRE(out_json);
  return guarded([&] { *out_json = copy_string(dump_json(scenario_to_json(scenario->value))); });
}

void sc_scenario_free(sc_scenario* scenario) { delete scenario; }

sc_status sc_simulate(const sc_scenario* scenario, sc_report** out) {
  SC_REQUIRE(scenario);
  SC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new sc_report{run_scenario(scenario->value)}; });
}

sc_status sc_report_write(const sc_report* report, const char* out_dir, sc_report_format format) {
  SC_REQUIRE(report);
  SC_REQUIRE(out_dir);
  return guarded([&] {
    ReportFormat f = ReportFormat::All;
    if (format == SC_FORMAT_JSON) f = ReportFormat::Json;
    else if (format == SC_FORMAT_CSV) f = ReportFormat::Csv;
    else if (format != SC_FORMAT_ALL) throw ValidationError("format: unknown report format");
    emit_report(report->value, f, out_dir);
  });
}

sc_status sc_report_metrics_json(const sc_report* report, char** out_json) {
  SC_REQUIRE(report);
  SC_REQUIRE(out_json);
  return guarded([&] { *out_json = copy_string(dump_json(metrics_to_json(report->value))); });
}

sc_status sc_report_json(const sc_report* report, char** out_json) {
  SC_REQUIRE(report);
  SC_REQUIRE(out_json);
  return guarded([&] { *out_json = copy_string(dump_json(report_to_json(report->value))); });
}

void sc_report_free(sc_report* report) { delete report; }

sc_status sc_sweep_run(const sc_scenario* scenario, int64_t min_users, int64_t max_users, sc_sweep** out) {
  SC_REQUIRE(scenario);
  SC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new sc_sweep{break_even_sweep(scenario->value, min_users, max_users)}; });
}

size_t sc_sweep_size(const sc_sweep* sweep) { return sweep ? sweep->value.rows.size() : 0; }

sc_status sc_sweep_row_at(const sc_sweep* sweep, size_t index, sc_sweep_row* out) {
  SC_REQUIRE(sweep);
  SC_REQUIRE(out);
  if (index >= sweep->value.rows.size()) return fail(SC_ERR_INVALID_ARGUMENT, "index: out of range");
  const auto& r = sweep->value.rows[index];
  *out = sc_sweep_row{r.users, r.annual_revenue.cents, r.annual_cost.cents, r.profit.cents};
  return SC_OK;
}

int sc_sweep_break_even(const sc_sweep* sweep, int64_t* users) {
  if (!sweep || !sweep->value.break_even_users) return 0;
  if (users) *users = *sweep->value.break_even_users;
  return 1;
}

sc_status sc_sweep_csv(const sc_sweep* sweep, char** out_csv) {
  SC_REQUIRE(sweep);
  SC_REQUIRE(out_csv);
  return guarded([&] { *out_csv = copy_string(sweep_csv(sweep->value)); });
}

sc_status sc_sweep_write_csv(const sc_sweep* sweep, const char* path) {
  SC_REQUIRE(sweep);
  SC_REQUIRE(path);
  return guarded([&] { write_text_file(path, sweep_csv(sweep->value)); });
}

void sc_sweep_free(sc_sweep* sweep) { delete sweep; }

sc_status sc_pe_from_apr(double apr, double* pe) {
  SC_REQUIRE(pe);
  return guarded([&] { *pe = pe_from_apr(apr); });
}

sc_status sc_market_valuation(int64_t annual_earnings_cents, double pe, int64_t* value_cents) {
  SC_REQUIRE(value_cents);
  return guarded([&] { *value_cents = market_valuation(Money{annual_earnings_cents}, pe).cents; });
}

sc_status sc_preipo_apr(double pe, int64_t annual_profit_cents, int64_t pre_ipo_cents, int32_t months_to_steady,
                        double* apr) {
  SC_REQUIRE(apr);
  return guarded(
      [&] { *apr = preipo_apr(pe, Money{annual_profit_cents}, Money{pre_ipo_cents}, months_to_steady); });
}

sc_status sc_appreciation_over_preipo(int64_t market_value_cents, int64_t pre_ipo_cents, double* pct) {
  SC_REQUIRE(pct);
  return guarded([&] { *pct = appreciation_over_preipo(Money{market_value_cents}, Money{pre_ipo_cents}); });
}

sc_status sc_proposer_reward(int64_t market_value_cents, double esop_fraction, int64_t* reward_cents) {
  SC_REQUIRE(reward_cents);
  return guarded([&] { *reward_cents = proposer_reward(Money{market_value_cents}, esop_fraction).cents; });
}

sc_status sc_curve_load(const char* path, sc_curve** out) {
  SC_REQUIRE(path);
  SC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new sc_curve{load_curve(path)}; });
}

sc_status sc_curve_interpolate(const sc_curve* curve, int64_t price_cents, double* usages) {
  SC_REQUIRE(curve);
  SC_REQUIRE(usages);
  return guarded([&] { *usages = interpolate_usage(curve->value, Money{price_cents}); });
}

sc_status sc_optimize_price(const sc_curve* curve, int64_t marginal_cost_cents, int64_t user_count,
                            sc_objective objective, int64_t* price_cents, int64_t* monthly_value_cents) {
  SC_REQUIRE(curve);
  SC_REQUIRE(price_cents);
  return guarded([&] {
    if (marginal_cost_cents < 0) throw ValidationError("marginal_cost_cents: must be >= 0");
    ServiceSpec service{"service", "service", Money{}, Money{marginal_cost_cents}, Money{}, curve->value};
    const auto choice = optimize_price(
        service, user_count, objective == SC_OBJECTIVE_PROFIT ? PriceObjective::Profit : PriceObjective::Revenue);
    *price_cents = choice.price.cents;
    if (monthly_value_cents) *monthly_value_cents = choice.expected_monthly_value.cents;
  });
}

void sc_curve_free(sc_curve* curve) { delete curve; }

sc_status sc_instance_load(const char* path, sc_instance** out) {
  SC_REQUIRE(path);
  SC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new sc_instance{load_instance(path)}; });
}

void sc_instance_free(sc_instance* instance) { delete instance; }

sc_status sc_virtualize(const sc_instance* instance, int force_heuristic, uint64_t seed, sc_assignment** out) {
  SC_REQUIRE(instance);
  SC_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    OptimizeOptions options;
    options.force_heuristic = force_heuristic != 0;
    options.seed = seed;
    const auto& inst = instance->value;
    auto result = std::make_unique<sc_assignment>(sc_assignment{inst, optimize_portfolio(inst, options), {}});
    if (assignment_space(inst.companies.size(), inst.entity_count) <= kMaxExhaustiveAssignments) {
      const VirtualAssignment exact =
          result->value.exhaustive ? result->value : brute_force_portfolio(inst);
      result->oracle = OracleCheck{exact.objective, exact.objective - result->value.objective};
    }
    *out = result.release();
  });
}

double sc_assignment_objective(const sc_assignment* assignment) {
  return assignment ? assignment->value.objective : 0.0;
}

int sc_assignment_oracle(const sc_assignment* assignment, double* oracle_objective, double* gap) {
  if (!assignment || !assignment->oracle) return 0;
  if (oracle_objective) *oracle_objective = assignment->oracle->objective;
  if (gap) *gap = assignment->oracle->gap;
  return 1;
}

sc_status sc_assignment_json(const sc_assignment* assignment, char** out_json) {
  SC_REQUIRE(assignment);
  SC_REQUIRE(out_json);
  return guarded([&] {
    *out_json = copy_string(dump_json(assignment_to_json(assignment->instance, assignment->value, assignment->oracle)));
  });
}

void sc_assignment_free(sc_assignment* assignment) { delete assignment; }

sc_status sc_ipo_settle(const sc_scenario* scenario, char** out_json) {
  SC_REQUIRE(scenario);
  SC_REQUIRE(out_json);
  return guarded([&] {
    const Scenario& s = scenario->value;
    IpoProposal proposal;
    proposal.company_id = s.company_id;
    proposal.funding_goal = s.funding_goal;
    proposal.share_price = s.share_price;
    proposal.window_months = s.window_months;
    proposal.esop_fraction = s.esop_fraction;
    proposal.proposer_id = s.proposer_id;
    proposal.cost_plan = s.costs;
    FundingRound round = open_ipo(std::move(proposal));
    auto pledges = s.pledges;
    std::stable_sort(pledges.begin(), pledges.end(),
                     [](const ScheduledPledge& a, const ScheduledPledge& b) { return a.month < b.month; });
    for (const auto& p : pledges) round = pledge(std::move(round), p.investor, p.amount);
    Json doc = settlement_to_json(settle_ipo(round));
    doc["goal_cents"] = s.funding_goal.cents;
    *out_json = copy_string(dump_json(doc));
  });
}

} // extern "C"
