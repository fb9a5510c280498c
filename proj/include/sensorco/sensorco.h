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

/*
 * C interface to the sensorco library. All handles are opaque and owned by
 * the caller, who releases them with the matching *_free function. Every
 * call returns an sc_status; on failure sc_last_error() describes the
 * problem (per thread, valid until the next failing call on that thread).
 * Strings handed out by the library are released with sc_string_free.
 */
#ifndef SENSORCO_H
#define SENSORCO_H

#include <stddef.h>
#include <stdint.h>

#if defined(SENSORCO_BUILDING_LIBRARY)
#define SC_API __attribute__((visibility("default")))
#else
#define SC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_INVALID_ARGUMENT = 1, /* null handle or output pointer */
  SC_ERR_VALIDATION = 2,       /* bad input data, missing or malformed files */
  SC_ERR_INFEASIBLE = 3,       /* no assignment satisfies the constraints */
  SC_ERR_STATE = 4,            /* operation not allowed in the current state */
  SC_ERR_DOMAIN = 5,           /* result is not a real number */
  SC_ERR_IO = 6,               /* output could not be written */
  SC_ERR_RUNTIME = 7
} sc_status;

typedef enum sc_report_format { SC_FORMAT_JSON = 1, SC_FORMAT_CSV = 2, SC_FORMAT_ALL = 3 } sc_report_format;
typedef enum sc_objective { SC_OBJECTIVE_REVENUE = 0, SC_OBJECTIVE_PROFIT = 1 } sc_objective;

typedef struct sc_scenario sc_scenario;
typedef struct sc_report sc_report;
typedef struct sc_sweep sc_sweep;
typedef struct sc_curve sc_curve;
typedef struct sc_instance sc_instance;
typedef struct sc_assignment sc_assignment;

typedef struct sc_overrides {
  int has_users;
  int64_t users;
  int has_months;
  int32_t months;
  int has_seed;
  uint64_t seed;
  int has_pe;
  double pe;
  int has_apr;
  double apr;
} sc_overrides;

typedef struct sc_sweep_row {
  int64_t users;
  int64_t annual_revenue_cents;
  int64_t annual_cost_cents;
  int64_t profit_cents;
} sc_sweep_row;

SC_API const char* sc_last_error(void);
SC_API const char* sc_status_name(sc_status status);
SC_API void sc_string_free(char* s);

/* Scenarios */
SC_API sc_status sc_scenario_load(const char* path, sc_scenario** out);
SC_API sc_status sc_scenario_apply_overrides(sc_scenario* scenario, const sc_overrides* overrides);
/* Scenario with curves inlined; loads back to an identical scenario. */
SC_API sc_status sc_scenario_echo_json(const sc_scenario* scenario, char** out_json);
SC_API void sc_scenario_free(sc_scenario* scenario);

/* Simulation */
SC_API sc_status sc_simulate(const sc_scenario* scenario, sc_report** out);
SC_API sc_status sc_report_write(const sc_report* report, const char* out_dir, sc_report_format format);
SC_API sc_status sc_report_metrics_json(const sc_report* report, char** out_json);
SC_API sc_status sc_report_json(const sc_report* report, char** out_json);
SC_API void sc_report_free(sc_report* report);

/* Break-even sweep: one twelve-month projection per user count. */
SC_API sc_status sc_sweep_run(const sc_scenario* scenario, int64_t min_users, int64_t max_users, sc_sweep** out);
SC_API size_t sc_sweep_size(const sc_sweep* sweep);
SC_API sc_status sc_sweep_row_at(const sc_sweep* sweep, size_t index, sc_sweep_row* out);
/* 1 and *users set when some user count breaks even, else 0. */
SC_API int sc_sweep_break_even(const sc_sweep* sweep, int64_t* users);
SC_API sc_status sc_sweep_csv(const sc_sweep* sweep, char** out_csv);
SC_API sc_status sc_sweep_write_csv(const sc_sweep* sweep, const char* path);
SC_API void sc_sweep_free(sc_sweep* sweep);

/* Valuation */
SC_API sc_status sc_pe_from_apr(double apr, double* pe);
SC_API sc_status sc_market_valuation(int64_t annual_earnings_cents, double pe, int64_t* value_cents);
SC_API sc_status sc_preipo_apr(double pe, int64_t annual_profit_cents, int64_t pre_ipo_cents,
                               int32_t months_to_steady, double* apr);
SC_API sc_status sc_appreciation_over_preipo(int64_t market_value_cents, int64_t pre_ipo_cents, double* pct);
SC_API sc_status sc_proposer_reward(int64_t market_value_cents, double esop_fraction, int64_t* reward_cents);

/* Pricing */
SC_API sc_status sc_curve_load(const char* path, sc_curve** out);
SC_API sc_status sc_curve_interpolate(const sc_curve* curve, int64_t price_cents, double* usages);
SC_API sc_status sc_optimize_price(const sc_curve* curve, int64_t marginal_cost_cents, int64_t user_count,
                                   sc_objective objective, int64_t* price_cents, int64_t* monthly_value_cents);
SC_API void sc_curve_free(sc_curve* curve);

/* Virtualization */
SC_API sc_status sc_instance_load(const char* path, sc_instance** out);
SC_API void sc_instance_free(sc_instance* instance);
/* Runs the optimizer and, when the labeling space is small enough, the
 * exhaustive oracle alongside it. */
SC_API sc_status sc_virtualize(const sc_instance* instance, int force_heuristic, uint64_t seed, sc_assignment** out);
SC_API double sc_assignment_objective(const sc_assignment* assignment);
/* 1 and outputs set when the oracle ran; gap = oracle - optimizer objective. */
SC_API int sc_assignment_oracle(const sc_assignment* assignment, double* oracle_objective, double* gap);
SC_API sc_status sc_assignment_json(const sc_assignment* assignment, char** out_json);
SC_API void sc_assignment_free(sc_assignment* assignment);

/* IPO: settle the scenario's pledge schedule, result as JSON. */
SC_API sc_status sc_ipo_settle(const sc_scenario* scenario, char** out_json);

#ifdef __cplusplus
}
#endif

#endif
