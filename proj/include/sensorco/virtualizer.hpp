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

#ifndef SENSORCO_VIRTUALIZER_HPP
#define SENSORCO_VIRTUALIZER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensorco/money.hpp"

namespace sensorco {

struct CompanySite {
  std::string id;
  Money valuation;
  double x_m = 0.0;
  double y_m = 0.0;
};

/// Symmetric pairwise compatibility, higher is better. Entity score is the
/// mean over member pairs; singletons and empty entities score 0.
class PairwiseScores {
public:
  PairwiseScores() = default;
  PairwiseScores(std::size_t n, std::vector<double> values);

  /// -euclidean distance between sites.
  static PairwiseScores from_distance(std::span<const CompanySite> sites);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t k) const { return values_[i * n_ + k]; }

private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

struct PortfolioInstance {
  std::vector<CompanySite> companies;
  int entity_count = 1;
  Money threshold;
  /// Off by default; when set, every non-empty entity must reach it.
  std::optional<Money> min_entity_valuation;
  /// Overrides the distance-based score when present.
  std::optional<PairwiseScores> scores;

  PairwiseScores effective_scores() const;
  std::vector<std::string> check(const std::string& path = "instance") const;
};

struct VirtualAssignment {
  /// 0-based entity index per company, in instance order.
  std::vector<int> entity_of;
  std::vector<double> entity_scores;
  double objective = 0.0;
  bool exhaustive = false;

  int nonempty_entities() const;
};

/// -(mean pairwise distance) among members; 0 for a singleton.
double compatibility_score(std::span<const CompanySite> members);

/// Sum of entity scores for a labeling, filling `entity_scores` if given.
double portfolio_objective(const PairwiseScores& scores, std::span<const int> entity_of,
                           int entity_count, std::vector<double>* entity_scores = nullptr);

/// Empty string when feasible, otherwise the first violated constraint.
std::string feasibility_problem(const PortfolioInstance& instance, std::span<const int> entity_of);

inline constexpr std::uint64_t kMaxExhaustiveAssignments = 1'000'000;

std::uint64_t assignment_space(std::size_t companies, int entities);

/// Exact optimum by enumeration. Among equal objectives (1e-9), fewer
/// non-empty entities win, then the lexicographically smallest labeling.
VirtualAssignment brute_force_portfolio(const PortfolioInstance& instance);

struct OptimizeOptions {
  bool force_heuristic = false;
  std::uint64_t seed = 1;
  int restarts = 8;
  int iterations = 400;
};

/// Exhaustive when the space has at most 10^6 labelings, otherwise simplex-
/// constrained projected gradient ascent on the relaxed quadratic objective,
/// greedy rounding with threshold repair, then move/swap local search with
/// random restarts and perturbation.
VirtualAssignment optimize_portfolio(const PortfolioInstance& instance,
                                     const OptimizeOptions& options = {});

} // namespace sensorco

#endif
