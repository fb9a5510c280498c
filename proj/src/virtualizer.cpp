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

#include "sensorco/virtualizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <tuple>

#include "sensorco/error.hpp"

namespace sensorco {

namespace {

constexpr double kObjectiveTolerance = 1e-9;

} // namespace

PairwiseScores::PairwiseScores(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != n_ * n_) throw ValidationError("pairwise_scores: expected a square matrix");
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      if (!std::isfinite(values_[i * n_ + k])) throw ValidationError("pairwise_scores: entries must be finite");
      if (values_[i * n_ + k] != values_[k * n_ + i]) throw ValidationError("pairwise_scores: matrix must be symmetric");
    }
  }
}

PairwiseScores PairwiseScores::from_distance(std::span<const CompanySite> sites) {
  const std::size_t n = sites.size();
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double d = std::hypot(sites[i].x_m - sites[k].x_m, sites[i].y_m - sites[k].y_m);
      v[i * n + k] = v[k * n + i] = -d;
    }
  }
  return PairwiseScores(n, std::move(v));
}

PairwiseScores PortfolioInstance::effective_scores() const {
  return scores ? *scores : PairwiseScores::from_distance(companies);
}

std::vector<std::string> PortfolioInstance::check(const std::string& path) const {
  std::vector<std::string> issues;
  if (companies.empty()) issues.push_back(path + ".companies: must not be empty");
  if (entity_count < 1) issues.push_back(path + ".N: must be >= 1");
  if (threshold <= Money{}) issues.push_back(path + ".T_cents: must be > 0");
  for (std::size_t i = 0; i < companies.size(); ++i) {
    const auto& c = companies[i];
    const std::string at = path + ".companies[" + std::to_string(i) + "]";
    if (c.id.empty()) issues.push_back(at + ".id: must not be empty");
    if (c.valuation <= Money{}) issues.push_back(at + ".valuation_cents: must be > 0");
    if (!std::isfinite(c.x_m) || !std::isfinite(c.y_m)) issues.push_back(at + ": coordinates must be finite");
  }
  if (scores && scores->size() != companies.size())
    issues.push_back(path + ".pairwise_scores: must be " + std::to_string(companies.size()) + " x " +
                     std::to_string(companies.size()));
  return issues;
}

int VirtualAssignment::nonempty_entities() const {
  std::vector<int> seen(entity_scores.size(), 0);
  int count = 0;
  for (int e : entity_of) {
    if (e >= 0 && static_cast<std::size_t>(e) < seen.size() && !seen[e]++) ++count;
  }
  return count;
}

double compatibility_score(std::span<const CompanySite> members) {
  if (members.empty()) throw ValidationError("members: compatibility of an empty set is undefined");
  if (members.size() == 1) return 0.0;
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t k = i + 1; k < members.size(); ++k) {
      total += std::hypot(members[i].x_m - members[k].x_m, members[i].y_m - members[k].y_m);
      ++pairs;
    }
  }
  return -total / static_cast<double>(pairs);
}

double portfolio_objective(const PairwiseScores& scores, std::span<const int> entity_of, int entity_count,
                           std::vector<double>* entity_scores) {
  std::vector<double> sum(entity_count, 0.0);
  std::vector<std::size_t> pairs(entity_count, 0);
  const std::size_t m = entity_of.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      if (entity_of[i] == entity_of[k]) {
        sum[entity_of[i]] += scores(i, k);
        ++pairs[entity_of[i]];
      }
    }
  }
  double objective = 0.0;
  if (entity_scores) entity_scores->assign(entity_count, 0.0);
  for (int j = 0; j < entity_count; ++j) {
    const double c = pairs[j] ? sum[j] / static_cast<double>(pairs[j]) : 0.0;
    objective += c;
    if (entity_scores) (*entity_scores)[j] = c;
  }
  return objective;
}

std::string feasibility_problem(const PortfolioInstance& instance, std::span<const int> entity_of) {
  if (entity_of.size() != instance.companies.size()) return "assignment does not cover every company exactly once";
  std::vector<Money> load(instance.entity_count);
  std::vector<int> members(instance.entity_count, 0);
  for (std::size_t i = 0; i < entity_of.size(); ++i) {
    const int e = entity_of[i];
    if (e < 0 || e >= instance.entity_count) return "company '" + instance.companies[i].id + "' has no valid entity";
    load[e] += instance.companies[i].valuation;
    ++members[e];
  }
  for (int j = 0; j < instance.entity_count; ++j) {
    if (load[j] > instance.threshold)
      return "entity " + std::to_string(j + 1) + " valuation " + load[j].str() + " exceeds T " + instance.threshold.str();
    if (instance.min_entity_valuation && members[j] > 0 && load[j] < *instance.min_entity_valuation)
      return "entity " + std::to_string(j + 1) + " valuation " + load[j].str() + " is below the floor " +
             instance.min_entity_valuation->str();
  }
  return {};
}

std::uint64_t assignment_space(std::size_t companies, int entities) {
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < companies; ++i) {
    space *= static_cast<std::uint64_t>(entities);
    if (space > kMaxExhaustiveAssignments) return kMaxExhaustiveAssignments + 1;
  }
  return space;
}

namespace {

void require_valid(const PortfolioInstance& instance) {
  auto issues = instance.check();
  if (!issues.empty()) throw ValidationError(std::move(issues));
  for (const auto& c : instance.companies) {
    if (c.valuation > instance.threshold) {
      throw InfeasibleError("company '" + c.id + "' (valuation " + c.valuation.str() +
                            ") exceeds the per-entity threshold T " + instance.threshold.str() +
                            "; it fits no entity");
    }
  }
}

int count_nonempty(std::span<const int> entity_of, int entity_count) {
  std::vector<char> seen(entity_count, 0);
  int n = 0;
  for (int e : entity_of) {
    if (!seen[e]) {
      seen[e] = 1;
      ++n;
    }
  }
  return n;
}

/// Strict preference: higher objective, then fewer non-empty entities, then
/// lexicographically smaller labeling.
bool preferred(double obj, int nonempty, const std::vector<int>& labels, double best_obj, int best_nonempty,
               const std::vector<int>& best_labels) {
  if (obj > best_obj + kObjectiveTolerance) return true;
  if (obj < best_obj - kObjectiveTolerance) return false;
  if (nonempty != best_nonempty) return nonempty < best_nonempty;
  return labels < best_labels;
}

VirtualAssignment finish(const PortfolioInstance& instance, const PairwiseScores& scores, std::vector<int> labels,
                         bool exhaustive) {
  VirtualAssignment out;
  out.objective = portfolio_objective(scores, labels, instance.entity_count, &out.entity_scores);
  out.entity_of = std::move(labels);
  out.exhaustive = exhaustive;
  if (auto problem = feasibility_problem(instance, out.entity_of); !problem.empty()) {
    throw std::logic_error("virtualizer produced an infeasible assignment: " + problem);
  }
  return out;
}

} // namespace

VirtualAssignment brute_force_portfolio(const PortfolioInstance& instance) {
  require_valid(instance);
  const std::size_t m = instance.companies.size();
  const int n = instance.entity_count;
  if (assignment_space(m, n) > kMaxExhaustiveAssignments) {
    throw ValidationError("instance: N^M exceeds " + std::to_string(kMaxExhaustiveAssignments) +
                          " labelings; use optimize_portfolio for instances this large");
  }
  const PairwiseScores scores = instance.effective_scores();

  std::vector<int> labels(m, 0);
  std::vector<int> best;
  double best_obj = 0.0;
  int best_nonempty = 0;
  for (;;) {
    if (feasibility_problem(instance, labels).empty()) {
      const double obj = portfolio_objective(scores, labels, n);
      const int nonempty = count_nonempty(labels, n);
      if (best.empty() || preferred(obj, nonempty, labels, best_obj, best_nonempty, best)) {
        best = labels;
        best_obj = obj;
        best_nonempty = nonempty;
      }
    }
    // Odometer with the last company fastest: lexicographic enumeration.
    std::size_t pos = m;
    while (pos > 0 && labels[pos - 1] == n - 1) labels[--pos] = 0;
    if (pos == 0) break;
    ++labels[pos - 1];
  }
  if (best.empty()) {
    throw InfeasibleError("no assignment of " + std::to_string(m) + " companies to " + std::to_string(n) +
                          " entities satisfies the valuation constraints");
  }
  return finish(instance, scores, std::move(best), true);
}

namespace {

/// Deterministic across standard libraries, unlike std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Euclidean projection of `row` onto the probability simplex.
void project_to_simplex(std::span<double> row) {
  std::vector<double> sorted(row.begin(), row.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - t > 0.0) theta = t;
  }
  for (double& v : row) v = std::max(0.0, v - theta);
}

class Heuristic {
public:
  Heuristic(const PortfolioInstance& instance, const PairwiseScores& scores, const OptimizeOptions& options)
      : inst_(instance), scores_(scores), opts_(options), m_(instance.companies.size()), n_(instance.entity_count) {
    double largest = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t k = 0; k < m_; ++k) largest = std::max(largest, std::abs(scores_(i, k)));
    score_scale_ = largest > 0.0 ? largest : 1.0;
  }

  std::vector<int> run() {
    std::vector<int> best;
    double best_obj = 0.0;
    int best_nonempty = 0;
    auto consider = [&](const std::vector<int>& labels) {
      if (!feasibility_problem(inst_, labels).empty()) return false;
      const double obj = portfolio_objective(scores_, labels, n_);
      const int nonempty = count_nonempty(labels, n_);
      if (best.empty() || preferred(obj, nonempty, labels, best_obj, best_nonempty, best)) {
        best = labels;
        best_obj = obj;
        best_nonempty = nonempty;
        return true;
      }
      return false;
    };
    for (int r = 0; r < std::max(1, opts_.restarts); ++r) {
      std::mt19937_64 rng(opts_.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r));
      // Even restarts start from the relaxation, odd ones from a random packing.
      auto labels = r % 2 == 0 ? round(relax(rng)) : random_packing(rng);
      if (!labels) continue;
      polish(*labels);
      consider(*labels);
      kick_and_polish(*labels, rng, consider);
    }
    if (best.empty()) {
      throw InfeasibleError("heuristic found no assignment of " + std::to_string(m_) + " companies to " +
                            std::to_string(n_) + " entities within the valuation constraints");
    }
    return best;
  }

private:
  double weight(const std::vector<double>& y, std::size_t i, int j) const { return y[i * n_ + j]; }

  /// Projected gradient ascent on sum_j sum_{i<k} s_ik y_ij y_kj with a
  /// quadratic penalty on entity load above T.
  std::vector<double> relax(std::mt19937_64& rng) const {
    std::vector<double> y(m_ * n_);
    for (std::size_t i = 0; i < m_; ++i) {
      double row = 0.0;
      for (int j = 0; j < n_; ++j) row += (y[i * n_ + j] = 0.5 + unit_uniform(rng));
      for (int j = 0; j < n_; ++j) y[i * n_ + j] /= row;
    }
    const double t = inst_.threshold.as_real();
    const double penalty = 4.0;
    const double step = 0.5 / static_cast<double>(std::max<std::size_t>(1, m_));
    std::vector<double> grad(m_ * n_);
    std::vector<double> load(n_);
    for (int it = 0; it < opts_.iterations; ++it) {
      std::fill(load.begin(), load.end(), 0.0);
      for (std::size_t i = 0; i < m_; ++i)
        for (int j = 0; j < n_; ++j) load[j] += inst_.companies[i].valuation.as_real() * y[i * n_ + j];
      for (std::size_t i = 0; i < m_; ++i) {
        const double v = inst_.companies[i].valuation.as_real();
        for (int j = 0; j < n_; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < m_; ++k)
            if (k != i) g += scores_(i, k) / score_scale_ * y[k * n_ + j];
          const double over = std::max(0.0, load[j] - t) / t;
          grad[i * n_ + j] = g - penalty * over * v / t;
        }
      }
      for (std::size_t i = 0; i < m_; ++i) {
        std::span<double> row(y.data() + i * n_, n_);
        for (int j = 0; j < n_; ++j) row[j] += step * grad[i * n_ + j];
        project_to_simplex(row);
      }
    }
    return y;
  }

  /// Highest-weight feasible entity per company, most confident companies
  /// first; overloaded entities shed their smallest member until feasible.
  std::optional<std::vector<int>> round(const std::vector<double>& y) const {
    std::vector<std::size_t> order(m_);
    std::iota(order.begin(), order.end(), 0);
    auto top = [&](std::size_t i) {
      double w = 0.0;
      for (int j = 0; j < n_; ++j) w = std::max(w, weight(y, i, j));
      return w;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return top(a) > top(b); });

    std::vector<int> labels(m_, -1);
    std::vector<Money> load(n_);
    for (std::size_t i : order) {
      const auto ranked = ranked_entities(y, i);
      int chosen = ranked.front();
      for (int j : ranked) {
        if (load[j] + inst_.companies[i].valuation <= inst_.threshold) {
          chosen = j;
          break;
        }
      }
      labels[i] = chosen;
      load[chosen] += inst_.companies[i].valuation;
    }
    if (repair(y, labels, load)) return labels;
    if (auto ffd = first_fit_decreasing()) return ffd;
    return std::nullopt;
  }

  std::vector<int> ranked_entities(const std::vector<double>& y, std::size_t i) const {
    std::vector<int> ranked(n_);
    std::iota(ranked.begin(), ranked.end(), 0);
    std::stable_sort(ranked.begin(), ranked.end(), [&](int a, int b) { return weight(y, i, a) > weight(y, i, b); });
    return ranked;
  }

  bool repair(const std::vector<double>& y, std::vector<int>& labels, std::vector<Money>& load) const {
    for (int guard = 0; guard < static_cast<int>(m_ * n_) + 1; ++guard) {
      int violated = -1;
      for (int j = 0; j < n_ && violated < 0; ++j)
        if (load[j] > inst_.threshold) violated = j;
      if (violated < 0) return true;

      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < m_; ++i)
        if (labels[i] == violated) members.push_back(i);
      std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        return inst_.companies[a].valuation < inst_.companies[b].valuation;
      });
      bool moved = false;
      for (std::size_t i : members) {
        for (int j : ranked_entities(y, i)) {
          if (j == violated || load[j] + inst_.companies[i].valuation > inst_.threshold) continue;
          load[violated] -= inst_.companies[i].valuation;
          load[j] += inst_.companies[i].valuation;
          labels[i] = j;
          moved = true;
          break;
        }
        if (moved) break;
      }
      if (!moved) return false;
    }
    return false;
  }

  std::optional<std::vector<int>> first_fit_decreasing() const {
    std::vector<std::size_t> order(m_);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return inst_.companies[a].valuation > inst_.companies[b].valuation;
    });
    std::vector<int> labels(m_, -1);
    std::vector<Money> load(n_);
    for (std::size_t i : order) {
      for (int j = 0; j < n_; ++j) {
        if (load[j] + inst_.companies[i].valuation <= inst_.threshold) {
          labels[i] = j;
          load[j] += inst_.companies[i].valuation;
          break;
        }
      }
      if (labels[i] < 0) return std::nullopt;
    }
    return labels;
  }

  /// (constraint violations, -objective), smaller is better.
  std::pair<int, double> key(const std::vector<int>& labels) const {
    std::vector<Money> load(n_);
    std::vector<int> members(n_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      load[labels[i]] += inst_.companies[i].valuation;
      ++members[labels[i]];
    }
    int violations = 0;
    for (int j = 0; j < n_; ++j) {
      if (load[j] > inst_.threshold) ++violations;
      if (inst_.min_entity_valuation && members[j] > 0 && load[j] < *inst_.min_entity_valuation) ++violations;
    }
    return {violations, -portfolio_objective(scores_, labels, n_)};
  }

  static bool improves(const std::pair<int, double>& a, const std::pair<int, double>& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second - 1e-12;
  }

  /// Random company order, each into a random entity that still has room.
  std::optional<std::vector<int>> random_packing(std::mt19937_64& rng) const {
    std::vector<std::size_t> order(m_);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = m_; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    std::vector<int> labels(m_, -1);
    std::vector<Money> load(n_);
    for (std::size_t i : order) {
      const int offset = static_cast<int>(rng() % static_cast<std::uint64_t>(n_));
      for (int d = 0; d < n_; ++d) {
        const int j = (offset + d) % n_;
        if (load[j] + inst_.companies[i].valuation <= inst_.threshold) {
          labels[i] = j;
          load[j] += inst_.companies[i].valuation;
          break;
        }
      }
      if (labels[i] < 0) return first_fit_decreasing();
    }
    return labels;
  }

  /// Iterated local search: relabel a few random companies, polish, keep the
  /// result when it is at least as good as the current point.
  template <class Consider>
  void kick_and_polish(std::vector<int> labels, std::mt19937_64& rng, Consider& consider) const {
    if (n_ < 2 || m_ < 2) return;
    auto current = key(labels);
    const int kicks = std::max(20, opts_.iterations / 10);
    for (int k = 0; k < kicks; ++k) {
      std::vector<int> trial = labels;
      const int changes = 2 + static_cast<int>(rng() % 2);
      for (int c = 0; c < changes; ++c) {
        const std::size_t i = rng() % m_;
        trial[i] = static_cast<int>(rng() % static_cast<std::uint64_t>(n_));
      }
      polish(trial);
      const auto trial_key = key(trial);
      if (!improves(current, trial_key)) {
        labels = std::move(trial);
        current = trial_key;
        consider(labels);
      }
    }
  }

  /// Best-improvement local search over single moves and pairwise swaps.
  void polish(std::vector<int>& labels) const {
    auto current = key(labels);
    for (bool improved = true; improved;) {
      improved = false;
      std::vector<int> best = labels;
      auto best_key = current;
      for (std::size_t i = 0; i < m_; ++i) {
        const int from = labels[i];
        for (int j = 0; j < n_; ++j) {
          if (j == from) continue;
          labels[i] = j;
          if (auto k = key(labels); improves(k, best_key)) {
            best_key = k;
            best = labels;
          }
        }
        labels[i] = from;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t k = i + 1; k < m_; ++k) {
          if (labels[i] == labels[k]) continue;
          std::swap(labels[i], labels[k]);
          if (auto kk = key(labels); improves(kk, best_key)) {
            best_key = kk;
            best = labels;
          }
          std::swap(labels[i], labels[k]);
        }
      }
      if (improves(best_key, current)) {
        labels = std::move(best);
        current = best_key;
        improved = true;
      }
    }
  }

  const PortfolioInstance& inst_;
  const PairwiseScores& scores_;
  OptimizeOptions opts_;
  std::size_t m_;
  int n_;
  double score_scale_ = 1.0;
};

} // namespace

VirtualAssignment optimize_portfolio(const PortfolioInstance& instance, const OptimizeOptions& options) {
  require_valid(instance);
  if (!options.force_heuristic &&
      assignment_space(instance.companies.size(), instance.entity_count) <= kMaxExhaustiveAssignments) {
    return brute_force_portfolio(instance);
  }
  const PairwiseScores scores = instance.effective_scores();
  Heuristic heuristic(instance, scores, options);
  return finish(instance, scores, heuristic.run(), false);
}

} // namespace sensorco
