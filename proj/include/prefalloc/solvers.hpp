// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Committee selection algorithms for the Monroe and Chamberlin-Courant
// restrictions, the exact enumeration oracle and the closed-form quality
// bounds the approximation algorithms guarantee.
//
// Ties between alternatives always break toward the lowest index.

#ifndef PREFALLOC_SOLVERS_HPP_
#define PREFALLOC_SOLVERS_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prefalloc/core.hpp"
#include "prefalloc/instances.hpp"
#include "prefalloc/matching.hpp"
#include "prefalloc/numeric.hpp"
#include "prefalloc/random.hpp"

namespace prefalloc {

inline constexpr std::int64_t kDefaultEnumerationCap = 2'000'000;

struct SolverConfig {
  double epsilon = 0.1;
  double lambda = 0.9;
  std::uint64_t seed = 0;
  std::int64_t enumeration_cap = kDefaultEnumerationCap;
  std::optional<std::int64_t> sampling_runs_override;

  void Validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
    if (enumeration_cap < 1) throw DomainError("enumeration cap must be >= 1");
    if (sampling_runs_override && *sampling_runs_override < 1) {
      throw DomainError("sampling run override must be positive");
    }
  }
};

// An exact branch would have to enumerate more committees than allowed.
class EnumerationCapError : public std::runtime_error {
 public:
  EnumerationCapError(std::int64_t required, std::int64_t cap)
      : std::runtime_error("exact enumeration needs " + std::to_string(required) +
                           " committees, enumeration_cap is " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::int64_t required() const { return required_; }
  std::int64_t cap() const { return cap_; }

 private:
  std::int64_t required_;
  std::int64_t cap_;
};

// ---------------------------------------------------------------------------
// Closed-form bounds

// Lower bound on the greedy Monroe total satisfaction (K >= 3, Borda):
// (m-1) n (1 - (K-1)/(2(m-1)) - H_K/K).
inline double greedy_monroe_bound(int n, int m, int k) {
  if (m < 2) return 0.0;
  return static_cast<double>(m - 1) * n *
         (1.0 - static_cast<double>(k - 1) / (2.0 * (m - 1)) - harmonic_double(k) / k);
}

// Lower bound on the greedy CC total satisfaction: (1 - 2 w(K)/K) (m-1) n.
inline double greedy_cc_bound(int n, int m, int k) {
  return (1.0 - 2.0 * lambert_w(k) / k) * static_cast<double>(m - 1) * n;
}

// Expected fraction of OPT reached by one uniform K-sample, Borda Monroe.
inline double sampling_expected_ratio(int m, int k) {
  if (m < 2) return 1.0;
  const double K = k;
  const double M = m;
  return 0.5 * (1.0 + K / M - K * K / (M * M - M) + K * K * K / (M * M * M - M * M));
}

inline constexpr double kMaxCoverRatio = 1.0 - 1.0 / std::numbers::e;

// Cover depth of the greedy CC algorithm, ceil(m w(K) / K), within [1, m].
inline int cc_cover_depth(int m, int k) {
  const auto x = ceil_tolerant(static_cast<double>(m) * lambert_w(k) / k);
  return static_cast<int>(std::clamp<std::int64_t>(x, 1, m));
}

// Cover depth of the majority variant, ceil(-m ln(delta) / K), within [1, m].
inline int majority_cover_depth(int m, int k, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  const auto x = ceil_tolerant(-static_cast<double>(m) * std::log(delta) / k);
  return static_cast<int>(std::clamp<std::int64_t>(x, 1, m));
}

// Lower bound on the majority variant's min_delta value: every agent kept
// after dropping floor(delta n) is covered within the top x, so gets at
// least m - x.
inline Value greedy_cc_majority_bound(int m, int k, double delta) {
  return m - majority_cover_depth(m, k, delta);
}

// The approximation factor (1 + ln(delta)/K) the cover depth is tuned for.
inline double greedy_cc_majority_ratio(int k, double delta) {
  return 1.0 + std::log(delta) / k;
}

// ceil(-512 ln(1 - lambda) / (K eps^2)).
inline std::int64_t sampling_run_count(int k, double epsilon, double lambda) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  if (k < 1) throw DomainError("committee size must be positive");
  const double runs = -512.0 * std::log(1.0 - lambda) / (k * epsilon * epsilon);
  return std::max<std::int64_t>(1, ceil_tolerant(runs));
}

// ---------------------------------------------------------------------------
// Exact enumeration

namespace internal {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void RequireCommitteeSize(const Profile& profile, int k) {
  if (k < 1 || k > profile.num_alternatives()) {
    throw DomainError("committee size " + std::to_string(k) + " outside 1.." +
                      std::to_string(profile.num_alternatives()));
  }
}

// Calls visit(committee) for every k-subset of {1..m} in lexicographic order.
template <typename Visit>
void ForEachCombination(int m, int k, Visit visit) {
  std::vector<int> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[i] = i + 1;
  while (true) {
    visit(static_cast<const std::vector<int>&>(c));
    int i = k - 1;
    while (i >= 0 && c[i] == m - k + i + 1) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

// Number of nonempty subsets of alternatives with total cost <= budget,
// saturating at int64 max.
inline std::int64_t CountBudgetFeasible(const Instance& instance) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  const int m = instance.m();
  Value total_cost = 0;
  for (Value c : instance.costs) total_cost += c;
  const Value budget = std::min(instance.budget, total_cost);
  if (budget > 4'000'000) {
    return m >= 63 ? kMax : (std::int64_t{1} << m) - 1;
  }
  std::vector<std::int64_t> ways(static_cast<std::size_t>(budget) + 1, 0);
  ways[0] = 1;
  for (Value c : instance.costs) {
    for (Value b = budget; b >= c; --b) {
      ways[b] = ways[b] > kMax - ways[b - c] ? kMax : ways[b] + ways[b - c];
    }
  }
  std::int64_t count = 0;
  for (std::size_t b = 1; b < ways.size(); ++b) {
    count = count > kMax - ways[b] ? kMax : count + ways[b];
  }
  return count;
}

}  // namespace internal

// Committees that exact_enumeration would have to visit for `instance`.
inline std::int64_t enumeration_size(const Instance& instance) {
  if (instance.system == SystemTag::kGeneral) {
    return internal::CountBudgetFeasible(instance);
  }
  return binomial_saturating(instance.m(), instance.committee_size.value_or(0));
}

// Best committee and assignment for `objective` by enumerating every
// budget-feasible committee and matching each one optimally. Monroe
// instances use the balanced regime, CC instances unbounded capacities,
// general instances the instance capacities.
inline SolveReport exact_enumeration(const Instance& instance, const ScoringFunction& psf,
                                     Objective objective,
                                     std::int64_t enumeration_cap = kDefaultEnumerationCap) {
  internal::Stopwatch clock;
  instance.Validate();
  RequireCompatible(psf, objective);
  if (!instance.unit_weights()) {
    throw UnsupportedError("solvers require unit agent weights");
  }
  const std::int64_t required = enumeration_size(instance);
  if (required > enumeration_cap) throw EnumerationCapError(required, enumeration_cap);

  const Profile& profile = instance.profile;
  const int n = instance.n();
  std::optional<Assignment> best;
  Value best_value = 0;
  auto consider = [&](const std::vector<int>& committee, const CapacityRegime& regime) {
    Assignment a = match_optimal(profile, psf, committee, regime, objective);
    const Value v = evaluate(profile, psf, a, objective);
    if (!best || better(objective, v, best_value)) {
      best = std::move(a);
      best_value = v;
    }
  };

  if (instance.system == SystemTag::kGeneral) {
    const int m = instance.m();
    std::vector<int> chosen;
    std::function<void(int, Value, Value)> dfs = [&](int next, Value cost, Value cap) {
      if (!chosen.empty() && cap >= n) {
        std::vector<MemberBounds> bounds;
        for (int a : chosen) {
          bounds.push_back({0, static_cast<int>(std::min<Value>(instance.capacity_of(a), n))});
        }
        consider(chosen, CapacityRegime::Explicit(std::move(bounds)));
      }
      for (int a = next; a <= m; ++a) {
        if (cost + instance.cost_of(a) > instance.budget) continue;
        chosen.push_back(a);
        dfs(a + 1, cost + instance.cost_of(a), cap + instance.capacity_of(a));
        chosen.pop_back();
      }
    };
    dfs(1, 0, 0);
    if (!best) throw InfeasibleError("no budget-feasible committee can hold every agent");
  } else {
    const int k = *instance.committee_size;
    const CapacityRegime regime = instance.system == SystemTag::kMonroe
                                      ? CapacityRegime::MonroeBalanced()
                                      : CapacityRegime::CCUnbounded();
    internal::ForEachCombination(instance.m(), k, [&](const std::vector<int>& committee) {
      consider(committee, regime);
    });
  }

  SolveReport report;
  report.assignment = *std::move(best);
  report.objective = std::string(to_string(objective));
  report.value = best_value;
  report.algorithm = "exact";
  report.branch = "enumeration";
  report.elapsed = clock.elapsed();
  return report;
}

// ---------------------------------------------------------------------------
// Monroe

struct GreedyOptions {
  ScoringFunction psf = ScoringFunction::BordaDec();
  // Run under a non-Borda decreasing scoring function; the report is then
  // marked guarantee_void.
  bool permissive = false;
  std::int64_t enumeration_cap = kDefaultEnumerationCap;
};

namespace internal {

inline bool CheckGreedyScoring(const GreedyOptions& options) {
  if (!options.psf.decreasing()) {
    throw UnsupportedError("greedy solvers maximize satisfaction; scoring must be decreasing");
  }
  if (options.psf.is_borda_dec()) return false;
  if (!options.permissive) {
    throw UnsupportedError("greedy solvers are proven for borda_dec only; pass permissive");
  }
  return true;
}

}  // namespace internal

// Greedy Monroe: K rounds, each picking the unused alternative whose block
// of best-placed unassigned agents has the largest total score, and
// assigning that block. K <= 2 is solved exactly.
inline SolveReport greedy_monroe(const Profile& profile, int k,
                                 const GreedyOptions& options = {}) {
  internal::Stopwatch clock;
  internal::RequireCommitteeSize(profile, k);
  const bool void_guarantee = internal::CheckGreedyScoring(options);
  const int n = profile.num_agents();
  const int m = profile.num_alternatives();
  const ScoringFunction& psf = options.psf;

  if (k <= 2) {
    SolveReport report = exact_enumeration(make_monroe(profile, k), psf,
                                           Objective::kL1Dec, options.enumeration_cap);
    report.algorithm = "greedy_monroe";
    report.branch = "exact_small_k";
    report.guarantee_void = void_guarantee;
    report.elapsed = clock.elapsed();
    return report;
  }

  std::vector<int> targets(static_cast<std::size_t>(n), 0);
  std::vector<char> used(static_cast<std::size_t>(m) + 1, 0);
  // Unassigned agents bucketed by their rank of the candidate alternative;
  // buckets are filled in agent order so each block is stable by index.
  std::vector<std::vector<int>> by_rank(static_cast<std::size_t>(m) + 1);
  std::vector<int> best_block;
  std::vector<int> block;
  int remaining = n;
  for (int step = 0; step < k; ++step) {
    const int take = (remaining + (k - step) - 1) / (k - step);
    int best_alt = 0;
    Value best_score = -1;
    for (int a = 1; a <= m; ++a) {
      if (used[a]) continue;
      for (auto& bucket : by_rank) bucket.clear();
      for (int i = 0; i < n; ++i) {
        if (targets[i] == 0) by_rank[profile.position(i, a)].push_back(i);
      }
      block.clear();
      Value total = 0;
      for (int r = 1; r <= m && static_cast<int>(block.size()) < take; ++r) {
        for (int i : by_rank[r]) {
          if (static_cast<int>(block.size()) == take) break;
          block.push_back(i);
          total += psf(r, m);
        }
      }
      if (total > best_score) {
        best_score = total;
        best_alt = a;
        best_block = block;
      }
    }
    used[best_alt] = 1;
    for (int i : best_block) targets[i] = best_alt;
    remaining -= static_cast<int>(best_block.size());
  }

  SolveReport report;
  report.assignment = Assignment(std::move(targets));
  report.objective = "l1_dec";
  report.value = metric_l1(profile, psf, report.assignment);
  report.algorithm = "greedy_monroe";
  report.branch = "greedy";
  report.guarantee_void = void_guarantee;
  report.elapsed = clock.elapsed();
  return report;
}

// One uniform K-subset of the alternatives, matched optimally.
inline SolveReport sample_once_monroe(const Profile& profile, int k, Rng& rng,
                                      const ScoringFunction& psf = ScoringFunction::BordaDec()) {
  internal::Stopwatch clock;
  internal::RequireCommitteeSize(profile, k);
  RequireCompatible(psf, Objective::kL1Dec);
  std::vector<int> committee = rng.sample_subset(profile.num_alternatives(), k);
  std::sort(committee.begin(), committee.end());
  SolveReport report;
  report.assignment =
      match_monroe_l1(profile, psf, committee, CapacityRegime::MonroeBalanced());
  report.objective = "l1_dec";
  report.value = metric_l1(profile, psf, report.assignment);
  report.algorithm = "sample_monroe";
  report.branch = "sample";
  report.seed = rng.seed();
  report.elapsed = clock.elapsed();
  return report;
}

inline SolveReport sample_once_monroe(const Profile& profile, int k, std::uint64_t seed) {
  Rng rng(seed);
  return sample_once_monroe(profile, k, rng);
}

enum class CombinedBranch { kExactSmallK, kExactSmallM, kGreedyAndSampling };

inline std::string_view to_string(CombinedBranch b) {
  switch (b) {
    case CombinedBranch::kExactSmallK: return "exact_small_k";
    case CombinedBranch::kExactSmallM: return "exact_small_m";
    case CombinedBranch::kGreedyAndSampling: return "greedy_and_sampling";
  }
  return "?";
}

namespace internal {

// H_k / k >= threshold, decided exactly when the float sum is too close.
inline bool HarmonicMeanAtLeast(int k, double threshold) {
  const double approx = harmonic_double(k) / k;
  if (std::abs(approx - threshold) > 1e-12 * threshold) return approx >= threshold;
  return harmonic(k) / k >= Rational(threshold);
}

}  // namespace internal

struct CombinedPlan {
  CombinedBranch branch;
  std::int64_t sampling_runs = 0;  // nonzero only for kGreedyAndSampling
};

// Dispatch decision of the combined Monroe solver, without running it.
inline CombinedPlan plan_combined_monroe(int m, int k, const SolverConfig& config) {
  config.Validate();
  if (k < 1 || k > m) throw DomainError("committee size outside 1..m");
  if (k <= 8 || internal::HarmonicMeanAtLeast(k, config.epsilon / 2.0)) {
    return {CombinedBranch::kExactSmallK, 0};
  }
  if (m <= 1.0 + 2.0 / config.epsilon) return {CombinedBranch::kExactSmallM, 0};
  const std::int64_t runs = config.sampling_runs_override.value_or(
      sampling_run_count(k, config.epsilon, config.lambda));
  return {CombinedBranch::kGreedyAndSampling, runs};
}

// Exact for small K or small m; otherwise the better of greedy Monroe and
// the best of R independent samples. Run r draws from
// derive_seed(config.seed, r), so results do not depend on scheduling.
inline SolveReport combined_monroe(const Profile& profile, int k,
                                   const SolverConfig& config) {
  internal::Stopwatch clock;
  internal::RequireCommitteeSize(profile, k);
  const CombinedPlan plan = plan_combined_monroe(profile.num_alternatives(), k, config);
  const ScoringFunction psf = ScoringFunction::BordaDec();

  SolveReport report;
  if (plan.branch != CombinedBranch::kGreedyAndSampling) {
    report = exact_enumeration(make_monroe(profile, k), psf, Objective::kL1Dec,
                               config.enumeration_cap);
  } else {
    GreedyOptions greedy_options;
    greedy_options.enumeration_cap = config.enumeration_cap;
    report = greedy_monroe(profile, k, greedy_options);
    for (std::int64_t r = 0; r < plan.sampling_runs; ++r) {
      Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
      SolveReport sample = sample_once_monroe(profile, k, rng, psf);
      if (sample.value > report.value) report = std::move(sample);
    }
    report.sampling_runs = plan.sampling_runs;
  }
  report.algorithm = "combined_monroe";
  report.branch = std::string(to_string(plan.branch));
  report.seed = config.seed;
  report.elapsed = clock.elapsed();
  return report;
}

// ---------------------------------------------------------------------------
// Chamberlin-Courant

namespace internal {

// K rounds of "pick the unused alternative placed within the top `depth`
// by the most unassigned agents, and cover those agents". The returned
// committee has exactly K members.
inline std::vector<int> GreedyCover(const Profile& profile, int k, int depth) {
  const int n = profile.num_agents();
  const int m = profile.num_alternatives();
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  std::vector<char> used(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> committee;
  std::vector<int> count(static_cast<std::size_t>(m) + 1);
  for (int step = 0; step < k; ++step) {
    std::fill(count.begin(), count.end(), 0);
    for (int i = 0; i < n; ++i) {
      if (covered[i]) continue;
      for (int r = 1; r <= depth; ++r) ++count[profile.at_rank(i, r)];
    }
    int pick = 0;
    for (int a = 1; a <= m; ++a) {
      if (used[a]) continue;
      if (pick == 0 || count[a] > count[pick]) pick = a;
    }
    used[pick] = 1;
    committee.push_back(pick);
    for (int i = 0; i < n; ++i) {
      if (!covered[i] && profile.position(i, pick) <= depth) covered[i] = 1;
    }
  }
  std::sort(committee.begin(), committee.end());
  return committee;
}

}  // namespace internal

// Greedy CC with cover depth x = ceil(m w(K) / K). Every agent ends on its
// best committee member.
inline SolveReport greedy_cc(const Profile& profile, int k, const GreedyOptions& options = {}) {
  internal::Stopwatch clock;
  internal::RequireCommitteeSize(profile, k);
  const bool void_guarantee = internal::CheckGreedyScoring(options);
  const int depth = cc_cover_depth(profile.num_alternatives(), k);
  const auto committee = internal::GreedyCover(profile, k, depth);
  SolveReport report;
  report.assignment = match_cc(profile, options.psf, committee);
  report.objective = "l1_dec";
  report.value = metric_l1(profile, options.psf, report.assignment);
  report.algorithm = "greedy_cc";
  report.branch = "cover_depth_" + std::to_string(depth);
  report.guarantee_void = void_guarantee;
  report.elapsed = clock.elapsed();
  return report;
}

// Greedy CC tuned for min_delta: cover depth ceil(-m ln(delta) / K).
inline SolveReport greedy_cc_majority(const Profile& profile, int k, double delta,
                                      const GreedyOptions& options = {}) {
  internal::Stopwatch clock;
  internal::RequireCommitteeSize(profile, k);
  const bool void_guarantee = internal::CheckGreedyScoring(options);
  const int depth = majority_cover_depth(profile.num_alternatives(), k, delta);
  const auto committee = internal::GreedyCover(profile, k, depth);
  SolveReport report;
  report.assignment = match_cc(profile, options.psf, committee);
  report.objective = "min_delta";
  report.delta = delta;
  report.value = metric_min_delta(profile, options.psf, report.assignment, delta);
  report.algorithm = "greedy_cc_majority";
  report.branch = "cover_depth_" + std::to_string(depth);
  report.guarantee_void = void_guarantee;
  report.elapsed = clock.elapsed();
  return report;
}

// Marginal-gain greedy for total satisfaction under CC (max-cover style).
inline SolveReport maxcover_cc_baseline(const Profile& profile, int k,
                                        const ScoringFunction& psf = ScoringFunction::BordaDec()) {
  internal::Stopwatch clock;
  internal::RequireCommitteeSize(profile, k);
  RequireCompatible(psf, Objective::kL1Dec);
  const int n = profile.num_agents();
  const int m = profile.num_alternatives();
  std::vector<Value> current(static_cast<std::size_t>(n), 0);
  std::vector<char> used(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> committee;
  for (int step = 0; step < k; ++step) {
    int pick = 0;
    Value pick_gain = -1;
    for (int a = 1; a <= m; ++a) {
      if (used[a]) continue;
      Value gain = 0;
      for (int i = 0; i < n; ++i) {
        gain += std::max<Value>(0, psf(profile.position(i, a), m) - current[i]);
      }
      if (gain > pick_gain) {
        pick_gain = gain;
        pick = a;
      }
    }
    used[pick] = 1;
    committee.push_back(pick);
    for (int i = 0; i < n; ++i) {
      current[i] = std::max(current[i], psf(profile.position(i, pick), m));
    }
  }
  std::sort(committee.begin(), committee.end());
  SolveReport report;
  report.assignment = match_cc(profile, psf, committee);
  report.objective = "l1_dec";
  report.value = metric_l1(profile, psf, report.assignment);
  report.algorithm = "maxcover_cc";
  report.branch = "marginal_greedy";
  report.elapsed = clock.elapsed();
  return report;
}

}  // namespace prefalloc

#endif  // PREFALLOC_SOLVERS_HPP_
