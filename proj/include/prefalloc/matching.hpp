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

// Optimal assignment of agents to a fixed committee.
//
// Every agent must be matched to exactly one committee member, and member j
// must receive between lower[j] and upper[j] agents. The utilitarian
// objectives are solved as a min-cost flow
//
//   source -> agent (cap 1) -> member (cap 1, score cost) -> sink
//
// where each member's sink side is split into a cost-0 arc of capacity
// lower[j] and an arc of capacity upper[j] - lower[j] whose cost exceeds any
// achievable total, so cheapest flows fill lower bounds first. The
// egalitarian objectives binary-search a score threshold over the distinct
// achievable scores and keep only arcs meeting it; among the matchings at the
// best threshold the one with the best total score is returned.

#ifndef PREFALLOC_MATCHING_HPP_
#define PREFALLOC_MATCHING_HPP_

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prefalloc/core.hpp"
#include "prefalloc/min_cost_flow.hpp"

namespace prefalloc {

enum class RegimeKind { kMonroeBalanced, kCCUnbounded, kExplicit };

struct MemberBounds {
  int lower = 0;
  int upper = 0;
};

class CapacityRegime {
 public:
  static CapacityRegime MonroeBalanced() { return CapacityRegime(RegimeKind::kMonroeBalanced, {}); }
  static CapacityRegime CCUnbounded() { return CapacityRegime(RegimeKind::kCCUnbounded, {}); }
  // One entry per committee member, in committee order.
  static CapacityRegime Explicit(std::vector<MemberBounds> bounds) {
    return CapacityRegime(RegimeKind::kExplicit, std::move(bounds));
  }

  RegimeKind kind() const { return kind_; }

  // Per-member bounds for `n` agents over a committee of size `k`.
  std::vector<MemberBounds> bounds(int n, int k) const {
    switch (kind_) {
      case RegimeKind::kMonroeBalanced:
        return std::vector<MemberBounds>(static_cast<std::size_t>(k),
                                         {n / k, (n + k - 1) / k});
      case RegimeKind::kCCUnbounded:
        return std::vector<MemberBounds>(static_cast<std::size_t>(k), {0, n});
      case RegimeKind::kExplicit:
        if (static_cast<int>(explicit_.size()) != k) {
          throw DomainError("explicit regime has " + std::to_string(explicit_.size()) +
                            " bounds for a committee of " + std::to_string(k));
        }
        return explicit_;
    }
    return {};
  }

 private:
  CapacityRegime(RegimeKind kind, std::vector<MemberBounds> bounds)
      : kind_(kind), explicit_(std::move(bounds)) {}

  RegimeKind kind_;
  std::vector<MemberBounds> explicit_;
};

enum class EgalitarianMode { kMaxMinSat, kMinMaxDissat };

namespace internal {

inline void RequireCommittee(const Profile& profile, std::span<const int> committee) {
  const int m = profile.num_alternatives();
  if (committee.empty()) throw DomainError("committee is empty");
  if (static_cast<int>(committee.size()) > m) {
    throw InfeasibleError("committee larger than the number of alternatives");
  }
  std::vector<char> seen(static_cast<std::size_t>(m) + 1, 0);
  for (int a : committee) {
    if (a < 1 || a > m) {
      throw DomainError("committee member " + std::to_string(a) + " outside 1.." +
                        std::to_string(m));
    }
    if (seen[a]) throw DomainError("committee repeats member " + std::to_string(a));
    seen[a] = 1;
  }
}

inline std::vector<MemberBounds> RequireBounds(const CapacityRegime& regime, int n, int k) {
  auto bounds = regime.bounds(n, k);
  long long lower = 0;
  long long upper = 0;
  for (const auto& b : bounds) {
    if (b.lower < 0 || b.upper < b.lower) throw DomainError("malformed member bounds");
    lower += b.lower;
    upper += b.upper;
  }
  if (lower > n || upper < n) {
    throw InfeasibleError("member bounds [" + std::to_string(lower) + ", " +
                          std::to_string(upper) + "] cannot hold " +
                          std::to_string(n) + " agents");
  }
  return bounds;
}

// Solves the bounded b-matching restricted to arcs with `allowed(score)`,
// minimizing sum of `cost(score)`. Returns nullopt when no matching
// saturating every agent and every lower bound exists.
template <typename Allowed, typename CostFn>
std::optional<Assignment> BMatch(const Profile& profile, const ScoringFunction& psf,
                                 std::span<const int> committee,
                                 std::span<const MemberBounds> bounds,
                                 Allowed allowed, CostFn cost) {
  const int n = profile.num_agents();
  const int m = profile.num_alternatives();
  const int k = static_cast<int>(committee.size());
  const int source = 0;
  const int sink = n + k + 1;
  MinCostFlow flow(n + k + 2);

  Value max_cost = 0;
  for (int p = 1; p <= m; ++p) max_cost = std::max(max_cost, cost(psf(p, m)));
  const Value overflow_cost = static_cast<Value>(n) * max_cost + 1;

  std::vector<std::vector<std::pair<int, std::pair<int, int>>>> agent_arcs(
      static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    flow.AddArc(source, 1 + i, 1, 0);
    for (int j = 0; j < k; ++j) {
      const Value s = psf(profile.position(i, committee[j]), m);
      if (!allowed(s)) continue;
      agent_arcs[i].push_back({j, flow.AddArc(1 + i, 1 + n + j, 1, cost(s))});
    }
  }
  long long lower_total = 0;
  for (int j = 0; j < k; ++j) {
    if (bounds[j].lower > 0) flow.AddArc(1 + n + j, sink, bounds[j].lower, 0);
    if (bounds[j].upper > bounds[j].lower) {
      flow.AddArc(1 + n + j, sink, bounds[j].upper - bounds[j].lower, overflow_cost);
    }
    lower_total += bounds[j].lower;
  }
  const auto [sent, total] = flow.Solve(source, sink, n);
  if (sent != n) return std::nullopt;
  if (total / overflow_cost != n - lower_total) return std::nullopt;

  std::vector<int> targets(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (const auto& [j, handle] : agent_arcs[i]) {
      if (flow.flow_on(handle) > 0) {
        targets[i] = committee[j];
        break;
      }
    }
  }
  return Assignment(std::move(targets));
}

// Cost turning "better score" into "lower cost" for the scoring direction.
inline auto UtilitarianCost(const ScoringFunction& psf, int m) {
  const Value top = psf.decreasing() ? psf.max_value(m) : 0;
  const bool dec = psf.decreasing();
  return [top, dec](Value s) { return dec ? top - s : s; };
}

}  // namespace internal

// Each agent goes to its best-ranked committee member. Optimal for every
// objective when capacities are unbounded.
inline Assignment match_cc(const Profile& profile, const ScoringFunction& /*psf*/,
                           std::span<const int> committee) {
  internal::RequireCommittee(profile, committee);
  std::vector<int> targets(static_cast<std::size_t>(profile.num_agents()));
  for (int i = 0; i < profile.num_agents(); ++i) {
    int best = committee.front();
    for (int a : committee) {
      if (profile.position(i, a) < profile.position(i, best)) best = a;
    }
    targets[i] = best;
  }
  return Assignment(std::move(targets));
}

// Optimal total score under the regime: maximal for decreasing scoring
// functions, minimal for increasing ones.
inline Assignment match_monroe_l1(const Profile& profile, const ScoringFunction& psf,
                                  std::span<const int> committee,
                                  const CapacityRegime& regime) {
  internal::RequireCommittee(profile, committee);
  const int n = profile.num_agents();
  const int k = static_cast<int>(committee.size());
  const auto bounds = internal::RequireBounds(regime, n, k);
  if (regime.kind() == RegimeKind::kCCUnbounded) return match_cc(profile, psf, committee);
  auto result = internal::BMatch(profile, psf, committee, bounds,
                                 [](Value) { return true; },
                                 internal::UtilitarianCost(psf, profile.num_alternatives()));
  if (!result) throw InfeasibleError("no assignment satisfies the member bounds");
  return *std::move(result);
}

// Optimal worst-off agent under the regime.
inline Assignment match_egalitarian(const Profile& profile, const ScoringFunction& psf,
                                    std::span<const int> committee,
                                    const CapacityRegime& regime, EgalitarianMode mode) {
  internal::RequireCommittee(profile, committee);
  if ((mode == EgalitarianMode::kMaxMinSat) != psf.decreasing()) {
    throw DomainError("egalitarian mode does not match the scoring direction");
  }
  const int n = profile.num_agents();
  const int m = profile.num_alternatives();
  const int k = static_cast<int>(committee.size());
  const auto bounds = internal::RequireBounds(regime, n, k);
  const bool maximize = mode == EgalitarianMode::kMaxMinSat;

  // Candidate thresholds ordered from most to least demanding.
  std::vector<Value> candidates;
  for (int i = 0; i < n; ++i) {
    for (int a : committee) candidates.push_back(psf(profile.position(i, a), m));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (maximize) std::reverse(candidates.begin(), candidates.end());

  const auto cost = internal::UtilitarianCost(psf, m);
  auto attempt = [&](Value t) {
    return internal::BMatch(
        profile, psf, committee, bounds,
        [t, maximize](Value s) { return maximize ? s >= t : s <= t; }, cost);
  };

  // Feasibility is monotone along `candidates`; the last one admits every
  // arc and is feasible whenever the bounds are.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  std::optional<Assignment> best = attempt(candidates[hi]);
  if (!best) throw InfeasibleError("no assignment satisfies the member bounds");
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto r = attempt(candidates[mid])) {
      best = std::move(r);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return *std::move(best);
}

// Optimal assignment of `committee` for `objective`.
inline Assignment match_optimal(const Profile& profile, const ScoringFunction& psf,
                                std::span<const int> committee,
                                const CapacityRegime& regime, Objective objective) {
  RequireCompatible(psf, objective);
  if (is_utilitarian(objective)) {
    return match_monroe_l1(profile, psf, committee, regime);
  }
  if (regime.kind() == RegimeKind::kCCUnbounded) {
    internal::RequireBounds(regime, profile.num_agents(),
                            static_cast<int>(committee.size()));
    return match_cc(profile, psf, committee);
  }
  return match_egalitarian(profile, psf, committee, regime,
                           objective == Objective::kMinDec ? EgalitarianMode::kMaxMinSat
                                                           : EgalitarianMode::kMinMaxDissat);
}

}  // namespace prefalloc

#endif  // PREFALLOC_MATCHING_HPP_
