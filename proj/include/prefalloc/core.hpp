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

// Domain types for budgeted, capacitated preference allocation: profiles,
// instances, positional scoring functions, assignments and the objective
// metrics evaluated on them.
//
// Conventions used throughout the library:
//   * agents are container indices 0..n-1;
//   * alternatives are labels 1..m;
//   * positions (ranks) are 1-based, 1 = most preferred.

#ifndef PREFALLOC_CORE_HPP_
#define PREFALLOC_CORE_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prefalloc {

using Value = std::int64_t;

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An assignment or instance breaks a feasibility constraint.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Capacity bounds admit no assignment of all agents.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input the solver deliberately does not handle.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Profile

class Profile {
 public:
  // `orders[i]` is agent i's ranking, most preferred first, over 1..m.
  explicit Profile(std::vector<std::vector<int>> orders)
      : orders_(std::move(orders)) {
    if (orders_.empty()) throw DomainError("profile needs at least one agent");
    m_ = static_cast<int>(orders_.front().size());
    if (m_ < 1) throw DomainError("profile needs at least one alternative");
    positions_.assign(orders_.size() * static_cast<std::size_t>(m_), 0);
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const auto& order = orders_[i];
      if (static_cast<int>(order.size()) != m_) {
        throw ValidationError("order of agent " + std::to_string(i) +
                              " has length " + std::to_string(order.size()) +
                              ", expected " + std::to_string(m_));
      }
      for (int rank = 1; rank <= m_; ++rank) {
        const int alt = order[rank - 1];
        if (alt < 1 || alt > m_) {
          throw ValidationError("order of agent " + std::to_string(i) +
                                " names alternative " + std::to_string(alt) +
                                " outside 1.." + std::to_string(m_));
        }
        int& slot = positions_[Slot(static_cast<int>(i), alt)];
        if (slot != 0) {
          throw ValidationError("order of agent " + std::to_string(i) +
                                " repeats alternative " + std::to_string(alt));
        }
        slot = rank;
      }
    }
  }

  int num_agents() const { return static_cast<int>(orders_.size()); }
  int num_alternatives() const { return m_; }

  // pos_i(a): 1-based rank of alternative `alt` for agent `agent`.
  int position(int agent, int alt) const {
    return positions_[Slot(agent, alt)];
  }
  // Alternative at 1-based `rank` for `agent`.
  int at_rank(int agent, int rank) const { return orders_[agent][rank - 1]; }

  std::span<const int> order(int agent) const { return orders_[agent]; }
  const std::vector<std::vector<int>>& orders() const { return orders_; }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.orders_ == b.orders_;
  }

 private:
  std::size_t Slot(int agent, int alt) const {
    return static_cast<std::size_t>(agent) * static_cast<std::size_t>(m_) +
           static_cast<std::size_t>(alt - 1);
  }

  std::vector<std::vector<int>> orders_;
  std::vector<int> positions_;
  int m_ = 0;
};

// ---------------------------------------------------------------------------
// Scoring functions

enum class ScoringKind { kBordaDec, kBordaInc, kTableDec, kTableInc };

// A normal positional scoring function family. Decreasing kinds measure
// satisfaction (0 at the last position), increasing kinds dissatisfaction
// (0 at the first position).
//
// Tables serve every m <= table size: an increasing table lists values from
// position 1 upward (families grow by appending), a decreasing table lists
// values from position m upward to position 1 (families grow by prepending),
// so table_dec {0, 1, 3} means "last 0, second-to-last 1, third-to-last 3".
class ScoringFunction {
 public:
  static ScoringFunction BordaDec() { return ScoringFunction(ScoringKind::kBordaDec, {}); }
  static ScoringFunction BordaInc() { return ScoringFunction(ScoringKind::kBordaInc, {}); }

  static ScoringFunction TableDec(std::vector<Value> from_bottom) {
    CheckTable(from_bottom);
    return ScoringFunction(ScoringKind::kTableDec, std::move(from_bottom));
  }
  static ScoringFunction TableInc(std::vector<Value> from_top) {
    CheckTable(from_top);
    return ScoringFunction(ScoringKind::kTableInc, std::move(from_top));
  }

  ScoringKind kind() const { return kind_; }
  bool decreasing() const {
    return kind_ == ScoringKind::kBordaDec || kind_ == ScoringKind::kTableDec;
  }
  bool is_borda_dec() const { return kind_ == ScoringKind::kBordaDec; }
  const std::vector<Value>& table() const { return table_; }

  Value operator()(int position, int m) const {
    if (m < 1 || position < 1 || position > m) {
      throw DomainError("position " + std::to_string(position) +
                        " outside 1.." + std::to_string(m));
    }
    switch (kind_) {
      case ScoringKind::kBordaDec:
        return m - position;
      case ScoringKind::kBordaInc:
        return position - 1;
      case ScoringKind::kTableDec:
        RequireCovers(m);
        return table_[static_cast<std::size_t>(m - position)];
      case ScoringKind::kTableInc:
        RequireCovers(m);
        return table_[static_cast<std::size_t>(position - 1)];
    }
    return 0;
  }

  // Largest value over positions 1..m.
  Value max_value(int m) const {
    return decreasing() ? (*this)(1, m) : (*this)(m, m);
  }

  std::string name() const {
    switch (kind_) {
      case ScoringKind::kBordaDec: return "borda_dec";
      case ScoringKind::kBordaInc: return "borda_inc";
      case ScoringKind::kTableDec: return "table_dec";
      case ScoringKind::kTableInc: return "table_inc";
    }
    return "?";
  }

 private:
  ScoringFunction(ScoringKind kind, std::vector<Value> table)
      : kind_(kind), table_(std::move(table)) {}

  // Both table directions start at 0 and grow strictly.
  static void CheckTable(const std::vector<Value>& t) {
    if (t.empty() || t.front() != 0) {
      throw DomainError("scoring table must start with 0");
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (t[i] <= t[i - 1]) {
        throw DomainError("scoring table must be strictly monotone");
      }
    }
  }

  void RequireCovers(int m) const {
    if (static_cast<std::size_t>(m) > table_.size()) {
      throw DomainError("scoring table has " + std::to_string(table_.size()) +
                        " entries, m = " + std::to_string(m));
    }
  }

  ScoringKind kind_;
  std::vector<Value> table_;
};

inline Value score(const ScoringFunction& psf, int position, int m) {
  return psf(position, m);
}

// ---------------------------------------------------------------------------
// Instance

enum class SystemTag { kGeneral, kMonroe, kCC };

inline std::string_view to_string(SystemTag tag) {
  switch (tag) {
    case SystemTag::kGeneral: return "general";
    case SystemTag::kMonroe: return "monroe";
    case SystemTag::kCC: return "cc";
  }
  return "?";
}

struct Instance {
  Profile profile;
  std::vector<Value> weights;     // n
  std::vector<Value> costs;       // m, index a-1
  std::vector<Value> capacities;  // m, index a-1
  Value budget = 0;
  SystemTag system = SystemTag::kGeneral;
  std::optional<int> committee_size;

  int n() const { return profile.num_agents(); }
  int m() const { return profile.num_alternatives(); }

  bool unit_weights() const {
    return std::all_of(weights.begin(), weights.end(),
                       [](Value w) { return w == 1; });
  }

  Value cost_of(int alt) const { return costs[alt - 1]; }
  Value capacity_of(int alt) const { return capacities[alt - 1]; }

  // Throws ValidationError when lengths, positivity or the tag's
  // restrictions do not hold.
  void Validate() const {
    auto positive = [](const std::vector<Value>& v) {
      return std::all_of(v.begin(), v.end(), [](Value x) { return x > 0; });
    };
    if (static_cast<int>(weights.size()) != n() ||
        static_cast<int>(costs.size()) != m() ||
        static_cast<int>(capacities.size()) != m()) {
      throw ValidationError("instance field lengths do not match n and m");
    }
    if (!positive(weights) || !positive(costs) || !positive(capacities) ||
        budget <= 0) {
      throw ValidationError("weights, costs, capacities and budget must be positive");
    }
    if (system == SystemTag::kGeneral) return;
    if (!committee_size) {
      throw ValidationError("monroe/cc instance without committee size");
    }
    const int k = *committee_size;
    const Value expected_cap =
        system == SystemTag::kMonroe ? (n() + k - 1) / k : n();
    const bool ok =
        budget == k &&
        std::all_of(costs.begin(), costs.end(), [](Value c) { return c == 1; }) &&
        std::all_of(capacities.begin(), capacities.end(),
                    [&](Value c) { return c == expected_cap; });
    if (!ok) {
      throw ValidationError(std::string(to_string(system)) +
                            " instance breaks its cost/budget/capacity shape");
    }
  }
};

// ---------------------------------------------------------------------------
// Assignment

class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<int> targets) : targets_(std::move(targets)) {
    committee_ = targets_;
    std::sort(committee_.begin(), committee_.end());
    committee_.erase(std::unique(committee_.begin(), committee_.end()),
                     committee_.end());
  }

  // targets()[i] is the alternative agent i is assigned to.
  const std::vector<int>& targets() const { return targets_; }
  int target(int agent) const { return targets_[agent]; }
  // Sorted distinct targets.
  const std::vector<int>& committee() const { return committee_; }
  int size() const { return static_cast<int>(targets_.size()); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<int> targets_;
  std::vector<int> committee_;
};

// ---------------------------------------------------------------------------
// Metrics

namespace internal {

inline void RequireShape(const Profile& profile, const Assignment& assignment) {
  if (assignment.size() != profile.num_agents()) {
    throw ValidationError("assignment covers " +
                          std::to_string(assignment.size()) + " agents, profile has " +
                          std::to_string(profile.num_agents()));
  }
  for (int t : assignment.targets()) {
    if (t < 1 || t > profile.num_alternatives()) {
      throw ValidationError("assignment target " + std::to_string(t) +
                            " outside 1.." +
                            std::to_string(profile.num_alternatives()));
    }
  }
}

}  // namespace internal

// Per-agent score alpha(pos_i(Phi(i))).
inline std::vector<Value> agent_scores(const Profile& profile,
                                       const ScoringFunction& psf,
                                       const Assignment& assignment) {
  internal::RequireShape(profile, assignment);
  const int m = profile.num_alternatives();
  std::vector<Value> out(static_cast<std::size_t>(profile.num_agents()));
  for (int i = 0; i < profile.num_agents(); ++i) {
    out[i] = psf(profile.position(i, assignment.target(i)), m);
  }
  return out;
}

inline Value metric_l1(const Profile& profile, const ScoringFunction& psf,
                       const Assignment& assignment) {
  Value total = 0;
  for (Value s : agent_scores(profile, psf, assignment)) total += s;
  return total;
}

enum class ExtremeMode { kMax, kMin };

inline Value metric_extreme(const Profile& profile, const ScoringFunction& psf,
                            const Assignment& assignment, ExtremeMode mode) {
  const auto scores = agent_scores(profile, psf, assignment);
  return mode == ExtremeMode::kMax ? *std::max_element(scores.begin(), scores.end())
                                   : *std::min_element(scores.begin(), scores.end());
}

// Number of agents min_delta may discard: floor(delta * n).
inline int dropped_agents(double delta, int n) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in [0, 1)");
  }
  return static_cast<int>(std::floor(delta * n));
}

// Minimum over per-agent scores once the floor(delta*n) lowest are dropped.
inline Value min_delta_of_scores(std::vector<Value> scores, double delta) {
  const int drop = dropped_agents(delta, static_cast<int>(scores.size()));
  std::nth_element(scores.begin(), scores.begin() + drop, scores.end());
  return scores[drop];
}

inline Value metric_min_delta(const Profile& profile, const ScoringFunction& psf,
                              const Assignment& assignment, double delta) {
  dropped_agents(delta, profile.num_agents());
  return min_delta_of_scores(agent_scores(profile, psf, assignment), delta);
}

inline Value assignment_cost(const Instance& instance,
                             const Assignment& assignment) {
  internal::RequireShape(instance.profile, assignment);
  Value total = 0;
  for (int a : assignment.committee()) total += instance.cost_of(a);
  return total;
}

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { kTargetOutOfRange, kCapacity, kBudget, kAgentCount };

struct Violation {
  ViolationKind kind;
  int alternative = 0;  // offending alternative, or 0
  int agent = -1;       // offending agent, or -1
  Value amount = 0;     // assigned weight / cost / target value
  Value limit = 0;      // capacity / budget

  std::string describe() const {
    switch (kind) {
      case ViolationKind::kTargetOutOfRange:
        return "agent " + std::to_string(agent) + " assigned to " +
               std::to_string(amount) + ", outside 1.." + std::to_string(limit);
      case ViolationKind::kCapacity:
        return "alternative " + std::to_string(alternative) + " carries weight " +
               std::to_string(amount) + " > capacity " + std::to_string(limit);
      case ViolationKind::kBudget:
        return "cost " + std::to_string(amount) + " > budget " +
               std::to_string(limit);
      case ViolationKind::kAgentCount:
        return "assignment covers " + std::to_string(amount) + " agents, expected " +
               std::to_string(limit);
    }
    return "?";
  }
};

// Empty result means the assignment is feasible. The scoring kind does not
// affect feasibility and is accepted only so call sites can pass their
// objective context through unchanged.
inline std::vector<Violation> validate_assignment(const Instance& instance,
                                                  const Assignment& assignment) {
  std::vector<Violation> out;
  if (assignment.size() != instance.n()) {
    out.push_back({ViolationKind::kAgentCount, 0, -1, assignment.size(), instance.n()});
    return out;
  }
  const int m = instance.m();
  std::vector<Value> load(static_cast<std::size_t>(m) + 1, 0);
  for (int i = 0; i < assignment.size(); ++i) {
    const int t = assignment.target(i);
    if (t < 1 || t > m) {
      out.push_back({ViolationKind::kTargetOutOfRange, 0, i, t, m});
      continue;
    }
    load[t] += instance.weights[i];
  }
  for (int a = 1; a <= m; ++a) {
    if (load[a] > instance.capacity_of(a)) {
      out.push_back({ViolationKind::kCapacity, a, -1, load[a], instance.capacity_of(a)});
    }
  }
  Value cost = 0;
  for (int a : assignment.committee()) {
    if (a >= 1 && a <= m) cost += instance.cost_of(a);
  }
  if (cost > instance.budget) {
    out.push_back({ViolationKind::kBudget, 0, -1, cost, instance.budget});
  }
  return out;
}

inline std::vector<Violation> validate_assignment(const Instance& instance,
                                                  ScoringKind /*kind*/,
                                                  const Assignment& assignment) {
  return validate_assignment(instance, assignment);
}

// ---------------------------------------------------------------------------
// Objectives and reports

// The four problem variants: maximize total satisfaction, minimize total
// dissatisfaction, maximize the least satisfaction, minimize the largest
// dissatisfaction.
enum class Objective { kL1Dec, kL1Inc, kMinDec, kMaxInc };

inline std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::kL1Dec: return "l1_dec";
    case Objective::kL1Inc: return "l1_inc";
    case Objective::kMinDec: return "min_dec";
    case Objective::kMaxInc: return "max_inc";
  }
  return "?";
}

inline bool is_utilitarian(Objective o) {
  return o == Objective::kL1Dec || o == Objective::kL1Inc;
}
inline bool wants_decreasing(Objective o) {
  return o == Objective::kL1Dec || o == Objective::kMinDec;
}
// Larger values are better for the satisfaction (Dec) objectives.
inline bool maximizing(Objective o) { return wants_decreasing(o); }

inline void RequireCompatible(const ScoringFunction& psf, Objective o) {
  if (psf.decreasing() != wants_decreasing(o)) {
    throw DomainError("objective " + std::string(to_string(o)) +
                      " is incompatible with scoring function " + psf.name());
  }
}

inline bool better(Objective o, Value a, Value b) {
  return maximizing(o) ? a > b : a < b;
}

inline Value evaluate(const Profile& profile, const ScoringFunction& psf,
                      const Assignment& assignment, Objective o) {
  switch (o) {
    case Objective::kL1Dec:
    case Objective::kL1Inc:
      return metric_l1(profile, psf, assignment);
    case Objective::kMinDec:
      return metric_extreme(profile, psf, assignment, ExtremeMode::kMin);
    case Objective::kMaxInc:
      return metric_extreme(profile, psf, assignment, ExtremeMode::kMax);
  }
  return 0;
}

struct SolveReport {
  Assignment assignment;
  std::string objective;  // "l1_dec", ..., or "min_delta"
  Value value = 0;
  std::string algorithm;
  std::optional<std::uint64_t> seed;
  std::chrono::nanoseconds elapsed{0};
  // Which dispatch path produced the result, when a solver has several.
  std::string branch;
  // Sampling runs actually scheduled (combined solver only).
  std::optional<std::int64_t> sampling_runs;
  std::optional<double> delta;
  // Set when a greedy solver ran under a scoring function its guarantee
  // does not cover.
  bool guarantee_void = false;
};

// Recomputes the named metric on the stored assignment.
inline Value reevaluate(const Profile& profile, const ScoringFunction& psf,
                        const SolveReport& report) {
  if (report.objective == "min_delta") {
    return metric_min_delta(profile, psf, report.assignment, report.delta.value_or(0.0));
  }
  for (Objective o : {Objective::kL1Dec, Objective::kL1Inc, Objective::kMinDec,
                      Objective::kMaxInc}) {
    if (report.objective == to_string(o)) {
      return evaluate(profile, psf, report.assignment, o);
    }
  }
  throw DomainError("unknown objective '" + report.objective + "'");
}

}  // namespace prefalloc

#endif  // PREFALLOC_CORE_HPP_
