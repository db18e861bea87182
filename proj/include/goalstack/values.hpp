// Copyright 2026 The Goalstack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact optimal value functions via backward shortest-path BFS, Bellman
// verification, the three-way progress classifier, and cached/persisted
// tables.  Values are remaining-distance step counts: smaller is better,
// zero means the goal is satisfied.

#ifndef GOALSTACK_VALUES_HPP_
#define GOALSTACK_VALUES_HPP_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "goalstack/core.hpp"

namespace goalstack {

// Achievement tolerance (condition-1 delta) and stall tolerance
// (condition-2/3 delta).  Exact integer oracles use 0 / 0; learned or noisy
// value models tune them independently.
struct ProgressThresholds {
  int delta_goal = 0;
  int delta_prog = 0;
};

// Exact V*(s, g) for one goal over an environment's reachable state set.
// Unreachable states are absent.  Immutable after construction.
class ValueTable {
 public:
  static constexpr int32_t kAbsent = -1;

  ValueTable(Goal goal, std::vector<int32_t> values);

  const Goal& goal() const { return goal_; }
  std::size_t domain_size() const { return values_.size(); }
  std::size_t entry_count() const { return entry_count_; }

  bool contains(StateId s) const {
    return s.value < values_.size() && values_[s.value] != kAbsent;
  }

  int32_t at(StateId s) const {
    if (!contains(s)) {
      throw UnknownStateError("state " + std::to_string(s.value) +
                              " absent from value table for goal \"" +
                              goal_.display() + "\"");
    }
    return values_[s.value];
  }

  const std::vector<int32_t>& raw() const { return values_; }

 private:
  Goal goal_;
  std::vector<int32_t> values_;
  std::size_t entry_count_ = 0;
};

// Exact shortest-path step counts from every state that can reach a
// goal-satisfying state, by backward breadth-first traversal of the
// transition graph.  Throws UnsatisfiableGoalError when no state satisfies g
// and CapacityError when the state count exceeds `state_cap`.
ValueTable compute_values(const EnvironmentModel& env, const Goal& g,
                          std::size_t state_cap = 1'000'000);

// Classification on raw values; achievement is evaluated first, mirroring
// the planner's branch order.
ProgressLabel classify_values(int64_t v_prev, int64_t v_curr,
                              const ProgressThresholds& th);

// Looks both states up in the table and classifies.  Throws
// UnknownStateError for states absent from the table.
ProgressLabel classify_progress(const ValueTable& values, StateId prev,
                                StateId curr, const ProgressThresholds& th);

// Maximum Bellman violation over the table: |V*(s)| for goal-satisfying
// states, |V*(s) - (1 + min_a V*(step(s,a)))| otherwise.  Exactly zero
// certifies the table.
int64_t bellman_residual(const EnvironmentModel& env, const ValueTable& values);

// ---------------------------------------------------------------------------
// Persistence: versioned little-endian binary cache
// ---------------------------------------------------------------------------

// Digest binding a table file to its goal (instruction + target projection).
uint64_t goal_digest(const EnvironmentModel& env, const Goal& g);

void save_value_table(const std::string& path, const EnvironmentModel& env,
                      const ValueTable& table);

// Rejects files whose stored digest does not match `expected_goal`.
ValueTable load_value_table(const std::string& path,
                            const EnvironmentModel& env,
                            const Goal& expected_goal);

// ---------------------------------------------------------------------------
// Cache + oracle value model
// ---------------------------------------------------------------------------

// Memoizes tables per goal-equivalence class (instruction + target
// projection; the hierarchy level does not affect values).  Safe to share
// across concurrent episodes.
class ValueTableCache {
 public:
  explicit ValueTableCache(const EnvironmentModel& env) : env_(env) {}

  std::shared_ptr<const ValueTable> get(const Goal& g);
  std::size_t size() const;

  static std::string key_for(const EnvironmentModel& env, const Goal& g);

 private:
  const EnvironmentModel& env_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const ValueTable>> tables_;
};

// ValueModel backed by exact tables; instantiates the three-class contract.
class OracleValueModel : public ValueModel {
 public:
  OracleValueModel(std::shared_ptr<ValueTableCache> cache,
                   ProgressThresholds thresholds)
      : cache_(std::move(cache)), thresholds_(thresholds) {}

  ProgressLabel classify(StateId prev, StateId curr, const Goal& g) override {
    auto table = cache_->get(g);
    return classify_progress(*table, prev, curr, thresholds_);
  }

  std::optional<int> value_of(StateId s, const Goal& g) override {
    auto table = cache_->get(g);
    if (!table->contains(s)) return std::nullopt;
    return table->at(s);
  }

  const ProgressThresholds& thresholds() const { return thresholds_; }

 private:
  std::shared_ptr<ValueTableCache> cache_;
  ProgressThresholds thresholds_;
};

}  // namespace goalstack

#endif  // GOALSTACK_VALUES_HPP_
