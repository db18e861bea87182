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

// Domain types and pluggable interfaces for the goal-conditioned MDP:
// states, actions, goals, the environment/policy/value/anticipation
// contracts, and the error hierarchy shared by every other module.

#ifndef GOALSTACK_CORE_HPP_
#define GOALSTACK_CORE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goalstack/rng.hpp"

namespace goalstack {

// ---------------------------------------------------------------------------
// Identifiers
// ---------------------------------------------------------------------------

// Environment-scoped index into the enumerated reachable state set.  Two
// StateIds are equal iff the underlying environment states are identical.
struct StateId {
  uint32_t value = 0;
  friend bool operator==(StateId a, StateId b) { return a.value == b.value; }
  friend bool operator!=(StateId a, StateId b) { return a.value != b.value; }
  friend bool operator<(StateId a, StateId b) { return a.value < b.value; }
};

// One discrete primitive action of the environment, indexed into its
// declared action set.
struct ActionId {
  uint32_t value = 0;
  friend bool operator==(ActionId a, ActionId b) { return a.value == b.value; }
  friend bool operator!=(ActionId a, ActionId b) { return a.value != b.value; }
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGoalError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class UnknownStateError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class UnsatisfiableGoalError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class CapacityError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class AlreadyAchievedError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class NoSkillError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class AmbiguousSkillError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class GroundingError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class VerificationExhaustedError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class NoDecompositionError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class BoundaryNotReachedError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class EmptyStackError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class ParseError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class ConfigError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};
class PersistenceError : public PlanningError {
 public:
  using PlanningError::PlanningError;
};

// ---------------------------------------------------------------------------
// Goals
// ---------------------------------------------------------------------------

// True iff both components are absent.  Used as a constructor guard so that
// no vacuous goal value ever exists.
bool goal_is_vacuous(const std::optional<std::string>& instruction,
                     const std::optional<StateId>& target_state);

// An (instruction, target-state) pair with the at-least-one-present
// invariant, plus an explicit hierarchy level (0 = the original task, larger
// levels are finer refinements of it).
class Goal {
 public:
  static Goal with_instruction(std::string instruction, int level = 0);
  static Goal with_target(StateId target, int level = 0);
  static Goal with_both(std::string instruction, StateId target, int level);

  const std::optional<std::string>& instruction() const { return instruction_; }
  const std::optional<StateId>& target_state() const { return target_; }
  int level() const { return level_; }

  // Ablation helpers: blank one component, but never produce a vacuous goal.
  // When the other component is absent the goal is returned unchanged.
  Goal without_instruction() const;
  Goal without_target() const;
  Goal at_level(int level) const;

  // Stable text used in traces and cache keys: the instruction when present,
  // otherwise "state#<id>".
  std::string display() const;

  friend bool operator==(const Goal& a, const Goal& b) {
    return a.instruction_ == b.instruction_ && a.target_ == b.target_ &&
           a.level_ == b.level_;
  }

 private:
  Goal(std::optional<std::string> instruction, std::optional<StateId> target,
       int level);

  std::optional<std::string> instruction_;
  std::optional<StateId> target_;
  int level_ = 0;
};

// ---------------------------------------------------------------------------
// Progress labels (three-way value classification)
// ---------------------------------------------------------------------------

// Serialized as the integers 2 / 1 / 0 respectively.
enum class ProgressLabel { NoProgress = 0, Progress = 1, Achieved = 2 };

inline int label_to_int(ProgressLabel l) { return static_cast<int>(l); }
ProgressLabel label_from_int(int v);
const char* label_name(ProgressLabel l);

// ---------------------------------------------------------------------------
// Skills and hierarchy boundaries
// ---------------------------------------------------------------------------

// A scripted skill: a descriptor template plus an applicability predicate and
// a deterministic multi-step action macro, both evaluated at a concrete state.
struct Skill {
  std::string name;
  std::function<bool(StateId)> applicable;
  // Concrete descriptor text for invoking this skill from the given state.
  std::function<std::string(StateId)> descriptor;
  // Primitive actions realizing the skill from the given state.
  std::function<std::vector<ActionId>(StateId)> macro;
};

class EnvironmentModel;

class SkillLibrary {
 public:
  void add(Skill skill) { skills_.push_back(std::move(skill)); }
  std::size_t size() const { return skills_.size(); }
  bool empty() const { return skills_.empty(); }
  const Skill& at(std::size_t i) const { return skills_[i]; }

  // Runs the skill's macro from `from`; states are threaded through the
  // environment's transition function.
  StateId simulate(const EnvironmentModel& env, StateId from,
                   const Skill& skill) const;

  // Indices of skills applicable at `from` whose simulation lands on `to`.
  std::vector<std::size_t> connecting(const EnvironmentModel& env,
                                      StateId from, StateId to) const;

  // Grounds a descriptor at `from`: the applicable skill whose concrete
  // descriptor normalizes to `text`.  Throws GroundingError when none does.
  std::size_t ground(const EnvironmentModel& env, StateId from,
                     const std::string& text) const;

 private:
  std::vector<Skill> skills_;
};

// One canonical decomposition step: the descriptor of the subgoal and the
// state predicate that marks it achieved.
struct BoundarySpec {
  std::string descriptor;
  std::function<bool(StateId)> predicate;
};

// ---------------------------------------------------------------------------
// Model interfaces
// ---------------------------------------------------------------------------

// Deterministic, fully observable discrete environment.  Implementations
// enumerate their reachable state set at construction; all ids below
// state_count()/action_count() are valid.  Instances are immutable after
// construction and safe to share read-only across concurrent episodes.
class EnvironmentModel {
 public:
  virtual ~EnvironmentModel() = default;

  virtual std::string name() const = 0;
  virtual std::size_t state_count() const = 0;
  virtual std::size_t action_count() const = 0;
  virtual StateId initial_state() const = 0;
  virtual ActionId noop_action() const { return ActionId{0}; }

  // Total and deterministic on declared states/actions; inapplicable actions
  // are self-loops.
  virtual StateId step(StateId s, ActionId a) const = 0;

  // With a target state present, true iff `s` equals the target on the
  // goal-relevant projection; otherwise the parsed predicate of the
  // instruction under this environment's descriptor grammar.
  virtual bool satisfied(StateId s, const Goal& g) const = 0;

  // Fingerprint of the goal-relevant projection of `s` (gripper pose and
  // other task-irrelevant components excluded).
  virtual std::string projection_key(StateId s) const = 0;

  virtual std::string state_label(StateId s) const = 0;
  virtual std::string action_label(ActionId a) const = 0;

  // Canonical level-0 goal of this instance.
  virtual Goal task_goal() const = 0;

  // Canonical subgoal sequence one level below `g`, in task order.  Empty
  // when the environment defines no decomposition for `g`; throws
  // NoDecompositionError for atomic (finest-granularity) goals.
  virtual std::vector<BoundarySpec> hierarchy_boundaries(const Goal& g) const = 0;

  virtual const SkillLibrary& skills() const = 0;

  void check_state(StateId s) const;
  void check_action(ActionId a) const;
};

// Low-level goal-conditioned policy.
class PolicyModel {
 public:
  virtual ~PolicyModel() = default;
  // Returned action is in the environment's action set.
  virtual ActionId act(StateId s, const Goal& g, SplitRng& rng) = 0;
};

// Three-way progress classifier over (previous state, current state, goal).
class ValueModel {
 public:
  virtual ~ValueModel() = default;
  virtual ProgressLabel classify(StateId prev, StateId curr,
                                 const Goal& g) = 0;
  // Raw optimal value when the implementation has one (oracles do); used for
  // trace annotation only.
  virtual std::optional<int> value_of(StateId /*s*/, const Goal& /*g*/) {
    return std::nullopt;
  }
};

// A refined subgoal together with the generator's probability of proposing
// it.  Oracle anticipators are deterministic, so they report 1.0; learned
// models may report a true generation probability.
struct RefineResult {
  Goal goal;
  double probability = 1.0;
};

// Subgoal generator: maps (current state, active goal) to a refined subgoal
// with level = g.level + 1 lying on an optimal path toward g.
class AnticipationModel {
 public:
  virtual ~AnticipationModel() = default;
  virtual RefineResult refine(StateId s, const Goal& g, SplitRng& rng) = 0;
};

// ---------------------------------------------------------------------------
// Reward
// ---------------------------------------------------------------------------

class ValueTable;

// One-step improvement toward the goal under the distance-form value:
// V*(s, g) - V*(s_next, g).  Zero when there is no net progress.  Throws
// UnknownStateError when either state is absent from the table.
int64_t reward(StateId s, StateId s_next, const Goal& g,
               const ValueTable& values);

// Descriptor-grammar normalization: trimmed, whitespace-collapsed,
// case-folded.  Equality of normalized descriptors is the semantic
// equivalence used by the self-discriminative check.
std::string normalize_descriptor(const std::string& text);

}  // namespace goalstack

#endif  // GOALSTACK_CORE_HPP_
