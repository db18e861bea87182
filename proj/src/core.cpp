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

#include "goalstack/core.hpp"

#include <cctype>

#include "goalstack/values.hpp"

namespace goalstack {

bool goal_is_vacuous(const std::optional<std::string>& instruction,
                     const std::optional<StateId>& target_state) {
  return !instruction.has_value() && !target_state.has_value();
}

Goal::Goal(std::optional<std::string> instruction,
           std::optional<StateId> target, int level)
    : instruction_(std::move(instruction)), target_(target), level_(level) {
  if (goal_is_vacuous(instruction_, target_)) {
    throw InvalidGoalError("goal must carry an instruction or a target state");
  }
  if (level_ < 0) {
    throw InvalidGoalError("goal level must be non-negative");
  }
}

Goal Goal::with_instruction(std::string instruction, int level) {
  return Goal(std::move(instruction), std::nullopt, level);
}

Goal Goal::with_target(StateId target, int level) {
  return Goal(std::nullopt, target, level);
}

Goal Goal::with_both(std::string instruction, StateId target, int level) {
  return Goal(std::move(instruction), target, level);
}

Goal Goal::without_instruction() const {
  if (!target_.has_value()) return *this;
  return Goal(std::nullopt, target_, level_);
}

Goal Goal::without_target() const {
  if (!instruction_.has_value()) return *this;
  return Goal(instruction_, std::nullopt, level_);
}

Goal Goal::at_level(int level) const { return Goal(instruction_, target_, level); }

std::string Goal::display() const {
  if (instruction_.has_value()) return *instruction_;
  return "state#" + std::to_string(target_->value);
}

ProgressLabel label_from_int(int v) {
  switch (v) {
    case 0: return ProgressLabel::NoProgress;
    case 1: return ProgressLabel::Progress;
    case 2: return ProgressLabel::Achieved;
    default: throw ParseError("progress label out of range: " + std::to_string(v));
  }
}

const char* label_name(ProgressLabel l) {
  switch (l) {
    case ProgressLabel::NoProgress: return "no_progress";
    case ProgressLabel::Progress: return "progress";
    case ProgressLabel::Achieved: return "achieved";
  }
  return "?";
}

void EnvironmentModel::check_state(StateId s) const {
  if (s.value >= state_count()) {
    throw UnknownStateError(name() + ": state id " + std::to_string(s.value) +
                            " out of range");
  }
}

void EnvironmentModel::check_action(ActionId a) const {
  if (a.value >= action_count()) {
    throw UnknownStateError(name() + ": action id " + std::to_string(a.value) +
                            " out of range");
  }
}

StateId SkillLibrary::simulate(const EnvironmentModel& env, StateId from,
                               const Skill& skill) const {
  StateId s = from;
  for (ActionId a : skill.macro(from)) {
    s = env.step(s, a);
  }
  return s;
}

std::vector<std::size_t> SkillLibrary::connecting(const EnvironmentModel& env,
                                                  StateId from,
                                                  StateId to) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < skills_.size(); ++i) {
    if (!skills_[i].applicable(from)) continue;
    if (simulate(env, from, skills_[i]) == to) out.push_back(i);
  }
  return out;
}

std::size_t SkillLibrary::ground(const EnvironmentModel& env, StateId from,
                                 const std::string& text) const {
  const std::string wanted = normalize_descriptor(text);
  for (std::size_t i = 0; i < skills_.size(); ++i) {
    if (!skills_[i].applicable(from)) continue;
    if (normalize_descriptor(skills_[i].descriptor(from)) == wanted) return i;
  }
  throw GroundingError(env.name() + ": no applicable skill grounds \"" + text +
                       "\" at state " + std::to_string(from.value));
}

int64_t reward(StateId s, StateId s_next, const Goal& g,
               const ValueTable& values) {
  (void)g;  // the table is already goal-specific; kept for contract clarity
  return static_cast<int64_t>(values.at(s)) -
         static_cast<int64_t>(values.at(s_next));
}

std::string normalize_descriptor(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace goalstack
