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

#include "goalstack/values.hpp"

#include <cstdio>
#include <cstring>
#include <deque>
#include <limits>

namespace goalstack {

namespace {

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

ValueTable::ValueTable(Goal goal, std::vector<int32_t> values)
    : goal_(std::move(goal)), values_(std::move(values)) {
  for (int32_t v : values_) {
    if (v != kAbsent) ++entry_count_;
  }
}

ValueTable compute_values(const EnvironmentModel& env, const Goal& g,
                          std::size_t state_cap) {
  const std::size_t n = env.state_count();
  if (n > state_cap) {
    throw CapacityError(env.name() + ": " + std::to_string(n) +
                        " states exceed the configured cap of " +
                        std::to_string(state_cap));
  }
  const std::size_t m = env.action_count();

  // Predecessor lists over the full transition graph (self-loops dropped).
  std::vector<uint32_t> pred_count(n, 0);
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  edges.reserve(n * m);
  for (uint32_t s = 0; s < n; ++s) {
    for (uint32_t a = 0; a < m; ++a) {
      const StateId t = env.step(StateId{s}, ActionId{a});
      if (t.value != s) edges.emplace_back(t.value, s);
    }
  }
  for (const auto& e : edges) ++pred_count[e.first];
  std::vector<uint32_t> offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + pred_count[i];
  std::vector<uint32_t> preds(edges.size());
  std::vector<uint32_t> cursor(offset.begin(), offset.end() - 1);
  for (const auto& e : edges) preds[cursor[e.first]++] = e.second;

  std::vector<int32_t> dist(n, ValueTable::kAbsent);
  std::deque<uint32_t> frontier;
  for (uint32_t s = 0; s < n; ++s) {
    if (env.satisfied(StateId{s}, g)) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  if (frontier.empty()) {
    throw UnsatisfiableGoalError(env.name() + ": no reachable state satisfies \"" +
                                 g.display() + "\"");
  }
  while (!frontier.empty()) {
    const uint32_t s = frontier.front();
    frontier.pop_front();
    for (uint32_t i = offset[s]; i < offset[s] + pred_count[s]; ++i) {
      const uint32_t p = preds[i];
      if (dist[p] == ValueTable::kAbsent) {
        dist[p] = dist[s] + 1;
        frontier.push_back(p);
      }
    }
  }
  return ValueTable(g, std::move(dist));
}

ProgressLabel classify_values(int64_t v_prev, int64_t v_curr,
                              const ProgressThresholds& th) {
  if (std::llabs(v_curr) <= th.delta_goal) return ProgressLabel::Achieved;
  if (std::llabs(v_curr - v_prev) <= th.delta_prog)
    return ProgressLabel::NoProgress;
  return ProgressLabel::Progress;
}

ProgressLabel classify_progress(const ValueTable& values, StateId prev,
                                StateId curr, const ProgressThresholds& th) {
  const int64_t v_prev = values.at(prev);
  const int64_t v_curr = values.at(curr);
  return classify_values(v_prev, v_curr, th);
}

int64_t bellman_residual(const EnvironmentModel& env,
                         const ValueTable& values) {
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  const std::size_t m = env.action_count();
  int64_t worst = 0;
  for (uint32_t s = 0; s < values.domain_size(); ++s) {
    const StateId sid{s};
    if (!values.contains(sid)) continue;
    const int64_t v = values.at(sid);
    if (env.satisfied(sid, values.goal())) {
      worst = std::max(worst, std::llabs(v));
      continue;
    }
    int64_t best = kInf;
    for (uint32_t a = 0; a < m; ++a) {
      const StateId t = env.step(sid, ActionId{a});
      if (values.contains(t)) best = std::min(best, int64_t{values.at(t)});
    }
    const int64_t residual = (best >= kInf) ? kInf : std::llabs(v - (1 + best));
    worst = std::max(worst, residual);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'G', 'V', 'T', 'B'};
constexpr uint32_t kFormatVersion = 1;

void put_u32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_i32(std::string& out, int32_t v) { put_u32(out, static_cast<uint32_t>(v)); }

class Reader {
 public:
  Reader(const std::string& buf, const std::string& path)
      : buf_(buf), path_(path) {}
  uint32_t u32() {
    require(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<uint32_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  uint64_t u64() {
    require(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<uint64_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  int32_t i32() { return static_cast<int32_t>(u32()); }
  void raw(char* dst, std::size_t n) {
    require(n);
    std::memcpy(dst, buf_.data() + pos_, n);
    pos_ += n;
  }

 private:
  void require(std::size_t n) {
    if (pos_ + n > buf_.size()) {
      throw PersistenceError(path_ + ": truncated value-table file");
    }
  }
  const std::string& buf_;
  std::string path_;
  std::size_t pos_ = 0;
};

}  // namespace

uint64_t goal_digest(const EnvironmentModel& env, const Goal& g) {
  std::string key = "L:";
  if (g.instruction().has_value()) key += normalize_descriptor(*g.instruction());
  key += "\x1f";
  key += "S:";
  if (g.target_state().has_value()) key += env.projection_key(*g.target_state());
  return fnv1a64(key);
}

void save_value_table(const std::string& path, const EnvironmentModel& env,
                      const ValueTable& table) {
  std::string out;
  out.append(kMagic, sizeof(kMagic));
  put_u32(out, kFormatVersion);
  put_u64(out, goal_digest(env, table.goal()));
  put_u64(out, table.domain_size());
  put_u64(out, table.entry_count());
  for (uint32_t s = 0; s < table.domain_size(); ++s) {
    if (table.raw()[s] == ValueTable::kAbsent) continue;
    put_u32(out, s);
    put_i32(out, table.raw()[s]);
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (f == nullptr) throw PersistenceError("cannot open " + path + " for writing");
  const std::size_t written = std::fwrite(out.data(), 1, out.size(), f);
  std::fclose(f);
  if (written != out.size()) throw PersistenceError("short write to " + path);
}

ValueTable load_value_table(const std::string& path,
                            const EnvironmentModel& env,
                            const Goal& expected_goal) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (f == nullptr) throw PersistenceError("cannot open " + path);
  std::string buf;
  char chunk[65536];
  std::size_t got = 0;
  while ((got = std::fread(chunk, 1, sizeof(chunk), f)) > 0) buf.append(chunk, got);
  std::fclose(f);

  Reader r(buf, path);
  char magic[4];
  r.raw(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw PersistenceError(path + ": not a value-table file");
  }
  const uint32_t version = r.u32();
  if (version != kFormatVersion) {
    throw PersistenceError(path + ": unsupported format version " +
                           std::to_string(version));
  }
  const uint64_t digest = r.u64();
  if (digest != goal_digest(env, expected_goal)) {
    throw PersistenceError(path + ": goal digest mismatch");
  }
  const uint64_t domain = r.u64();
  const uint64_t entries = r.u64();
  std::vector<int32_t> values(domain, ValueTable::kAbsent);
  for (uint64_t i = 0; i < entries; ++i) {
    const uint32_t s = r.u32();
    const int32_t v = r.i32();
    if (s >= domain) throw PersistenceError(path + ": entry out of domain");
    values[s] = v;
  }
  return ValueTable(expected_goal, std::move(values));
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

std::string ValueTableCache::key_for(const EnvironmentModel& env,
                                     const Goal& g) {
  std::string key;
  if (g.instruction().has_value()) key += normalize_descriptor(*g.instruction());
  key += '\x1f';
  if (g.target_state().has_value()) key += env.projection_key(*g.target_state());
  return key;
}

std::shared_ptr<const ValueTable> ValueTableCache::get(const Goal& g) {
  const std::string key = key_for(env_, g);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
  }
  auto table = std::make_shared<const ValueTable>(compute_values(env_, g));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = tables_.emplace(key, std::move(table));
  return it->second;
}

std::size_t ValueTableCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return tables_.size();
}

}  // namespace goalstack
