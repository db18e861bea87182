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

#ifndef GOALSTACK_RNG_HPP_
#define GOALSTACK_RNG_HPP_

#include <cstdint>
#include <initializer_list>

namespace goalstack {

// splitmix64; self-contained so streams are reproducible across platforms
// and standard-library versions (std::uniform_int_distribution is not).
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitRng {
 public:
  explicit SplitRng(uint64_t seed) : state_(seed) {
    // burn one output so seed=0 and seed=golden-ratio-increment diverge
    splitmix64(state_);
  }

  uint64_t next() { return splitmix64(state_); }

  // uniform in [0, n); n must be > 0
  uint64_t below(uint64_t n) {
    // multiply-shift; bias is negligible for the small n used here and the
    // mapping is fully deterministic
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // uniform in [0, 1), 53-bit resolution
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return unit() < p;
  }

  // Derives a decorrelated stream seed from a list of components.  Used to
  // split one master seed into per-instance / per-episode streams.
  static uint64_t derive(std::initializer_list<uint64_t> parts) {
    uint64_t h = 0x6a09e667f3bcc909ULL;
    for (uint64_t p : parts) {
      h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      splitmix64(h);
    }
    return h;
  }

 private:
  uint64_t state_;
};

}  // namespace goalstack

#endif  // GOALSTACK_RNG_HPP_
