// Copyright 2026 The iiglearn Authors. All rights reserved.
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

#ifndef IIG_RNG_H_
#define IIG_RNG_H_

#include <cstdint>
#include <span>

namespace iig {

// Counter-based random stream (splitmix64). One independent stream per
// (seed, stream id) pair; streams are reproducible across platforms since
// no libc distributions are involved.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream_id)
      : state_(Mix(Mix(seed + 0x9e3779b97f4a7c15ULL) ^ stream_id)) {}

  uint64_t NextU64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return Mix(state_);
  }

  // Uniform in [0, 1).
  double NextDouble() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  int NextInt(int n) {
    return static_cast<int>(NextDouble() * static_cast<double>(n)) % n;
  }

  // Samples an index from a probability vector (sums to ~1).
  int SampleDiscrete(std::span<const double> probs) {
    const double u = NextDouble();
    double cum = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
      cum += probs[i];
      if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
  }

 private:
  static uint64_t Mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

// Stream ids used by the self-play driver; keeping them centralized makes
// runs reproducible when new consumers of randomness are added.
enum StreamPurpose : uint64_t {
  kEpisodeStream = 1,
  kGameGenStream = 2,
  kTestStream = 100,
};

}  // namespace iig

#endif  // IIG_RNG_H_
