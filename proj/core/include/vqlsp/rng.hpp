// Copyright 2026 The vqls-precond Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace vqlsp {

// Streams used across the project. Each (seed, stream) pair seeds its own
// std::mt19937_64 through std::seed_seq; both are fully specified by the C++
// standard, so draws are bit-identical across conforming platforms.
enum class RngStream : std::uint32_t {
  kMatrix = 1,
  kRhs = 2,
  kThetaInit = 3,
  kTest = 99,
};

inline std::mt19937_64 make_engine(std::uint64_t seed, RngStream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

// Uniform on [0, 1) from the top 53 bits. std::uniform_real_distribution is
// not specified bit-for-bit, so it is avoided here.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform_pm1(std::mt19937_64& eng) { return 2.0 * uniform01(eng) - 1.0; }

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

}  // namespace vqlsp
