// Copyright 2026 The cvbench Authors
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

#include "cvbench/rng.hpp"

#include <cmath>

namespace cvbench {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::uint32_t k0,
                         std::uint32_t k1) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::uint64_t seed,
                                               std::uint64_t stream,
                                               std::uint64_t index) {
  std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(index),
      static_cast<std::uint32_t>(index >> 32),
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(stream >> 32),
  };
  std::uint32_t k0 = static_cast<std::uint32_t>(seed);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    philox_round(ctr, k0, k1);
  }
  return ctr;
}

double uniform_double(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t index) {
  const auto b = Philox4x32::block(seed, stream, index);
  const std::uint64_t x =
      (static_cast<std::uint64_t>(b[1]) << 32) | static_cast<std::uint64_t>(b[0]);
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

std::complex<double> standard_complex_gaussian(std::uint64_t seed,
                                               std::uint64_t stream,
                                               std::uint64_t index) {
  const auto b = Philox4x32::block(seed, stream, index);
  const std::uint64_t x =
      (static_cast<std::uint64_t>(b[1]) << 32) | static_cast<std::uint64_t>(b[0]);
  const std::uint64_t y =
      (static_cast<std::uint64_t>(b[3]) << 32) | static_cast<std::uint64_t>(b[2]);
  // u1 in (0, 1] so the log stays finite; u2 in [0, 1).
  const double u1 =
      (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(y >> 11) * 0x1.0p-53;
  // Box-Muller for a pair of N(0, 1/2) quadratures: |w|^2 ~ Exp(1).
  const double r = std::sqrt(-std::log(u1));
  const double phase = 2.0 * M_PI * u2;
  return {r * std::cos(phase), r * std::sin(phase)};
}

}  // namespace cvbench
