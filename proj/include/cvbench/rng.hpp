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

#ifndef CVBENCH_RNG_HPP
#define CVBENCH_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

namespace cvbench {

/// Identifier recorded in reports so a run can name the exact bit stream it
/// consumed. The uniform stream is pure integer arithmetic and reproduces
/// bit-for-bit everywhere; the Gaussian transform (Box-Muller) depends on the
/// platform's log/cos/sin rounding.
inline constexpr std::string_view kRngAlgorithm = "philox4x32-10/box-muller";

/// Philox 4x32-10 counter-based generator. The 128-bit counter is split into
/// a (stream, index) pair so independent substreams are just distinct stream
/// ids; any partition of the index space merges deterministically.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(std::uint64_t seed,
                                            std::uint64_t stream,
                                            std::uint64_t index);
};

/// One uniform double in [0, 1) from the low half of a counter block.
double uniform_double(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t index);

/// A standard complex Gaussian draw (density exp(-|w|^2)/pi, i.e. each
/// quadrature has variance 1/2). Consumes exactly one counter block: the
/// draw at (seed, stream, index) is random-access.
std::complex<double> standard_complex_gaussian(std::uint64_t seed,
                                               std::uint64_t stream,
                                               std::uint64_t index);

/// Sequential view over one (seed, stream) pair.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  double next_uniform() { return uniform_double(seed_, stream_, index_++); }
  std::complex<double> next_standard_complex_gaussian() {
    return standard_complex_gaussian(seed_, stream_, index_++);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
};

}  // namespace cvbench

#endif  // CVBENCH_RNG_HPP
