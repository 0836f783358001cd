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

#ifndef CVBENCH_ERRORS_HPP
#define CVBENCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cvbench {

/// A Fock-space cutoff was too small for the requested object. Carries the
/// probability (or trace) mass found beyond the cutoff so callers can report
/// or retry with a larger dimension.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double tail_mass)
      : std::runtime_error(what), tail_mass_(tail_mass) {}

  double tail_mass() const { return tail_mass_; }

 private:
  double tail_mass_;
};

/// A numerical contract was violated (non-Hermitian input where Hermitian is
/// required, negative eigenvalue beyond tolerance, incomplete POVM, ...).
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cvbench

#endif  // CVBENCH_ERRORS_HPP
