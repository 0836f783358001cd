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

#ifndef CVBENCH_TOLERANCES_HPP
#define CVBENCH_TOLERANCES_HPP

namespace cvbench::tol {

// Default numerical tolerances shared across the library. Callers that need
// tighter/looser budgets pass explicit values; these are the contract
// defaults quoted in doc comments.
inline constexpr double norm = 1e-10;          // |<v|v> - 1| for normalized states
inline constexpr double hermiticity = 1e-9;    // max |H_mn - conj(H_nm)|
inline constexpr double psd = 1e-9;            // eigenvalue floor (relative to spectral scale)
inline constexpr double eig_residual = 1e-10;  // ||H - V diag(e) V^dag||_max (relative)
inline constexpr double povm_completeness = 1e-8;  // ||sum |phi><phi| - 1||_max
inline constexpr double lemma_slack = 1e-10;       // closed-form p-norm inequality slack
inline constexpr double truncation_rel = 1e-6;     // relative trace mass allowed past the cutoff
inline constexpr double mc_sigmas = 3.0;           // Monte Carlo agreement band

}  // namespace cvbench::tol

#endif  // CVBENCH_TOLERANCES_HPP
