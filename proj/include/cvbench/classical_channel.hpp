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

#ifndef CVBENCH_CLASSICAL_CHANNEL_HPP
#define CVBENCH_CLASSICAL_CHANNEL_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cvbench/fock.hpp"
#include "cvbench/prior.hpp"

namespace cvbench {

/// Rank-1 POVM {|phi_y><phi_y|} on the truncated space: vectors need not be
/// normalized, but must satisfy ||sum_y |phi_y><phi_y| - 1_d||_max <= tol.
struct PovmEnsemble {
  std::vector<FockVector> vectors;
  int dim = 0;

  /// max-norm distance of sum |phi_y><phi_y| from the identity.
  double completeness_defect() const;
  void require_complete(double tolerance = tol::povm_completeness) const;
};

/// A measure-and-prepare strategy: outcome y of the POVM triggers
/// repreparation of the normalized state chi_y.
struct ClassicalStrategy {
  PovmEnsemble povm;
  std::vector<FockVector> reconstructions;

  void validate(double norm_tol = tol::norm) const;
};

/// Heterodyne strategy: POVM {|beta><beta|/pi}, outcome beta repreparing the
/// coherent state |gain * beta>.
struct HeterodyneStrategy {
  double gain;
};

enum class Verdict {
  kBelowClassicalLimit,
  kAtLimit,
  kQuantum,
};

std::string to_string(Verdict v);

/// Average-fidelity result. stderr_ is 0 for closed-form values. The verdict
/// compares value against benchmark at 3*stderr resolution (with a 1e-12
/// floor so closed-form ties classify as at-limit).
struct FidelityReport {
  double value = 0.0;
  double stderr_ = 0.0;
  double benchmark = 0.0;
  Verdict verdict = Verdict::kBelowClassicalLimit;

  // Provenance.
  double lambda = 0.0;  // 0 encodes the flat limit together with flat=true
  bool flat = false;
  int dim = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::string method;
  double truncation_tail = 0.0;
};

Verdict classify_value(double value, double stderr_, double benchmark);

/// Highest classical average fidelity for the Gaussian ensemble:
/// (1 + lambda)/(2 + lambda); 1/2 exactly in the flat limit.
double benchmark_bound(const GaussianPrior& prior);
double benchmark_bound(FlatPrior);

/// A_phi = int p(alpha) |<alpha|phi>|^2 |alpha><alpha| d^2alpha on a d-dim
/// cutoff, via the closed-form moment expression
///
///   <m|A|n> = lambda * sum_{j,k : k+m = j+n}
///             c_j conj(c_k) (k+m)! / (sqrt(j! k! m! n!) (2+lambda)^{k+m+1}),
///
/// validated against the quadrature of the defining integral in the test
/// suite. Throws TruncationError when the trace mass of A beyond the cutoff
/// exceeds tail_tol relative to the exact trace.
HermitianOperator build_A_phi(const FockVector& phi, const GaussianPrior& prior,
                              int d, double tail_tol = tol::truncation_rel);

/// Exact (untruncated) trace of A_phi: lambda sum_k |c_k|^2/(1+lambda)^{k+1}.
double a_phi_trace_exact(const FockVector& phi, const GaussianPrior& prior);

/// Best repreparation for a given outcome: the top eigenvector of A and the
/// fidelity contribution ||A||_inf = <chi|A|chi> it achieves.
std::pair<FockVector, double> optimal_reconstruction(
    const HermitianOperator& a);

/// Per-element breakdown of a POVM's classical fidelity.
struct PovmFidelityResult {
  FidelityReport report;            // value = sum_y ||A_{phi_y}||_inf
  double one_norm_sum = 0.0;        // sum_y ||A_{phi_y}||_1
  double one_norm_expected = 0.0;   // 1 - (1/(1+lambda))^d  (completeness mass)
  std::vector<double> element_sup;  // ||A_{phi_y}||_inf per outcome
};

/// Classical fidelity sum_y ||A_{phi_y}||_inf of a complete rank-1 POVM,
/// with each A built on an op_dim-dim cutoff (op_dim = 0 picks a heuristic).
PovmFidelityResult classical_fidelity(const PovmEnsemble& povm,
                                      const GaussianPrior& prior,
                                      int op_dim = 0, int threads = 1);

/// Closed form for the heterodyne strategy with gain g:
///   F(g) = lambda / ((1+lambda)(1+g^2) - 2g),
/// maximal at g = 1/(1+lambda) where it equals the benchmark bound.
double heterodyne_fidelity(const GaussianPrior& prior, double gain);

/// Monte Carlo run of a strategy: draw alpha ~ prior, draw the outcome by the
/// Born rule, score |<alpha|chi_y>|^2. For heterodyne the outcome is beta =
/// alpha + w with w a standard complex Gaussian and the score is
/// exp(-|alpha - g beta|^2), all in closed form (no cutoff).
///
/// Samples are reduced in fixed-size index chunks merged in order, so the
/// result is identical for every thread count.
FidelityReport simulate_strategy(const HeterodyneStrategy& strategy,
                                 const GaussianPrior& prior, std::uint64_t n,
                                 std::uint64_t seed, int threads = 1);
FidelityReport simulate_strategy(const ClassicalStrategy& strategy,
                                 const GaussianPrior& prior, std::uint64_t n,
                                 std::uint64_t seed, int threads = 1);

/// Rank-1 POVM from the rows of a Haar-random m x d isometry; completeness
/// holds by construction. m = d yields an orthonormal-basis POVM.
PovmEnsemble make_random_povm(int d, int outcomes, std::uint64_t seed);

/// The complete Fock-basis POVM {|n><n| : n < d}.
PovmEnsemble fock_basis_povm(int d);

}  // namespace cvbench

#endif  // CVBENCH_CLASSICAL_CHANNEL_HPP
