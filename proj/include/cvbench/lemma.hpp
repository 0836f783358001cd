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

#ifndef CVBENCH_LEMMA_HPP
#define CVBENCH_LEMMA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cvbench/classical_channel.hpp"
#include "cvbench/fock.hpp"
#include "cvbench/prior.hpp"

namespace cvbench {

/// One evaluation of the p-norm inequality
///   ||A_phi||_p <= (1+lambda)/((2+lambda)^p - 1)^(1/p) * ||A_phi||_1.
/// slack = rhs - lhs must stay >= -tol for every phi and every p >= 1.
struct LemmaCheckResult {
  std::string phi_id;
  double p = 1.0;
  double lhs = 0.0;    // ||A_phi||_p
  double rhs = 0.0;    // coefficient * ||A_phi||_1
  double slack = 0.0;  // rhs - lhs
};

/// (1+lambda)/((2+lambda)^p - 1)^(1/p); the p -> infinity limit is
/// (1+lambda)/(2+lambda), the benchmark bound.
double lemma_rhs_coefficient(const GaussianPrior& prior, double p);

/// Evaluates the inequality for one phi across a list of p values, building
/// A_phi once on a d-dim cutoff.
std::vector<LemmaCheckResult> verify_lemma(const FockVector& phi,
                                           const GaussianPrior& prior,
                                           std::span<const double> p_values,
                                           int d,
                                           const std::string& phi_id = "phi");

/// Batch suite over seeded Haar-random phi vectors; results ordered by
/// (trial, p) regardless of thread count.
std::vector<LemmaCheckResult> verify_lemma_random_suite(
    const GaussianPrior& prior, int trials, int phi_dim,
    std::span<const double> p_values, int op_dim, std::uint64_t seed,
    int threads = 1);

/// tr(A_phi^p) both from the Fock matrix and as the p-fold phase-space
/// multi-integral estimated by Monte Carlo:
///   mean over draws of  prod_i |<phi|alpha_i>|^2 * <alpha_1|alpha_2> ...
///   <alpha_p|alpha_1>.
/// The imaginary part of the chain averages to 0 and is kept as a
/// diagnostic.
struct TraceIdentityResult {
  int p = 2;
  double matrix_value = 0.0;
  double mc_estimate = 0.0;
  double mc_stderr = 0.0;
  double mc_imag = 0.0;
  double mc_imag_stderr = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

TraceIdentityResult trace_identity_mc(const FockVector& phi,
                                      const GaussianPrior& prior, int p,
                                      std::uint64_t n, std::uint64_t seed,
                                      int matrix_dim = 0);

/// Dense operator on the p-fold tensor space (total dimension
/// dim_per_mode^p); the basis index is big-endian in the mode number:
/// index = n_1 * d^(p-1) + ... + n_p.
struct MultiModeOperator {
  Eigen::MatrixXcd entries;
  int modes = 1;
  int dim_per_mode = 1;

  int total_dim() const { return static_cast<int>(entries.rows()); }
};

/// C = tensor_{i=1..p} int p(alpha) |alpha><alpha| d^2alpha. The single-mode
/// factor is the thermal diagonal (lambda/(1+lambda)) (1/(1+lambda))^n,
/// built here by quadrature so the thermal form stays a testable claim.
MultiModeOperator build_C(const GaussianPrior& prior, int p, int d_mode,
                          int radial_order = 40, int angular_order = 0);

/// Exact single-mode thermal diagonal of C for reference checks.
Eigen::VectorXd thermal_mode_diagonal(const GaussianPrior& prior, int d_mode);

/// B at p = 2: the two-mode overlap-weighted moment operator
///   B = int int p(a1) p(a2) |<a1|a2>|^2 |a1><a1| (x) |a2><a2|,
/// built by tensor-grid quadrature. Hermitian PSD within quadrature
/// tolerance; conserves total photon number.
MultiModeOperator build_B2(const GaussianPrior& prior, int d_mode,
                           int radial_order = 32, int angular_order = 32);

/// Eigenvalues B should have in the total-photon-number-N sector, from the
/// two-mode thermal diagonal form with unit-modulus mode constants {+1, -1}:
///   lambda^2/((2+lambda)^2 - 1) * (1/(1+lambda))^{n+} (1/(3+lambda))^{n-},
/// n+ + n- = N. Sectors with N < d_mode survive truncation exactly.
std::vector<double> b2_sector_spectrum(const GaussianPrior& prior, int total_n);

/// tr(|phi><phi|^{tensor p} M) for a product state phi^{tensor p}.
double tensor_power_expectation(const FockVector& phi,
                                const MultiModeOperator& m);

/// The proof-chain triple
///   tr(A_phi^p)  <=  intermediate  <=  (1+lambda)^p/((2+lambda)^p - 1)
///                                      * (tr A_phi)^p,
/// monotone nondecreasing within tolerance. The intermediate is the
/// absolute-value step of the chain; at p = 2 it is evaluated through the
/// rotated (Fourier) modes, where it coincides with the left end because the
/// two mode constants are real positive. For p >= 3 the rotated-mode
/// construction is out of scope and the intermediate collapses to the left
/// end.
struct ChainTriple {
  double lhs = 0.0;
  double intermediate = 0.0;
  double rhs = 0.0;
};

ChainTriple scalar_chain_check(const FockVector& phi,
                               const GaussianPrior& prior, double p, int d);

/// Unitary on the two-mode truncated space induced by the 50:50 mode mixing
/// b1 = (a1 + a2)/sqrt(2), b2 = (a1 - a2)/sqrt(2); conserves total photon
/// number, so sectors with N < d_mode transform exactly.
Eigen::MatrixXcd two_mode_fourier_unitary(int d_mode);

}  // namespace cvbench

#endif  // CVBENCH_LEMMA_HPP
