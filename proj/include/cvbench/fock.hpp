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

#ifndef CVBENCH_FOCK_HPP
#define CVBENCH_FOCK_HPP

#include <Eigen/Dense>
#include <complex>

#include "cvbench/tolerances.hpp"

namespace cvbench {

using Complex = std::complex<double>;

/// A (possibly unnormalized) state in the truncated Fock basis: coefficients
/// c_0 .. c_{d-1}. Measurement-ensemble vectors may carry any norm in (0, 1];
/// reconstruction states are normalized.
class FockVector {
 public:
  explicit FockVector(Eigen::VectorXcd coeffs);

  static FockVector basis_state(int n, int d);

  int dim() const { return static_cast<int>(coeffs_.size()); }
  const Eigen::VectorXcd& coeffs() const { return coeffs_; }
  Complex coeff(int n) const { return coeffs_(n); }

  double squared_norm() const { return coeffs_.squaredNorm(); }
  bool is_normalized(double tolerance = tol::norm) const;

  FockVector normalized() const;
  FockVector scaled(Complex factor) const;
  /// Zero-padded copy with dimension d >= dim().
  FockVector padded(int d) const;

 private:
  Eigen::VectorXcd coeffs_;
};

/// <v|w>. Throws std::invalid_argument on dimension mismatch.
Complex overlap(const FockVector& v, const FockVector& w);

/// Truncated coherent state together with the probability mass lost to the
/// cutoff: tail = 1 - sum |c_n|^2.
struct CoherentState {
  FockVector state;
  double tail_mass;
};

/// c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), n < d, computed in log space.
/// Convention: <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha)beta),
/// so |<alpha|beta>|^2 = exp(-|alpha - beta|^2).
CoherentState coherent_vector(Complex alpha, int d);

/// Same, but throws TruncationError (carrying the tail mass) when the tail
/// exceeds max_tail. The heuristic d >= |alpha|^2 + 6|alpha| + 10 keeps the
/// tail below ~1e-12.
FockVector coherent_vector_checked(Complex alpha, int d, double max_tail);

/// Exact coherent overlap in the convention above.
Complex coherent_overlap(Complex alpha, Complex beta);

/// Smallest cutoff satisfying the coherent truncation heuristic.
int recommended_dim(double max_abs_alpha);

/// Dense d x d complex Hermitian matrix. Construction validates
/// max |H_mn - conj(H_nm)| against the given tolerance.
class HermitianOperator {
 public:
  explicit HermitianOperator(Eigen::MatrixXcd entries,
                             double herm_tol = tol::hermiticity);

  static HermitianOperator identity(int d);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  double trace() const { return entries_.trace().real(); }
  /// <v|H|v> (real part; the value is real for Hermitian H).
  double expectation(const FockVector& v) const;

 private:
  Eigen::MatrixXcd entries_;
};

/// Full spectral decomposition, eigenvalues sorted descending. Column k of
/// eigenvectors pairs with eigenvalues[k]. In a degenerate eigenspace the
/// columns follow the solver's natural ordering; ties are not randomized.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

SpectralDecomposition eig_hermitian(const HermitianOperator& h);

inline constexpr double kInfiniteP = std::numeric_limits<double>::infinity();

/// ||H||_p = (sum e_k^p)^(1/p) for positive semidefinite H. p = 1 is the
/// trace, p = infinity the largest eigenvalue. Eigenvalues in
/// [-psd_tol*scale, 0) are clamped to zero; anything lower throws
/// ContractViolation, as does p < 1.
double schatten_p_norm(const HermitianOperator& h, double p,
                       double psd_tol = tol::psd);

/// Same norms evaluated straight from a descending PSD spectrum.
double schatten_p_norm_from_eigenvalues(const Eigen::VectorXd& eigenvalues,
                                        double p, double psd_tol = tol::psd);

/// Truncated displacement operator D(beta) = exp(beta a^dag - conj(beta) a),
/// built by exponentiating the (Hermitian) generator spectrally. Exactly
/// unitary on the low-lying block, degrading near the cutoff edge.
Eigen::MatrixXcd displacement_operator(Complex beta, int d);

/// log(n!) with a cached table; valid for n up to a few thousand.
double log_factorial(int n);

}  // namespace cvbench

#endif  // CVBENCH_FOCK_HPP
