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

#include "cvbench/fock.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <vector>

#include "cvbench/errors.hpp"

namespace cvbench {

// --- FockVector -------------------------------------------------------------

FockVector::FockVector(Eigen::VectorXcd coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 1) {
    throw std::invalid_argument("FockVector needs dimension >= 1");
  }
}

FockVector FockVector::basis_state(int n, int d) {
  if (n < 0 || n >= d) {
    throw std::invalid_argument("basis_state: n out of range");
  }
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d);
  c(n) = 1.0;
  return FockVector(std::move(c));
}

bool FockVector::is_normalized(double tolerance) const {
  return std::abs(squared_norm() - 1.0) <= tolerance;
}

FockVector FockVector::normalized() const {
  const double n2 = squared_norm();
  if (n2 <= 0.0) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  return FockVector(coeffs_ / std::sqrt(n2));
}

FockVector FockVector::scaled(Complex factor) const {
  return FockVector(coeffs_ * factor);
}

FockVector FockVector::padded(int d) const {
  if (d < dim()) {
    throw std::invalid_argument("padded: target dimension below current");
  }
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d);
  c.head(dim()) = coeffs_;
  return FockVector(std::move(c));
}

Complex overlap(const FockVector& v, const FockVector& w) {
  if (v.dim() != w.dim()) {
    throw std::invalid_argument("overlap: dimension mismatch");
  }
  return v.coeffs().dot(w.coeffs());  // Eigen's dot conjugates the left side
}

// --- coherent states ----------------------------------------------------------

double log_factorial(int n) {
  static std::vector<double> table;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (static_cast<int>(table.size()) <= n) {
    if (table.empty()) table.push_back(0.0);  // log 0! = 0
    for (int k = static_cast<int>(table.size()); k <= n; ++k) {
      table.push_back(table[k - 1] + std::log(static_cast<double>(k)));
    }
  }
  return table[n];
}

CoherentState coherent_vector(Complex alpha, int d) {
  if (d < 1) throw std::invalid_argument("coherent_vector: d >= 1 required");
  Eigen::VectorXcd c(d);
  const double a2 = std::norm(alpha);
  if (a2 == 0.0) {
    c.setZero();
    c(0) = 1.0;
    return {FockVector(std::move(c)), 0.0};
  }
  const double log_abs = std::log(std::abs(alpha));
  const double arg = std::arg(alpha);
  double norm2 = 0.0;
  for (int n = 0; n < d; ++n) {
    const double log_mag = -0.5 * a2 + n * log_abs - 0.5 * log_factorial(n);
    const double mag = std::exp(log_mag);
    c(n) = std::polar(mag, n * arg);
    norm2 += mag * mag;
  }
  // Tail mass can dip an ulp below zero once the sum saturates.
  const double tail = std::max(0.0, 1.0 - norm2);
  return {FockVector(std::move(c)), tail};
}

FockVector coherent_vector_checked(Complex alpha, int d, double max_tail) {
  auto coh = coherent_vector(alpha, d);
  if (coh.tail_mass > max_tail) {
    std::ostringstream msg;
    msg << "coherent truncation insufficient: tail mass " << coh.tail_mass
        << " exceeds " << max_tail << " at d=" << d;
    throw TruncationError(msg.str(), coh.tail_mass);
  }
  return std::move(coh.state);
}

Complex coherent_overlap(Complex alpha, Complex beta) {
  return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) +
                  std::conj(alpha) * beta);
}

int recommended_dim(double max_abs_alpha) {
  const double a = std::abs(max_abs_alpha);
  return static_cast<int>(std::ceil(a * a + 6.0 * a + 10.0));
}

// --- HermitianOperator --------------------------------------------------------

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries, double herm_tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw std::invalid_argument("HermitianOperator: square matrix required");
  }
  const double defect =
      (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (defect > herm_tol) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |H - H^dag| = " << defect
        << " exceeds " << herm_tol;
    throw ContractViolation(msg.str());
  }
}

HermitianOperator HermitianOperator::identity(int d) {
  return HermitianOperator(Eigen::MatrixXcd::Identity(d, d));
}

double HermitianOperator::expectation(const FockVector& v) const {
  if (v.dim() != dim()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  return (v.coeffs().adjoint() * entries_ * v.coeffs())(0, 0).real();
}

SpectralDecomposition eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries());
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("eigensolver failed to converge");
  }
  const int d = h.dim();
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors.resize(d, d);
  for (int k = 0; k < d; ++k) {
    out.eigenvectors.col(k) = solver.eigenvectors().col(d - 1 - k);
  }
  return out;
}

double schatten_p_norm_from_eigenvalues(const Eigen::VectorXd& eigenvalues,
                                        double p, double psd_tol) {
  if (p < 1.0) {
    throw ContractViolation("schatten_p_norm: p >= 1 required");
  }
  const double scale = std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
  const double floor = -psd_tol * scale;
  double top = 0.0;
  double sum = 0.0;
  for (int k = 0; k < eigenvalues.size(); ++k) {
    double e = eigenvalues(k);
    if (e < floor) {
      std::ostringstream msg;
      msg << "operator is not positive semidefinite: eigenvalue " << e
          << " below tolerance " << floor;
      throw ContractViolation(msg.str());
    }
    e = std::max(e, 0.0);
    top = std::max(top, e);
    if (std::isfinite(p)) sum += std::pow(e, p);
  }
  if (!std::isfinite(p)) return top;
  if (p == 1.0) return sum;
  return std::pow(sum, 1.0 / p);
}

double schatten_p_norm(const HermitianOperator& h, double p, double psd_tol) {
  return schatten_p_norm_from_eigenvalues(eig_hermitian(h).eigenvalues, p,
                                          psd_tol);
}

// --- displacement ---------------------------------------------------------------

Eigen::MatrixXcd displacement_operator(Complex beta, int d) {
  if (d < 1) throw std::invalid_argument("displacement_operator: d >= 1");
  if (beta == 0.0) return Eigen::MatrixXcd::Identity(d, d);

  // Generator beta a^dag - conj(beta) a = i H with H Hermitian and
  // tridiagonal: h_{n+1,n} = -i beta sqrt(n+1). A diagonal phase gauge
  // Lambda_nn = e^{i n phase} turns H into the real symmetric tridiagonal
  // T with off-diagonal |beta| sqrt(n+1), so D = Lambda^dag Q e^{iS} Q^T
  // Lambda from the cheap tridiagonal eigensolve T = Q S Q^T.
  const Complex i(0.0, 1.0);
  const double phase = -std::arg(-i * beta);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd sub(d - 1);
  for (int n = 0; n + 1 < d; ++n) {
    sub(n) = std::abs(beta) * std::sqrt(static_cast<double>(n + 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("displacement_operator: eigensolver failed");
  }
  Eigen::VectorXcd exp_is(d);
  for (int k = 0; k < d; ++k) {
    exp_is(k) = std::exp(i * solver.eigenvalues()(k));
  }
  Eigen::MatrixXcd core = solver.eigenvectors().cast<Complex>() *
                          exp_is.asDiagonal() *
                          solver.eigenvectors().transpose().cast<Complex>();
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      core(m, n) *= std::exp(i * (phase * (n - m)));
    }
  }
  return core;
}

}  // namespace cvbench
