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

#include "cvbench/prior.hpp"

#include <cmath>
#include <stdexcept>

#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"

namespace cvbench {

GaussianPrior::GaussianPrior(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument(
        "GaussianPrior: lambda must be a finite positive number (the flat "
        "limit is FlatPrior, not lambda = 0)");
  }
}

double GaussianPrior::density(Complex alpha) const {
  return lambda_ / M_PI * std::exp(-lambda_ * std::norm(alpha));
}

Complex GaussianPrior::sample_at(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t index) const {
  // Standard complex Gaussian has E[|w|^2] = 1; the prior wants 1/lambda.
  return standard_complex_gaussian(seed, stream, index) /
         std::sqrt(lambda_);
}

std::vector<Complex> GaussianPrior::sample(std::uint64_t n, std::uint64_t seed,
                                           std::uint64_t stream) const {
  std::vector<Complex> out(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out[i] = sample_at(seed, stream, i);
  }
  return out;
}

QuadratureGrid::QuadratureGrid(std::vector<Complex> nodes,
                               std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw std::invalid_argument("QuadratureGrid: node/weight size mismatch");
  }
}

void gauss_laguerre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: n >= 1");
  // Golub-Welsch: Jacobi matrix of the Laguerre recurrence, diag 2k+1,
  // off-diagonal k+1; mu0 = int_0^inf e^-u du = 1.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = 2.0 * k + 1.0;
    if (k + 1 < n) {
      jacobi(k, k + 1) = k + 1.0;
      jacobi(k + 1, k) = k + 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("gauss_laguerre: eigensolver failed");
  }
  nodes.resize(n);
  weights.resize(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    weights[k] = v0 * v0;
  }
}

QuadratureGrid quadrature_grid(const GaussianPrior& prior, int radial_order,
                               int angular_order) {
  if (radial_order < 2 || angular_order < 2) {
    throw std::invalid_argument("quadrature_grid: orders >= 2 required");
  }
  std::vector<double> u, w;
  gauss_laguerre(radial_order, u, w);

  // alpha = sqrt(u/lambda) e^{i theta}: the substitution u = lambda|alpha|^2
  // turns the prior into the plain e^-u Laguerre weight, and the angular
  // average is a uniform rule exact for windings below angular_order.
  std::vector<Complex> nodes;
  std::vector<double> weights;
  nodes.reserve(static_cast<std::size_t>(radial_order) * angular_order);
  weights.reserve(nodes.capacity());
  for (int k = 0; k < radial_order; ++k) {
    const double r = std::sqrt(u[k] / prior.lambda());
    const double wk = w[k] / angular_order;
    for (int j = 0; j < angular_order; ++j) {
      const double theta = 2.0 * M_PI * j / angular_order;
      nodes.push_back(std::polar(r, theta));
      weights.push_back(wk);
    }
  }
  return QuadratureGrid(std::move(nodes), std::move(weights));
}

}  // namespace cvbench
