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

#ifndef CVBENCH_PRIOR_HPP
#define CVBENCH_PRIOR_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "cvbench/fock.hpp"

namespace cvbench {

/// The isotropic Gaussian phase-space distribution
/// p(alpha) = (lambda/pi) exp(-lambda |alpha|^2), lambda > 0.
///
/// The flat (lambda -> 0) case is non-normalizable and is represented only by
/// the FlatPrior tag below, never as a sampler.
class GaussianPrior {
 public:
  explicit GaussianPrior(double lambda);

  double lambda() const { return lambda_; }

  /// p(alpha).
  double density(Complex alpha) const;

  /// n i.i.d. draws. E[alpha] = 0, E[|alpha|^2] = 1/lambda (variance 1/(2
  /// lambda) per quadrature). Identical (seed, stream) -> identical sequence;
  /// distinct streams partition the counter space.
  std::vector<Complex> sample(std::uint64_t n, std::uint64_t seed,
                              std::uint64_t stream = 0) const;

  /// Random-access single draw, sample(n, seed, stream)[i] == sample_at(seed,
  /// stream, i).
  Complex sample_at(std::uint64_t seed, std::uint64_t stream,
                    std::uint64_t index) const;

 private:
  double lambda_;
};

/// Marker for the flat-distribution limit lambda -> 0. Only closed-form
/// limit values are defined for it (benchmark 1/2); it cannot be sampled.
struct FlatPrior {};

/// Nodes alpha_k and positive weights w_k with sum w_k f(alpha_k)
/// ~ int p(alpha) f(alpha) d^2alpha. Weights sum to 1.
class QuadratureGrid {
 public:
  QuadratureGrid(std::vector<Complex> nodes, std::vector<double> weights);

  const std::vector<Complex>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }

  template <typename F>
  auto integrate(F&& f) const {
    auto acc = weights_[0] * f(nodes_[0]);
    for (std::size_t k = 1; k < nodes_.size(); ++k) {
      acc += weights_[k] * f(nodes_[k]);
    }
    return acc;
  }

 private:
  std::vector<Complex> nodes_;
  std::vector<double> weights_;
};

/// Polar-product rule for the prior: Gauss-Laguerre in u = lambda |alpha|^2
/// (radial_order nodes) times a uniform angular rule (angular_order nodes).
/// Exactly integrates alpha^a conj(alpha)^b against the prior whenever
/// (a + b)/2 <= radial_order - 1 and |a - b| < angular_order. Callers mixing
/// matrix elements of dimension d need angular_order >= 2d.
QuadratureGrid quadrature_grid(const GaussianPrior& prior, int radial_order,
                               int angular_order);

/// Nodes/weights for int_0^infty e^{-u} f(u) du (Golub-Welsch).
void gauss_laguerre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace cvbench

#endif  // CVBENCH_PRIOR_HPP
