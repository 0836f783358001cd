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

#include "cvbench/lemma.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>

#include "cvbench/errors.hpp"
#include "cvbench/parallel.hpp"
#include "cvbench/rng.hpp"
#include "cvbench/stats.hpp"

namespace cvbench {

namespace {

// <phi|alpha> for a truncated phi and an exact coherent alpha.
Complex phi_coherent_overlap(const FockVector& phi, Complex alpha) {
  const double gauss = std::exp(-0.5 * std::norm(alpha));
  Complex sum = 0.0;
  Complex monomial = 1.0;  // alpha^k / sqrt(k!)
  for (int k = 0; k < phi.dim(); ++k) {
    if (k > 0) monomial *= alpha / std::sqrt(static_cast<double>(k));
    sum += std::conj(phi.coeff(k)) * monomial;
  }
  return gauss * sum;
}

FockVector random_unit_vector(int d, std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t base_index) {
  Eigen::VectorXcd c(d);
  for (int k = 0; k < d; ++k) {
    c(k) = standard_complex_gaussian(seed, stream, base_index + k);
  }
  return FockVector(std::move(c)).normalized();
}

int default_matrix_dim(const FockVector& phi) {
  return std::max(48, 2 * phi.dim() + 16);
}

}  // namespace

double lemma_rhs_coefficient(const GaussianPrior& prior, double p) {
  if (p < 1.0) throw std::invalid_argument("lemma_rhs_coefficient: p >= 1");
  const double lambda = prior.lambda();
  if (!std::isfinite(p)) return (1.0 + lambda) / (2.0 + lambda);
  // ((2+lambda)^p - 1)^(1/p) via expm1/log1p so large p stays accurate.
  const double log_pow = p * std::log(2.0 + lambda);
  const double log_root = (log_pow + std::log1p(-std::exp(-log_pow))) / p;
  return (1.0 + lambda) * std::exp(-log_root);
}

std::vector<LemmaCheckResult> verify_lemma(const FockVector& phi,
                                           const GaussianPrior& prior,
                                           std::span<const double> p_values,
                                           int d, const std::string& phi_id) {
  if (phi.squared_norm() <= 0.0) {
    throw std::invalid_argument("verify_lemma: phi must be nonzero");
  }
  const auto a = build_A_phi(phi, prior, d);
  const auto spectrum = eig_hermitian(a).eigenvalues;
  // ||A||_1 in closed form (the truncated trace would undershoot by the
  // cutoff tail and could push the slack spuriously negative).
  const double one_norm = a_phi_trace_exact(phi, prior);

  std::vector<LemmaCheckResult> out;
  out.reserve(p_values.size());
  for (const double p : p_values) {
    LemmaCheckResult r;
    r.phi_id = phi_id;
    r.p = p;
    r.lhs = schatten_p_norm_from_eigenvalues(spectrum, p);
    r.rhs = lemma_rhs_coefficient(prior, p) * one_norm;
    r.slack = r.rhs - r.lhs;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LemmaCheckResult> verify_lemma_random_suite(
    const GaussianPrior& prior, int trials, int phi_dim,
    std::span<const double> p_values, int op_dim, std::uint64_t seed,
    int threads) {
  if (trials < 1 || phi_dim < 1) {
    throw std::invalid_argument("verify_lemma_random_suite: bad sizes");
  }
  std::vector<std::vector<LemmaCheckResult>> per_trial(trials);
  parallel_for_indexed(trials, threads, [&](std::size_t t) {
    const auto phi =
        random_unit_vector(phi_dim, seed, /*stream=*/11,
                           static_cast<std::uint64_t>(t) * phi_dim);
    std::ostringstream id;
    id << "random#" << t;
    per_trial[t] = verify_lemma(phi, prior, p_values, op_dim, id.str());
  });

  std::vector<LemmaCheckResult> out;
  out.reserve(static_cast<std::size_t>(trials) * p_values.size());
  for (auto& results : per_trial) {
    for (auto& r : results) out.push_back(std::move(r));
  }
  return out;
}

TraceIdentityResult trace_identity_mc(const FockVector& phi,
                                      const GaussianPrior& prior, int p,
                                      std::uint64_t n, std::uint64_t seed,
                                      int matrix_dim) {
  if (p != 2 && p != 3) {
    throw std::invalid_argument("trace_identity_mc: p must be 2 or 3");
  }
  if (matrix_dim <= 0) matrix_dim = default_matrix_dim(phi);

  TraceIdentityResult result;
  result.p = p;
  result.samples = n;
  result.seed = seed;

  {
    const auto spectrum =
        eig_hermitian(build_A_phi(phi, prior, matrix_dim)).eigenvalues;
    double tr = 0.0;
    for (int k = 0; k < spectrum.size(); ++k) {
      tr += std::pow(std::max(0.0, spectrum(k)), p);
    }
    result.matrix_value = tr;
  }

  // tr A^p as the p-fold integral: weight prod_i |<phi|alpha_i>|^2 times the
  // cyclic overlap chain <a_1|a_2><a_2|a_3>...<a_p|a_1>.
  RunningMoments re_acc, im_acc;
  std::array<Complex, 3> alpha;
  for (std::uint64_t i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      alpha[j] = prior.sample_at(seed, /*stream=*/20 + j, i);
    }
    double weight = 1.0;
    Complex chain = 1.0;
    for (int j = 0; j < p; ++j) {
      weight *= std::norm(phi_coherent_overlap(phi, alpha[j]));
      chain *= coherent_overlap(alpha[j], alpha[(j + 1) % p]);
    }
    const Complex sample = weight * chain;
    re_acc.add(sample.real());
    im_acc.add(sample.imag());
  }
  result.mc_estimate = re_acc.mean;
  result.mc_stderr = re_acc.stderr_of_mean();
  result.mc_imag = im_acc.mean;
  result.mc_imag_stderr = im_acc.stderr_of_mean();
  return result;
}

// --- B and C --------------------------------------------------------------

Eigen::VectorXd thermal_mode_diagonal(const GaussianPrior& prior, int d_mode) {
  const double lambda = prior.lambda();
  Eigen::VectorXd diag(d_mode);
  for (int n = 0; n < d_mode; ++n) {
    diag(n) = lambda / (1.0 + lambda) *
              std::exp(-n * std::log1p(lambda));
  }
  return diag;
}

MultiModeOperator build_C(const GaussianPrior& prior, int p, int d_mode,
                          int radial_order, int angular_order) {
  if (p < 1 || d_mode < 1) throw std::invalid_argument("build_C: bad sizes");
  double total = std::pow(static_cast<double>(d_mode), p);
  if (total > 1.6e4) {
    throw std::invalid_argument(
        "build_C: d_mode^p too large for a dense tensor operator");
  }
  if (angular_order <= 0) angular_order = std::max(8, 2 * d_mode);

  // Single-mode factor by quadrature; its thermal diagonal form is checked
  // against thermal_mode_diagonal in the tests rather than assumed here.
  const auto grid = quadrature_grid(prior, radial_order, angular_order);
  Eigen::MatrixXcd c1 = Eigen::MatrixXcd::Zero(d_mode, d_mode);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto v = coherent_vector(grid.nodes()[k], d_mode).state.coeffs();
    c1.noalias() += grid.weights()[k] * (v * v.adjoint());
  }
  c1 = 0.5 * (c1 + c1.adjoint().eval());

  Eigen::MatrixXcd acc = c1;
  for (int i = 1; i < p; ++i) {
    acc = Eigen::kroneckerProduct(acc, c1).eval();
  }
  MultiModeOperator out;
  out.entries = std::move(acc);
  out.modes = p;
  out.dim_per_mode = d_mode;
  return out;
}

MultiModeOperator build_B2(const GaussianPrior& prior, int d_mode,
                           int radial_order, int angular_order) {
  if (d_mode < 1) throw std::invalid_argument("build_B2: d_mode >= 1");
  const auto grid = quadrature_grid(prior, radial_order, angular_order);
  const std::size_t K = grid.size();

  std::vector<Eigen::MatrixXcd> projectors(K);
  for (std::size_t k = 0; k < K; ++k) {
    const auto v = coherent_vector(grid.nodes()[k], d_mode).state.coeffs();
    projectors[k] = grid.weights()[k] * (v * v.adjoint());
  }

  // B = sum_{k,l} e^{-|a_k - a_l|^2} P_k (x) P_l  factorizes through
  // Q_k = sum_l e^{-|a_k - a_l|^2} P_l, avoiding the K^2 Kronecker products.
  const int total = d_mode * d_mode;
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(total, total);
  Eigen::MatrixXcd qk(d_mode, d_mode);
  for (std::size_t k = 0; k < K; ++k) {
    qk.setZero();
    for (std::size_t l = 0; l < K; ++l) {
      const double coupling =
          std::exp(-std::norm(grid.nodes()[k] - grid.nodes()[l]));
      qk.noalias() += coupling * projectors[l];
    }
    b.noalias() += Eigen::kroneckerProduct(projectors[k], qk);
  }
  b = 0.5 * (b + b.adjoint().eval());

  MultiModeOperator out;
  out.entries = std::move(b);
  out.modes = 2;
  out.dim_per_mode = d_mode;
  return out;
}

std::vector<double> b2_sector_spectrum(const GaussianPrior& prior,
                                       int total_n) {
  const double lambda = prior.lambda();
  const double coef = lambda * lambda / ((2.0 + lambda) * (2.0 + lambda) - 1.0);
  std::vector<double> values;
  values.reserve(total_n + 1);
  for (int n_plus = 0; n_plus <= total_n; ++n_plus) {
    const int n_minus = total_n - n_plus;
    values.push_back(coef * std::pow(1.0 / (1.0 + lambda), n_plus) *
                     std::pow(1.0 / (3.0 + lambda), n_minus));
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double tensor_power_expectation(const FockVector& phi,
                                const MultiModeOperator& m) {
  const FockVector v =
      phi.dim() == m.dim_per_mode ? phi : phi.padded(m.dim_per_mode);
  Eigen::VectorXcd w = v.coeffs();
  for (int i = 1; i < m.modes; ++i) {
    w = Eigen::kroneckerProduct(w, v.coeffs()).eval();
  }
  return (w.adjoint() * m.entries * w)(0, 0).real();
}

Eigen::MatrixXcd two_mode_fourier_unitary(int d_mode) {
  const int total = d_mode * d_mode;
  const Complex i(0.0, 1.0);
  // Hermitian generator H = -i (a1^dag a2 - a1 a2^dag); U = exp(i (pi/4) H)
  // sends mode 1 to the symmetric combination, mode 2 to the antisymmetric.
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(total, total);
  auto idx = [d_mode](int n1, int n2) { return n1 * d_mode + n2; };
  for (int n1 = 0; n1 + 1 < d_mode; ++n1) {
    for (int n2 = 1; n2 < d_mode; ++n2) {
      const double amp =
          std::sqrt(static_cast<double>(n1 + 1) * static_cast<double>(n2));
      h(idx(n1 + 1, n2 - 1), idx(n1, n2)) = -i * amp;
      h(idx(n1, n2), idx(n1 + 1, n2 - 1)) = i * amp;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ContractViolation("two_mode_fourier_unitary: eigensolver failed");
  }
  Eigen::VectorXcd phases(total);
  for (int k = 0; k < total; ++k) {
    phases(k) = std::exp(i * (M_PI / 4.0) * solver.eigenvalues()(k));
  }
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

ChainTriple scalar_chain_check(const FockVector& phi,
                               const GaussianPrior& prior, double p, int d) {
  if (p < 1.0 || !std::isfinite(p)) {
    throw std::invalid_argument("scalar_chain_check: finite p >= 1 required");
  }
  const double lambda = prior.lambda();

  ChainTriple triple;
  {
    const auto spectrum =
        eig_hermitian(build_A_phi(phi, prior, d)).eigenvalues;
    double tr = 0.0;
    for (int k = 0; k < spectrum.size(); ++k) {
      tr += std::pow(std::max(0.0, spectrum(k)), p);
    }
    triple.lhs = tr;
  }

  const double log_denominator =
      p * std::log(2.0 + lambda) +
      std::log1p(-std::exp(-p * std::log(2.0 + lambda)));
  const double coef = std::exp(p * std::log1p(lambda) - log_denominator);
  const double tr_a = a_phi_trace_exact(phi, prior);
  triple.rhs = coef * std::pow(tr_a, p);

  if (p == 2.0) {
    // Absolute-value step through the rotated modes. Both mode constants
    // (1/(1+lambda) and 1/(3+lambda)) are real positive at p = 2, so this
    // equals the left end; evaluating it through the explicit mode rotation
    // doubles as a check of that diagonal form.
    const int d_mode = 2 * phi.dim() - 1;  // total photon number preserved
    const auto u = two_mode_fourier_unitary(d_mode);
    const FockVector padded = phi.padded(d_mode);
    const Eigen::VectorXcd pair =
        Eigen::kroneckerProduct(padded.coeffs(), padded.coeffs());
    const Eigen::VectorXcd rotated = u * pair;

    const double b_coef =
        lambda * lambda / ((2.0 + lambda) * (2.0 + lambda) - 1.0);
    double sum = 0.0;
    for (int n1 = 0; n1 < d_mode; ++n1) {
      for (int n2 = 0; n2 < d_mode; ++n2) {
        const double weight = std::pow(1.0 / (1.0 + lambda), n1) *
                              std::pow(1.0 / (3.0 + lambda), n2);
        sum += weight * std::norm(rotated(n1 * d_mode + n2));
      }
    }
    triple.intermediate = b_coef * sum;
  } else {
    // The rotated-mode construction for p >= 3 is out of scope; the
    // absolute-value step then contributes nothing beyond the left end.
    triple.intermediate = triple.lhs;
  }
  return triple;
}

}  // namespace cvbench
