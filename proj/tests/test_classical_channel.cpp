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

#include <doctest.h>

#include <cmath>

#include "cvbench/classical_channel.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/rng.hpp"

using namespace cvbench;

namespace {

FockVector random_phi(int d, std::uint64_t seed) {
  Eigen::VectorXcd c(d);
  for (int k = 0; k < d; ++k) c(k) = standard_complex_gaussian(seed, 40, k);
  return FockVector{c}.normalized();
}

// Quadrature oracle for A_phi: integrate the defining expression directly.
Eigen::MatrixXcd a_phi_by_quadrature(const FockVector& phi,
                                     const GaussianPrior& prior, int d) {
  const auto grid =
      quadrature_grid(prior, 48, 2 * (d + phi.dim()));
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto coh = coherent_vector(grid.nodes()[k], d).state.coeffs();
    Complex ov = 0.0;  // <phi|alpha>
    for (int j = 0; j < phi.dim(); ++j) ov += std::conj(phi.coeff(j)) * coh(j);
    a.noalias() += grid.weights()[k] * std::norm(ov) * (coh * coh.adjoint());
  }
  return a;
}

}  // namespace

TEST_CASE("benchmark bound values") {
  CHECK(benchmark_bound(FlatPrior{}) == 0.5);
  CHECK(benchmark_bound(GaussianPrior(1.0)) == 2.0 / 3.0);
  CHECK(benchmark_bound(GaussianPrior(2.0)) == 3.0 / 4.0);
}

TEST_CASE("A for the vacuum outcome is the geometric diagonal") {
  const GaussianPrior prior(1.0);
  const auto vac = FockVector::basis_state(0, 1);
  const auto a = build_A_phi(vac, prior, 30);
  for (int m = 0; m < 30; ++m) {
    for (int n = 0; n < 30; ++n) {
      const double expected = m == n ? std::pow(3.0, -(m + 1)) : 0.0;
      CHECK(std::abs(a.entries()(m, n) - expected) < 1e-14);
    }
  }
  // tr A_vac = lambda/(1+lambda) = 1/2 (cutoff leftover ~ 3^-30).
  CHECK(std::abs(a.trace() - 0.5) < 1e-10);
  CHECK(std::abs(a_phi_trace_exact(vac, prior) - 0.5) < 1e-15);
}

TEST_CASE("A closed form agrees with the quadrature oracle") {
  // The moment formula must reproduce the defining integral before anything
  // downstream may rely on it.
  for (const double lambda : {0.5, 1.0, 3.0}) {
    const GaussianPrior prior(lambda);

    const auto vac = FockVector::basis_state(0, 1);
    const int d_vac = 24;
    CHECK((build_A_phi(vac, prior, d_vac).entries() -
           a_phi_by_quadrature(vac, prior, d_vac))
              .cwiseAbs()
              .maxCoeff() < 1e-10);

    const auto phi = random_phi(4, 91);
    const int d = 28;
    CHECK((build_A_phi(phi, prior, d).entries() -
           a_phi_by_quadrature(phi, prior, d))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("A is bilinear in the outcome vector") {
  const GaussianPrior prior(1.0);
  const auto phi = random_phi(5, 14);
  const Complex c(0.0, 0.3);
  const auto a = build_A_phi(phi, prior, 24);
  const auto a_scaled = build_A_phi(phi.scaled(c), prior, 24);
  CHECK((a_scaled.entries() - std::norm(c) * a.entries())
            .cwiseAbs()
            .maxCoeff() < 1e-14);
}

TEST_CASE("A signals truncation when the cutoff starves it") {
  const GaussianPrior prior(1.0);
  // |phi> = |d-1> pushes the moment mass well past a cutoff at d.
  const auto phi = FockVector::basis_state(9, 10);
  CHECK_THROWS_AS(build_A_phi(phi, prior, 10), TruncationError);
  CHECK_NOTHROW(build_A_phi(phi, prior, 64));
}

TEST_CASE("optimal reconstruction of the vacuum moment operator") {
  const GaussianPrior prior(1.0);
  const auto a = build_A_phi(FockVector::basis_state(0, 1), prior, 30);
  const auto [chi, value] = optimal_reconstruction(a);
  CHECK(value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(std::abs(chi.coeff(0)) - 1.0) < 1e-10);  // vacuum up to phase
}

TEST_CASE("optimal reconstruction: degenerate and variational cases") {
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(6, 6) / 6.0;
  const auto [chi, value] = optimal_reconstruction(HermitianOperator{id});
  CHECK(value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(chi.is_normalized(1e-12));

  // <chi|A|chi> >= <v|A|v> for random unit v.
  const GaussianPrior prior(1.0);
  const auto a = build_A_phi(random_phi(6, 3), prior, 24);
  const auto [top, sup] = optimal_reconstruction(a);
  CHECK(std::abs(a.expectation(top) - sup) < 1e-12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = random_phi(24, 1000 + trial);
    CHECK(a.expectation(v) <= sup + 1e-12);
  }
}

TEST_CASE("fock basis POVM: classical fidelity against the per-element oracle") {
  const GaussianPrior prior(1.0);
  const int d = 30;
  const auto result = classical_fidelity(fock_basis_povm(d), prior);

  // Independent oracle: A_{|n>} is diagonal with entries
  // lambda (n+m)! / (n! m! (2+lambda)^{n+m+1}); brute-force the maximum.
  const double lambda = 1.0;
  double oracle = 0.0;
  const int d_op = std::max(64, 2 * d);
  for (int n = 0; n < d; ++n) {
    double best = 0.0;
    for (int m = 0; m < d_op; ++m) {
      const double log_term = log_factorial(n + m) - log_factorial(n) -
                              log_factorial(m) -
                              (n + m + 1) * std::log(2.0 + lambda);
      best = std::max(best, lambda * std::exp(log_term));
    }
    oracle += best;
  }
  CHECK(result.report.value == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(result.report.value <= 2.0 / 3.0);
  CHECK(std::abs(result.one_norm_sum - result.one_norm_expected) < 1e-9);
}

TEST_CASE("splitting a coarse POVM element never lowers the fidelity") {
  const GaussianPrior prior(1.0);
  const int d = 4;
  // Unsplit: the single element 1_d, i.e. A_1 = sum_n A_{|n>}.
  const auto povm = fock_basis_povm(d);
  Eigen::MatrixXcd a_sum = Eigen::MatrixXcd::Zero(24, 24);
  double split_value = 0.0;
  for (const auto& phi : povm.vectors) {
    const auto a = build_A_phi(phi, prior, 24);
    a_sum += a.entries();
    split_value += optimal_reconstruction(a).second;
  }
  const double unsplit_value =
      optimal_reconstruction(HermitianOperator{a_sum}).second;
  CHECK(split_value >= unsplit_value - 1e-12);
}

TEST_CASE("coarse-graining two rank-1 elements never helps") {
  const GaussianPrior prior(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a1 = build_A_phi(random_phi(6, 200 + trial), prior, 28);
    const auto a2 = build_A_phi(random_phi(6, 300 + trial), prior, 28);
    const double separate = optimal_reconstruction(a1).second +
                            optimal_reconstruction(a2).second;
    const double merged =
        optimal_reconstruction(
            HermitianOperator{a1.entries() + a2.entries()})
            .second;
    CHECK(merged <= separate + 1e-12);
  }
}

TEST_CASE("random POVMs: completeness, bound, and the one-norm identity") {
  const GaussianPrior prior(1.0);
  const double bound = benchmark_bound(prior);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto povm = make_random_povm(10, 14, seed);
    CHECK(povm.completeness_defect() < 1e-10);
    const auto result = classical_fidelity(povm, prior);
    CHECK(result.report.value <= bound + 1e-8);
    CHECK(std::abs(result.one_norm_sum - result.one_norm_expected) < 1e-8);
  }
}

TEST_CASE("square random POVM is an orthonormal basis") {
  const auto povm = make_random_povm(6, 6, 9);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      CHECK(std::abs(std::abs(overlap(povm.vectors[i], povm.vectors[j])) -
                     expected) < 1e-12);
    }
  }
  CHECK_THROWS_AS(make_random_povm(6, 5, 1), std::invalid_argument);
}

TEST_CASE("heterodyne closed form: saturation, unit gain, zero gain") {
  for (const double lambda : {0.2, 1.0, 5.0}) {
    const GaussianPrior prior(lambda);
    const double g_opt = 1.0 / (1.0 + lambda);
    CHECK(std::abs(heterodyne_fidelity(prior, g_opt) -
                   benchmark_bound(prior)) < 1e-15);
    CHECK(heterodyne_fidelity(prior, 1.0) ==
          doctest::Approx(0.5).epsilon(1e-14));
  }
  const GaussianPrior one(1.0);
  CHECK(heterodyne_fidelity(one, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  // g = 0 prepares |0> regardless of the outcome: equals tr A_vac.
  CHECK(heterodyne_fidelity(one, 0.0) ==
        doctest::Approx(a_phi_trace_exact(FockVector::basis_state(0, 1), one))
            .epsilon(1e-12));
  CHECK_THROWS_AS(heterodyne_fidelity(one, -0.1), std::invalid_argument);
}

TEST_CASE("heterodyne closed form against the double-quadrature oracle") {
  // F(g) = int p(alpha) int dbeta/pi e^{-|beta-alpha|^2} e^{-|alpha-g beta|^2};
  // substituting beta = alpha + w turns the inner integral into a unit
  // Gaussian average, evaluated on its own grid.
  const GaussianPrior unit(1.0);
  const auto inner_grid = quadrature_grid(unit, 40, 24);
  for (const double lambda : {0.4, 1.0, 2.5}) {
    const GaussianPrior prior(lambda);
    const auto outer_grid = quadrature_grid(prior, 40, 24);
    for (const double g : {0.2, 1.0 / (1.0 + lambda), 0.9}) {
      const double oracle = outer_grid.integrate([&](Complex alpha) {
        return inner_grid.integrate([&](Complex w) {
          return std::exp(-std::norm(alpha - g * (alpha + w)));
        });
      });
      CHECK(std::abs(heterodyne_fidelity(prior, g) - oracle) < 1e-12);
    }
  }
}

TEST_CASE("heterodyne gain response peaks exactly at 1/(1+lambda)") {
  for (const double lambda : {0.3, 1.0, 4.0}) {
    const GaussianPrior prior(lambda);
    const double g_opt = 1.0 / (1.0 + lambda);
    const double h = 1e-6;
    const double left = heterodyne_fidelity(prior, g_opt - h);
    const double peak = heterodyne_fidelity(prior, g_opt);
    const double right = heterodyne_fidelity(prior, g_opt + h);
    CHECK(peak > left);
    CHECK(peak > right);
    // derivative changes sign across the peak
    CHECK((peak - left) * (right - peak) < 0.0);
  }
}

TEST_CASE("heterodyne simulation reproduces the closed form") {
  const GaussianPrior prior(1.0);
  const auto report = simulate_strategy(HeterodyneStrategy{0.5}, prior,
                                        200000, 11);
  CHECK(std::abs(report.value - 2.0 / 3.0) <= 3.0 * report.stderr_);
  CHECK(report.stderr_ < 1e-3);
  CHECK(report.benchmark == 2.0 / 3.0);
}

TEST_CASE("measure-nothing-prepare-vacuum strategy scores tr A_vac") {
  const GaussianPrior prior(1.0);
  const int d = 30;
  ClassicalStrategy strategy{fock_basis_povm(d), {}};
  for (int n = 0; n < d; ++n) {
    strategy.reconstructions.push_back(FockVector::basis_state(0, d));
  }
  const auto report = simulate_strategy(strategy, prior, 50000, 21);
  CHECK(std::abs(report.value - 0.5) <= 3.0 * report.stderr_);
}

TEST_CASE("simulation results do not depend on the thread count") {
  const GaussianPrior prior(1.0);
  // n chosen to straddle several reduction chunks unevenly.
  const auto a = simulate_strategy(HeterodyneStrategy{0.4}, prior, 20001, 3, 1);
  const auto b = simulate_strategy(HeterodyneStrategy{0.4}, prior, 20001, 3, 4);
  CHECK(a.value == b.value);
  CHECK(a.stderr_ == b.stderr_);

  ClassicalStrategy strategy{fock_basis_povm(16), {}};
  for (int n = 0; n < 16; ++n) {
    strategy.reconstructions.push_back(FockVector::basis_state(0, 16));
  }
  const auto c = simulate_strategy(strategy, prior, 9000, 5, 1);
  const auto d = simulate_strategy(strategy, prior, 9000, 5, 3);
  CHECK(c.value == d.value);
  CHECK(c.stderr_ == d.stderr_);
  CHECK(c.truncation_tail == d.truncation_tail);
}

TEST_CASE("single-sample simulation is deterministic") {
  const GaussianPrior prior(1.0);
  const auto a = simulate_strategy(HeterodyneStrategy{0.7}, prior, 1, 99);
  const auto b = simulate_strategy(HeterodyneStrategy{0.7}, prior, 1, 99);
  CHECK(a.value == b.value);
  CHECK(a.stderr_ == 0.0);
}

TEST_CASE("simulation flags an incomplete POVM at the first witness draw") {
  const GaussianPrior prior(1.0);
  const int d = 20;
  auto povm = fock_basis_povm(d);
  povm.vectors.erase(povm.vectors.begin());  // drop |0><0|
  ClassicalStrategy strategy{std::move(povm), {}};
  for (int n = 0; n + 1 < d; ++n) {
    strategy.reconstructions.push_back(FockVector::basis_state(0, d));
  }
  CHECK_THROWS_AS(simulate_strategy(strategy, prior, 1000, 3),
                  ContractViolation);
}

TEST_CASE("monte carlo consistency across 100 seeded repetitions") {
  const GaussianPrior prior(1.0);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto report =
        simulate_strategy(HeterodyneStrategy{0.5}, prior, 20000, 500 + seed);
    if (std::abs(report.value - 2.0 / 3.0) <= 3.0 * report.stderr_) ++hits;
  }
  CHECK(hits >= 99);
}

TEST_CASE("verdict classification bands") {
  CHECK(classify_value(0.7, 0.0, 2.0 / 3.0) == Verdict::kQuantum);
  CHECK(classify_value(0.5, 0.0, 0.5) == Verdict::kAtLimit);
  CHECK(classify_value(0.49, 0.0, 0.5) == Verdict::kBelowClassicalLimit);
  // 3 sigma resolution
  CHECK(classify_value(0.52, 0.01, 0.5) == Verdict::kAtLimit);
  CHECK(classify_value(0.54, 0.01, 0.5) == Verdict::kQuantum);
  CHECK(classify_value(0.46, 0.01, 0.5) == Verdict::kBelowClassicalLimit);
}

TEST_CASE("saturation witness: vacuum element meets the p=inf lemma bound") {
  for (const double lambda : {0.5, 1.0, 2.0}) {
    const GaussianPrior prior(lambda);
    const auto a = build_A_phi(FockVector::basis_state(0, 1), prior, 60);
    const double sup = schatten_p_norm(a, kInfiniteP);
    const double one = schatten_p_norm(a, 1.0);
    CHECK(std::abs(sup / one - benchmark_bound(prior)) < 1e-10);
  }
}
