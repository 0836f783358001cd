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

#include "cvbench/errors.hpp"
#include "cvbench/fock.hpp"
#include "cvbench/rng.hpp"

using namespace cvbench;

namespace {

// Test-only Hermitian matrix with reproducible entries.
Eigen::MatrixXcd random_hermitian(int d, std::uint64_t seed) {
  Eigen::MatrixXcd g(d, d);
  std::uint64_t idx = 0;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      g(r, c) = standard_complex_gaussian(seed, 0, idx++);
    }
  }
  return 0.5 * (g + g.adjoint().eval());
}

}  // namespace

TEST_CASE("coherent vacuum is the Fock ground state with zero tail") {
  const auto coh = coherent_vector(0.0, 4);
  CHECK(coh.tail_mass == 0.0);
  CHECK(coh.state.coeff(0) == Complex(1.0, 0.0));
  for (int n = 1; n < 4; ++n) CHECK(coh.state.coeff(n) == Complex(0.0, 0.0));
}

TEST_CASE("coherent tail at alpha=1, d=30 matches the direct-sum oracle") {
  // Oracle: tail = 1 - e^-1 sum_{n<30} 1/n!, summed directly.
  double partial = 0.0, term = 1.0;
  for (int n = 0; n < 30; ++n) {
    if (n > 0) term /= n;
    partial += term;
  }
  const double oracle = 1.0 - std::exp(-1.0) * partial;

  const auto coh = coherent_vector(1.0, 30);
  CHECK(coh.tail_mass < 1e-12);
  CHECK(std::abs(coh.tail_mass - oracle) < 1e-15);
}

TEST_CASE("coherent self-overlap is 1 within the tail tolerance") {
  const Complex alpha(0.5, 0.5);
  const auto coh = coherent_vector(alpha, 40);
  CHECK(std::abs(overlap(coh.state, coh.state) - 1.0) <=
        coh.tail_mass + 1e-14);
}

TEST_CASE("coherent tail mass decreases monotonically in d") {
  const Complex alpha(1.3, -0.7);
  double last = 1.0;
  for (int d = 2; d <= 40; d += 2) {
    const double tail = coherent_vector(alpha, d).tail_mass;
    CHECK(tail <= last + 1e-16);
    last = tail;
  }
}

TEST_CASE("log-space expansion stays finite at large amplitude and d = 256") {
  // |alpha|^2 = 100: naive alpha^n/sqrt(n!) overflows long before n = 256.
  const auto coh = coherent_vector(10.0, 256);
  CHECK(coh.tail_mass < 1e-12);
  CHECK(std::isfinite(coh.state.squared_norm()));
  CHECK(std::abs(coh.state.squared_norm() - 1.0) < 1e-12);
  // Peak coefficient near n = |alpha|^2: |c_100|^2 ~ Poisson(100) pmf at 100.
  const double peak = std::norm(coh.state.coeff(100));
  CHECK(peak == doctest::Approx(0.0398).epsilon(0.01));
}

TEST_CASE("checked coherent construction reports the tail it rejects") {
  CHECK_THROWS_AS(coherent_vector_checked(2.0, 6, 1e-12), TruncationError);
  try {
    coherent_vector_checked(2.0, 6, 1e-12);
  } catch (const TruncationError& e) {
    CHECK(e.tail_mass() == coherent_vector(2.0, 6).tail_mass);
  }
  CHECK_NOTHROW(coherent_vector_checked(2.0, recommended_dim(2.0), 1e-12));
}

TEST_CASE("overlap basics") {
  const auto vac = FockVector::basis_state(0, 4);
  CHECK(overlap(vac, vac) == Complex(1.0, 0.0));
  CHECK(overlap(FockVector::basis_state(0, 4), FockVector::basis_state(1, 4)) ==
        Complex(0.0, 0.0));
  CHECK_THROWS_AS(overlap(vac, FockVector::basis_state(0, 5)),
                  std::invalid_argument);
}

TEST_CASE("truncated coherent overlap matches the closed form") {
  const Complex alpha(0.3, 0.0);
  const Complex beta(-0.2, 0.4);
  const auto a = coherent_vector(alpha, 40).state;
  const auto b = coherent_vector(beta, 40).state;
  const Complex closed = coherent_overlap(alpha, beta);
  CHECK(std::abs(overlap(a, b) - closed) < 1e-10);
}

TEST_CASE("coherent overlap magnitude follows exp(-|a-b|^2)") {
  const Complex pairs[][2] = {
      {{0.4, 0.2}, {-0.3, 0.5}},
      {{1.0, 0.0}, {0.0, 1.0}},
      {{0.9, -0.8}, {0.2, 0.1}},
  };
  for (const auto& pair : pairs) {
    const auto a = coherent_vector(pair[0], 48);
    const auto b = coherent_vector(pair[1], 48);
    REQUIRE(a.tail_mass < 1e-12);
    REQUIRE(b.tail_mass < 1e-12);
    const double got = std::norm(overlap(a.state, b.state));
    const double expected = std::exp(-std::norm(pair[0] - pair[1]));
    CHECK(std::abs(got - expected) < 1e-9);
  }
}

TEST_CASE("hermitian construction rejects non-hermitian input") {
  Eigen::MatrixXcd m(2, 2);
  m << Complex(1, 0), Complex(0.5, 0.5), Complex(0.5, 0.49), Complex(2, 0);
  CHECK_THROWS_AS(HermitianOperator{m}, ContractViolation);
}

TEST_CASE("eig of identity") {
  const auto spec = eig_hermitian(HermitianOperator::identity(3));
  for (int k = 0; k < 3; ++k) {
    CHECK(spec.eigenvalues(k) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("eig of the vacuum moment diagonal picks 1/3 at lambda=1") {
  // diag(lambda/(2+lambda)^{m+1}) at lambda = 1, d = 5: top entry 1/3.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(5, 5);
  for (int k = 0; k < 5; ++k) m(k, k) = std::pow(3.0, -(k + 1));
  const auto spec = eig_hermitian(HermitianOperator{m});
  CHECK(spec.eigenvalues(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // Descending order
  for (int k = 1; k < 5; ++k) {
    CHECK(spec.eigenvalues(k) <= spec.eigenvalues(k - 1));
  }
}

TEST_CASE("eig invariants on a random hermitian matrix") {
  const int d = 64;
  const HermitianOperator h(random_hermitian(d, 17));
  const auto spec = eig_hermitian(h);

  CHECK(std::abs(h.trace() - spec.eigenvalues.sum()) < 1e-10 * d);

  const Eigen::MatrixXcd gram =
      spec.eigenvectors.adjoint() * spec.eigenvectors;
  CHECK((gram - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() <
        1e-10);

  const Eigen::MatrixXcd rebuilt =
      spec.eigenvectors *
      spec.eigenvalues.cast<Complex>().asDiagonal() *
      spec.eigenvectors.adjoint();
  const double scale = spec.eigenvalues.cwiseAbs().maxCoeff();
  CHECK((rebuilt - h.entries()).cwiseAbs().maxCoeff() < 1e-10 * scale);
}

TEST_CASE("schatten norms on simple spectra") {
  const auto id4 = HermitianOperator::identity(4);
  CHECK(schatten_p_norm(id4, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(schatten_p_norm(id4, kInfiniteP) ==
        doctest::Approx(1.0).epsilon(1e-14));

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(0, 0) = 0.6;
  m(1, 1) = 0.3;
  m(2, 2) = 0.1;
  CHECK(schatten_p_norm(HermitianOperator{m}, 2.0) ==
        doctest::Approx(std::sqrt(0.46)).epsilon(1e-14));

  CHECK_THROWS_AS(schatten_p_norm(id4, 0.5), ContractViolation);

  Eigen::MatrixXcd neg = Eigen::MatrixXcd::Identity(2, 2);
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(schatten_p_norm(HermitianOperator{neg}, 2.0),
                  ContractViolation);
}

TEST_CASE("p-norms decrease in p on PSD operators") {
  Eigen::MatrixXcd g = random_hermitian(12, 23);
  const HermitianOperator h(Eigen::MatrixXcd(g * g.adjoint()));  // PSD
  const double ps[] = {1.0, 1.5, 2.0, 3.0, 5.0, 8.0, kInfiniteP};
  double last = schatten_p_norm(h, ps[0]);
  for (std::size_t i = 1; i < std::size(ps); ++i) {
    const double now = schatten_p_norm(h, ps[i]);
    CHECK(now <= last + 1e-12);
    last = now;
  }
}

TEST_CASE("displacement acts on vacuum as the coherent state") {
  const Complex beta(0.6, -0.4);
  const int d = 32;
  const Eigen::MatrixXcd disp = displacement_operator(beta, d);
  const Eigen::VectorXcd from_vacuum = disp.col(0);
  const auto expected = coherent_vector(beta, d).state.coeffs();
  CHECK((from_vacuum - expected).cwiseAbs().maxCoeff() < 1e-10);

  // Near-unitary on the low block.
  const Eigen::MatrixXcd gram = disp.adjoint() * disp;
  CHECK(std::abs(gram(0, 0).real() - 1.0) < 1e-10);
  CHECK(std::abs(gram(1, 1).real() - 1.0) < 1e-8);
}
