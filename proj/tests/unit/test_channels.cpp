// Copyright 2026 The rsbc Authors
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

#include "rsbc/analytics.hpp"
#include "rsbc/channels.hpp"
#include "rsbc/codes.hpp"
#include "rsbc/projectors.hpp"
#include "oracle/oracle_values.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace rsbc {
namespace {

using testing::max_abs;

DensityMatrix cat_zero(int order, double alpha_sq) {
  return DensityMatrix::pure(codeword(CodeSpec::cat(order, std::sqrt(alpha_sq)), Logical::kZero));
}

TEST(NoiseSpecType, Validation) {
  EXPECT_NO_THROW(NoiseSpec::photon_loss(0.0).validate());
  EXPECT_THROW(NoiseSpec::photon_loss(-0.1).validate(), std::invalid_argument);
  EXPECT_THROW(NoiseSpec::photon_loss(0.1, -1).validate(), std::invalid_argument);
  EXPECT_THROW(NoiseSpec::dephasing(std::nan("")).validate(), std::invalid_argument);
}

TEST(KrausCutoff, DefaultRule) {
  // ceil(nγt + 10 sqrt(nγt) + 10), capped at D - 1.
  EXPECT_EQ(default_kraus_cutoff(4.0, 0.1, 100), 17);
  EXPECT_EQ(default_kraus_cutoff(0.0, 0.1, 100), 10);
  EXPECT_EQ(default_kraus_cutoff(100.0, 1.0, 50), 49);
}

TEST(PhotonLossKraus, ZeroStrengthIsIdentity) {
  const auto k = photon_loss_kraus(NoiseSpec::photon_loss(0.0), 12);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(max_abs(k[0].matrix() - Matrix::Identity(12, 12)), 0.0);
}

TEST(PhotonLossKraus, MatchesLadderDefinition) {
  // Cutoff D - 1 keeps the full set, so completeness is exact.
  const int dim = 5;
  const double gt = 0.3;
  const auto kraus = photon_loss_kraus(NoiseSpec::photon_loss(gt, 4), dim);
  ASSERT_EQ(kraus.size(), 5u);
  const LadderOperators ops = ladder_and_number(dim);
  Matrix damp = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) damp(n, n) = std::exp(-gt * n / 2);
  Matrix al = Matrix::Identity(dim, dim);
  for (int l = 0; l <= 4; ++l) {
    const double pref = std::sqrt(std::pow(1 - std::exp(-gt), l) / std::tgamma(l + 1.0));
    EXPECT_LT(max_abs(kraus[l].matrix() - pref * damp * al), 1e-12) << l;
    al = al * ops.annihilation.matrix();
  }
}

TEST(PhotonLossKraus, Completeness) {
  for (double gt : {0.01, 0.1, 0.5}) {
    const auto kraus = photon_loss_kraus(NoiseSpec::photon_loss(gt), 60);
    EXPECT_LE(completeness_deficit(kraus), 1e-8) << gt;
  }
}

TEST(PhotonLossKraus, InsufficientCutoffIsReported) {
  EXPECT_THROW(photon_loss_kraus(NoiseSpec::photon_loss(0.5, 2), 40), TruncationError);
  EXPECT_THROW(photon_loss_kraus(NoiseSpec::dephasing(0.1), 10), std::invalid_argument);
}

TEST(PhotonLoss, CoherentStaysCoherent) {
  const int dim = 40;
  const cplx alpha(1.3, -0.8);
  const double gt = 0.2;
  const DensityMatrix out = apply_noise(DensityMatrix::pure(coherent_state(alpha, dim)), NoiseSpec::photon_loss(gt));
  const DensityMatrix want = DensityMatrix::pure(coherent_state(alpha * std::exp(-gt / 2), dim));
  EXPECT_LT(max_abs(out.matrix() - want.matrix()), 1e-8);
}

TEST(PhotonLoss, ProjectionProbabilityMatchesClosedForm) {
  const DensityMatrix out = apply_noise(cat_zero(2, 4.0), NoiseSpec::photon_loss(0.1));
  const double p = expectation(out, rotation_projector(2, 0, out.dim())).real();
  EXPECT_NEAR(p, p0_exact(CatNoiseContext{2.0, 2, 0.1}), 1e-6);
  EXPECT_NEAR(p, oracle::kP0NumericM2A4G01, 1e-10);
}

TEST(PhotonLoss, FastPathMatchesDenseKraus) {
  std::mt19937_64 rng(21);
  const DensityMatrix rho = testing::random_state(24, rng);
  const NoiseSpec spec = NoiseSpec::photon_loss(0.4);
  const DensityMatrix fast = apply_noise(rho, spec);
  const DensityMatrix dense = apply_kraus(rho, photon_loss_kraus(spec, 24));
  EXPECT_LT(max_abs(fast.matrix() - dense.matrix()), 1e-13);
}

TEST(PhotonLoss, CompletelyPositiveTracePreserving) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = testing::random_state(20, rng);
    for (const NoiseSpec& spec : {NoiseSpec::photon_loss(0.3), NoiseSpec::dephasing(0.7)}) {
      const DensityMatrix out = apply_noise(rho, spec);
      EXPECT_NEAR(out.trace().real(), 1.0, 1e-8);
      EXPECT_GE(out.min_eigenvalue(), -1e-8);
      EXPECT_TRUE(out.is_hermitian());
    }
  }
}

TEST(PhotonLoss, Composes) {
  std::mt19937_64 rng(29);
  const DensityMatrix rho = testing::random_state(18, rng);
  const DensityMatrix two = apply_noise(apply_noise(rho, NoiseSpec::photon_loss(0.15)), NoiseSpec::photon_loss(0.25));
  const DensityMatrix one = apply_noise(rho, NoiseSpec::photon_loss(0.4));
  EXPECT_LE(max_abs(two.matrix() - one.matrix()), 1e-8);
}

TEST(CoherentSuperposition, SingleTermAtZeroStrength) {
  const DensityMatrix out = loss_on_coherent_superposition({1.0}, {cplx(1.0, 0.5)}, 0.0, 30);
  const DensityMatrix in = DensityMatrix::pure(coherent_state(cplx(1.0, 0.5), 30));
  EXPECT_LT(max_abs(out.matrix() - in.matrix()), 1e-14);
}

TEST(CoherentSuperposition, CatMatchesKrausPath) {
  const int m = 2;
  const double alpha = 2.0;
  const CodeSpec spec = CodeSpec::cat(m, alpha);
  const CatCodeword z = cat_codeword(spec, Logical::kZero);
  std::vector<cplx> coeffs;
  std::vector<cplx> alphas;
  for (int k = 0; k < 2 * m; ++k) {
    coeffs.push_back(1.0 / std::sqrt(z.norm_const));
    alphas.push_back(std::polar(alpha, kPi * k / m));
  }
  const DensityMatrix closed = loss_on_coherent_superposition(coeffs, alphas, 0.1, spec.dim);
  const DensityMatrix kraus = apply_noise(DensityMatrix::pure(z.state), NoiseSpec::photon_loss(0.1));
  EXPECT_LE(max_abs(closed.matrix() - kraus.matrix()), 1e-8);
}

TEST(CoherentSuperposition, CrossLegDampingFactor) {
  // For legs m, m' of the M=2 cat the |a_m(t)><a_m'(t)| term carries
  // exp(Γ (e^{iπ(m-m')/2} - 1)).
  const double alpha = 2.0;
  const double gt = 0.1;
  const double gamma = alpha * alpha * (1 - std::exp(-gt));
  const int dim = 40;
  for (int dm = 1; dm < 4; ++dm) {
    const cplx a0 = alpha;
    const cplx a1 = std::polar(alpha, kPi * dm / 2);
    const DensityMatrix pair = loss_on_coherent_superposition({1.0, 1.0}, {a0, a1}, gt, dim);
    const Vector l0 = coherent_state(a0 * std::exp(-gt / 2), dim).amps;
    const Vector l1 = coherent_state(a1 * std::exp(-gt / 2), dim).amps;
    const cplx f = std::exp(gamma * (std::polar(1.0, -kPi * dm / 2) - 1.0));
    const Matrix want = l0 * l0.adjoint() + l1 * l1.adjoint() + f * l0 * l1.adjoint() + std::conj(f) * l1 * l0.adjoint();
    EXPECT_LE(max_abs(pair.matrix() - want), 1e-12) << dm;
  }
}

TEST(CoherentSuperposition, Errors) {
  EXPECT_THROW(loss_on_coherent_superposition({1.0}, {1.0, 2.0}, 0.1, 20), std::invalid_argument);
  EXPECT_THROW(loss_on_coherent_superposition({1.0}, {5.0}, 0.0, 20), TruncationError);
}

TEST(Dephasing, DiagonalUntouched) {
  Vector d(5);
  d << 0.1, 0.2, 0.3, 0.15, 0.25;
  const DensityMatrix rho(Matrix(d.asDiagonal()));
  EXPECT_EQ(max_abs(dephasing_channel(NoiseSpec::dephasing(0.8), rho).matrix() - rho.matrix()), 0.0);
}

TEST(Dephasing, ZeroStrengthIsIdentity) {
  std::mt19937_64 rng(31);
  const DensityMatrix rho = testing::random_state(7, rng);
  EXPECT_EQ(max_abs(dephasing_channel(NoiseSpec::dephasing(0.0), rho).matrix() - rho.matrix()), 0.0);
  EXPECT_THROW(dephasing_channel(NoiseSpec::photon_loss(0.1), rho), std::invalid_argument);
}

TEST(Dephasing, ElementScalingAndOdeCrossCheck) {
  const int dim = 18;
  const DensityMatrix in = DensityMatrix::pure(coherent_state(1.2, dim));
  const DensityMatrix out = dephasing_channel(NoiseSpec::dephasing(0.1), in);
  EXPECT_NEAR(std::abs(out.matrix()(0, 2) - in.matrix()(0, 2) * std::exp(-0.2)), 0.0, 1e-15);
  const DensityMatrix ode = lindblad_integrator(in, ladder_and_number(dim).number, 0.1);
  EXPECT_LE(max_abs(ode.matrix() - out.matrix()), 1e-6);
}

TEST(Dephasing, CommutesWithRotationProjector) {
  std::mt19937_64 rng(37);
  const DensityMatrix rho = testing::random_state(20, rng);
  const NoiseSpec spec = NoiseSpec::dephasing(0.3);
  for (int m = 1; m <= 3; ++m) {
    const FockOperator p = rotation_projector(m, 0, 20);
    const Matrix a = apply_noise(DensityMatrix(p.matrix() * rho.matrix() * p.matrix()), spec).matrix();
    const Matrix dephased = apply_noise(rho, spec).matrix();
    const Matrix b = p.matrix() * dephased * p.matrix();
    EXPECT_LE(max_abs(a - b), 1e-10);
  }
}

TEST(Lindblad, ZeroStrength) {
  std::mt19937_64 rng(41);
  const DensityMatrix rho = testing::random_state(6, rng);
  const DensityMatrix out = lindblad_integrator(rho, ladder_and_number(6).annihilation, 0.0);
  EXPECT_EQ(max_abs(out.matrix() - rho.matrix()), 0.0);
}

TEST(Lindblad, LossOracle) {
  const int dim = 30;
  const DensityMatrix rho = DensityMatrix::pure(coherent_state(1.5, dim));
  const DensityMatrix ode = lindblad_integrator(rho, ladder_and_number(dim).annihilation, 0.1);
  const DensityMatrix exact = apply_noise(rho, NoiseSpec::photon_loss(0.1));
  EXPECT_LE(max_abs(ode.matrix() - exact.matrix()), 1e-6);
  EXPECT_LE(std::abs(ode.trace().real() - 1.0), 1e-7);
}

TEST(Lindblad, DephasingOracleOnCatPlus) {
  const CodeSpec spec = CodeSpec::cat(2, 1.6);
  const DensityMatrix rho = DensityMatrix::pure(logical_state(spec, LogicalCoeffs::plus()));
  const DensityMatrix ode = lindblad_integrator(rho, ladder_and_number(spec.dim).number, 0.1);
  const DensityMatrix exact = dephasing_channel(NoiseSpec::dephasing(0.1), rho);
  EXPECT_LE(max_abs(ode.matrix() - exact.matrix()), 1e-6);
  EXPECT_LE(std::abs(ode.trace().real() - 1.0), 1e-7);
}

TEST(Lindblad, StepGuards) {
  const int dim = 30;
  const DensityMatrix rho = DensityMatrix::pure(logical_state(CodeSpec::cat(1, 2.0, dim), LogicalCoeffs::plus()));
  const FockOperator n = ladder_and_number(dim).number;
  EXPECT_THROW(lindblad_integrator(rho, n, 0.1, LindbladOptions{50, 1e-6}), std::invalid_argument);
  // Stiff N^2 generator with too few steps: the halving comparison trips.
  EXPECT_THROW(lindblad_integrator(rho, n, 5.0, LindbladOptions{100, 1e-6}), NumericalError);
}

}  // namespace
}  // namespace rsbc
