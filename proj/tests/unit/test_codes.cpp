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

#include <gtest/gtest.h>

#include <cmath>

namespace rsbc {
namespace {

std::vector<CodeSpec> sample_specs() {
  return {CodeSpec::cat(1, 1.5), CodeSpec::cat(2, 2.0), CodeSpec::cat(3, cplx(1.2, 1.9)), CodeSpec::cat(4, 3.3),
          CodeSpec::binomial(2, 1), CodeSpec::binomial(2, 4), CodeSpec::binomial(3, 3), CodeSpec::binomial(1, 6)};
}

TEST(CatCodeword, ParityCatHasEvenSupport) {
  const CodeSpec spec = CodeSpec::cat(1, 1.7, 40);
  const CatCodeword z = cat_codeword(spec, Logical::kZero);
  EXPECT_TRUE(z.state.is_normalized());
  for (int n = 1; n < 40; n += 2) EXPECT_LT(std::abs(z.state.amps(n)), 1e-10);
  // (|a> + |-a>)/sqrt(C0), C0 = 2 + 2 e^{-2|a|^2}.
  EXPECT_NEAR(z.norm_const, 2.0 + 2.0 * std::exp(-2.0 * 1.7 * 1.7), 1e-10);
}

TEST(CatCodeword, NormConstApproachesTwoM) {
  const CatCodeword z = cat_codeword(CodeSpec::cat(2, std::sqrt(20.0)), Logical::kZero);
  EXPECT_LE(std::abs(z.norm_const - 4.0) / 4.0, 1e-3);
  EXPECT_NEAR(z.norm_const, oracle::kCatNormM2A20, 1e-8);
}

TEST(CatCodeword, NormConstsAtSmallAlpha) {
  const CodeSpec spec = CodeSpec::cat(2, 2.0);
  EXPECT_NEAR(cat_codeword(spec, Logical::kZero).norm_const, oracle::kCatNormZeroM2A4, 1e-9);
  EXPECT_NEAR(cat_codeword(spec, Logical::kOne).norm_const, oracle::kCatNormOneM2A4, 1e-9);
}

TEST(CatCodeword, CombSupport) {
  const CodeSpec spec = CodeSpec::cat(2, 2.0, 40);
  const FockVector z = cat_codeword(spec, Logical::kZero).state;
  const FockVector o = cat_codeword(spec, Logical::kOne).state;
  EXPECT_LT(std::abs(z.amps(2)), 1e-10);
  EXPECT_TRUE(codeword_support_check(z, 2, 0).passes);
  EXPECT_FALSE(codeword_support_check(o, 2, 0).passes);
  EXPECT_TRUE(codeword_support_check(o, 2, 2).passes);
}

TEST(CatCodeword, FlagsIndistinguishableLegs) {
  EXPECT_FALSE(cat_codeword(CodeSpec::cat(2, 1.0), Logical::kZero).distinguishable);
  EXPECT_TRUE(cat_codeword(CodeSpec::cat(2, 2.0), Logical::kZero).distinguishable);
}

TEST(CatCodeword, Errors) {
  EXPECT_THROW(cat_codeword(CodeSpec::cat(0, 2.0, 40), Logical::kZero), std::invalid_argument);
  EXPECT_THROW(cat_codeword(CodeSpec::cat(2, 3.0, 12), Logical::kZero), TruncationError);
  EXPECT_THROW(cat_codeword(CodeSpec::binomial(2, 2), Logical::kZero), std::invalid_argument);
}

TEST(BinomialCodeword, SmallestCode) {
  const CodeSpec spec = CodeSpec::binomial(2, 1);
  const FockVector z = binomial_codeword(spec, Logical::kZero);
  const FockVector o = binomial_codeword(spec, Logical::kOne);
  EXPECT_EQ(spec.dim, 5);
  EXPECT_NEAR(z.amps(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(z.amps(4).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(z.amps.norm(), 1.0, 1e-15);
  EXPECT_NEAR(o.amps(2).real(), 1.0, 1e-15);
  EXPECT_NEAR(o.amps.norm(), 1.0, 1e-15);
}

TEST(BinomialCodeword, NormAndOrthogonality) {
  const CodeSpec spec = CodeSpec::binomial(2, 4);
  const FockVector z = binomial_codeword(spec, Logical::kZero);
  const FockVector o = binomial_codeword(spec, Logical::kOne);
  EXPECT_NEAR(z.norm_sq(), 1.0, 1e-14);
  EXPECT_NEAR(o.norm_sq(), 1.0, 1e-14);
  EXPECT_EQ(z.amps.dot(o.amps), cplx(0.0));
}

TEST(BinomialCodeword, MeanPhotonNumber) {
  for (int m = 1; m <= 4; ++m) {
    for (int level = 1; level <= 8; ++level) {
      const CodeSpec spec = CodeSpec::binomial(m, level);
      for (Logical which : {Logical::kZero, Logical::kOne}) {
        const FockVector v = binomial_codeword(spec, which);
        double mean = 0.0;
        for (int n = 0; n < v.dim(); ++n) mean += n * std::norm(v.amps(n));
        EXPECT_NEAR(mean, spec.mean_photons(), 1e-10) << m << " " << level;
      }
    }
  }
}

TEST(BinomialCodeword, RejectsSmallTruncation) {
  EXPECT_THROW(binomial_codeword(CodeSpec::binomial(2, 3, 8), Logical::kZero), TruncationError);
  EXPECT_THROW(binomial_codeword(CodeSpec::binomial(2, 0, 8), Logical::kZero), std::invalid_argument);
}

TEST(LogicalState, Constructors) {
  const CodeSpec spec = CodeSpec::cat(2, 2.0);
  EXPECT_LT((logical_state(spec, LogicalCoeffs::zero()).amps - codeword(spec, Logical::kZero).amps).norm(), 1e-14);
  EXPECT_TRUE(LogicalCoeffs::plus().is_normalized());
  EXPECT_TRUE(LogicalCoeffs::minus().is_normalized());
  EXPECT_TRUE(LogicalCoeffs::plus_i().is_normalized());
  EXPECT_TRUE(LogicalCoeffs::magic_t().is_normalized());
  EXPECT_NEAR(std::arg(LogicalCoeffs::magic_t().b), kPi / 4, 1e-15);
  EXPECT_EQ(LogicalCoeffs::from_name("plus_i").b, LogicalCoeffs::plus_i().b);
  EXPECT_THROW(LogicalCoeffs::from_name("bogus"), std::invalid_argument);
}

TEST(LogicalState, PlusHasSupportOnMultiplesOfM) {
  const int m = 3;
  const CodeSpec spec = CodeSpec::cat(m, 2.5);
  const FockVector plus = logical_state(spec, LogicalCoeffs::plus());
  double off = 0.0;
  double on = 0.0;
  for (int n = 0; n < plus.dim(); ++n) (n % m == 0 ? on : off) += std::norm(plus.amps(n));
  EXPECT_LT(off, 1e-20);
  EXPECT_NEAR(on, 1.0, 1e-12);
  // Both residues 0 and M mod 2M are populated.
  EXPECT_GT(std::norm(plus.amps(0)), 1e-3);
  EXPECT_GT(std::norm(plus.amps(3)), 1e-3);
}

TEST(LogicalState, MagicStateLegWeights) {
  const CatNoiseContext ctx{2.0, 2, 0.0};
  const TraceDistanceForm f = trace_distance_formula(ctx, LogicalCoeffs::magic_t());
  EXPECT_NEAR(f.mc_over_nc, 1.0 / (2.0 * std::sqrt(2.0)), 1e-6);

  // With the true codeword norms C0 != C1 at alpha^2 = 4 the ratio moves in
  // second order of (C1 - C0)/C0; quantify that offset.
  const CodeSpec spec = CodeSpec::cat(2, 2.0);
  const double x = 1.0 / cat_codeword(spec, Logical::kZero).norm_const;
  const double y = 1.0 / cat_codeword(spec, Logical::kOne).norm_const;
  const double constructed = std::sqrt(x * x + y * y) / (2.0 * (x + y));
  EXPECT_NEAR(constructed, oracle::kMcNcConstructedTM2A4, 1e-9);
  EXPECT_NEAR(constructed - f.mc_over_nc, 1.01e-4, 2e-6);
}

TEST(DampedLogicalState, CodewordsMatchRebuild) {
  const CodeSpec spec = CodeSpec::cat(2, 2.0);
  CodeSpec damped = spec;
  damped.alpha = 2.0 * std::exp(-0.05);
  for (Logical which : {Logical::kZero, Logical::kOne}) {
    const LogicalCoeffs c = which == Logical::kZero ? LogicalCoeffs::zero() : LogicalCoeffs::one();
    const FockVector got = damped_logical_state(spec, c, 0.1);
    EXPECT_LT((got.amps - codeword(damped, which).amps).norm(), 1e-12);
  }
  EXPECT_THROW(damped_logical_state(CodeSpec::binomial(2, 2), LogicalCoeffs::zero(), 0.1), std::invalid_argument);
}

TEST(DampedLogicalState, LegsDampLikeCoherentStates) {
  // Legs are coherent states, so the damped superposition is what loss on the
  // leg-basis closed form produces with the cross-leg decoherence removed; its
  // overlap with the T state rebuilt at alpha(t) is close to but not exactly 1.
  const CodeSpec spec = CodeSpec::cat(2, 2.0);
  CodeSpec damped = spec;
  damped.alpha = 2.0 * std::exp(-0.005);
  const FockVector a = damped_logical_state(spec, LogicalCoeffs::magic_t(), 0.01);
  const FockVector b = logical_state(damped, LogicalCoeffs::magic_t());
  EXPECT_TRUE(a.is_normalized());
  const double overlap = std::norm(a.amps.dot(b.amps));
  EXPECT_LT(overlap, 1.0 - 1e-8);
  EXPECT_GT(overlap, 0.999);
}

TEST(SupportCheck, NoisyLeakageMatchesProjectorTrace) {
  const CodeSpec spec = CodeSpec::cat(2, 2.0);
  const DensityMatrix noisy =
      apply_noise(DensityMatrix::pure(codeword(spec, Logical::kZero)), NoiseSpec::photon_loss(0.1));
  const SupportCheck c = codeword_support_check(noisy, 2, 0);
  EXPECT_FALSE(c.passes);
  EXPECT_GT(c.leakage, 0.0);
  EXPECT_NEAR(c.leakage, 1.0 - expectation(noisy, rotation_projector(2, 0, spec.dim)).real(), 1e-10);
  EXPECT_NEAR(c.leakage, oracle::kLeakageNoisyM2A4G01, 1e-9);
  EXPECT_THROW(codeword_support_check(noisy, 2, 4), std::invalid_argument);
}

TEST(CodeProperties, CodewordsOrthogonal) {
  for (const CodeSpec& spec : sample_specs()) {
    const cplx ov = codeword(spec, Logical::kZero).amps.dot(codeword(spec, Logical::kOne).amps);
    EXPECT_LT(std::abs(ov), 1e-10);
  }
}

TEST(CodeProperties, LogicalZEigenvalues) {
  for (const CodeSpec& spec : sample_specs()) {
    const FockOperator z = logical_z(spec.order, spec.dim);
    const FockVector zero = codeword(spec, Logical::kZero);
    const FockVector one = codeword(spec, Logical::kOne);
    EXPECT_LT((z.apply(zero).amps - zero.amps).norm(), 1e-8);
    EXPECT_LT((z.apply(one).amps + one.amps).norm(), 1e-8);
  }
}

TEST(CodeProperties, RotationInvariance) {
  const LogicalCoeffs states[] = {LogicalCoeffs::zero(), LogicalCoeffs::one(), LogicalCoeffs::plus(),
                                  LogicalCoeffs::minus(), LogicalCoeffs::plus_i(), LogicalCoeffs::magic_t(),
                                  LogicalCoeffs{cplx(0.6, 0.0), cplx(0.0, 0.8)}};
  for (const CodeSpec& spec : sample_specs()) {
    const FockOperator r = rotation_symmetry(spec.order, spec.dim);
    for (const LogicalCoeffs& c : states) {
      const FockVector v = logical_state(spec, c);
      EXPECT_LT((r.apply(v).amps - v.amps).norm(), 1e-8);
    }
  }
}

TEST(CodeProperties, LargePhotonZeroLooksLikeDualPlus) {
  // |0_{M}> approaches |+_{2M}> as |alpha| grows; only the trend is checked.
  auto overlap = [](double alpha) {
    const FockVector z = codeword(CodeSpec::cat(1, alpha), Logical::kZero);
    const FockVector p = logical_state(CodeSpec::cat(2, alpha), LogicalCoeffs::plus());
    return std::norm(z.amps.dot(p.amps));
  };
  const double small = overlap(1.5);
  const double large = overlap(4.0);
  EXPECT_GT(large, small);
  EXPECT_GT(large, 0.999);
}

}  // namespace
}  // namespace rsbc
