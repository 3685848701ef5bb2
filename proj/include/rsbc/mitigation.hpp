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

// Symmetry expansion for rotation-symmetric codes.
//
// State preparation: noisy logical zeros are virtually projected with
// P_2M^(0) and resource states with P_2M^(c), through the generalized process
// rho -> U rho V† realized by a Hadamard test. Pre-measurement: the ratio
// Tr[(Z_M P^(c))^⊗N rho] / Tr[(P^(c))^⊗N rho]. Each has an exact path and a
// shot-level path where every run is reduced to one ±1 ancilla outcome with
// P(+1) = (1 + Re c) / 2, c being the exact circuit amplitude.

#pragma once

#include "rsbc/codes.hpp"
#include "rsbc/fock.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rsbc {

/// Tr[O U rho V†].
cplx generalized_expectation(const DensityMatrix& rho, const FockOperator& u, const FockOperator& v,
                             const FockOperator& o);

/// Ancilla ⊗ modes after preparing |+> ⊗ rho and applying V controlled on
/// ancilla |0> and U controlled on ancilla |1>. The ancilla is subsystem 0.
/// <X⊗O> + i<Y⊗O> = Tr[O U rho V†].
DensityMatrix hadamard_test_state(const DensityMatrix& rho, const FockOperator& u, const FockOperator& v);

struct SEPlan {
  std::vector<CodeSpec> zero_modes;      // projected with P_2M^(0)
  std::vector<CodeSpec> resource_modes;  // projected with P_2M^(c)
  // Computation over all modes, zero modes first. Identity when unset.
  std::optional<FockOperator> computation;
  // One unitary factor per mode in the same order. Empty selects Z_M on
  // every mode.
  std::vector<FockOperator> observable;

  static constexpr int kMaxModes = 2;

  int num_modes() const { return static_cast<int>(zero_modes.size() + resource_modes.size()); }
  std::vector<CodeSpec> modes() const;
  std::vector<int> dims() const;
  /// Number of observable factors that are not the identity.
  int measured_modes() const;
  FockOperator observable_operator() const;
  void validate() const;
};

struct SEExact {
  double value = 0.0;
  double imag_residual = 0.0;     // |Im| of the trace, zero for Hermitian-on-code observables
  std::vector<double> proj_probs; // p_i then q_j
  double cost_c = 1.0;
};

/// Tr[O U_C (⊗rho_i^S ⊗ sigma_j^S) U_C†] with exact projections.
/// Throws ProjectionError when any probability is <= 1e-12.
SEExact se_state_prep_exact(const SEPlan& plan, const std::vector<DensityMatrix>& noisy_states);

enum class ProbabilityMode { kExact, kSampled };

struct SamplingOptions {
  std::int64_t shots = 100000;
  std::uint64_t seed = 0;
  int threads = 1;  // 0 picks the hardware concurrency
  bool keep_log = false;
  ProbabilityMode probabilities = ProbabilityMode::kExact;
  // Hadamard-test shots used to estimate ∏p∏q in sampled mode; 0 reuses `shots`.
  std::int64_t prob_shots = 0;
};

struct ShotRecord {
  std::vector<int> indices;  // (k, k', l, l') or m, flattened per mode
  cplx amplitude = 0.0;      // c
  int outcome = 1;           // ancilla X outcome
};

struct SEEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t shots = 0;
  std::vector<double> proj_probs;
  double cost_c = 1.0;
  // Ratio components: numerator and denominator means with their standard
  // errors. For state preparation with exact probabilities the denominator is
  // ∏p∏q and carries no error.
  double numerator = 0.0;
  double numerator_error = 0.0;
  double denominator = 1.0;
  double denominator_error = 0.0;
  std::vector<ShotRecord> log;
};

/// Shot-level state-preparation SE. Shot i draws k_i, k_i' uniform in [0, 2M)
/// per zero mode and l_j, l_j' uniform in [0, M) per resource mode.
/// Results depend only on the seed, never on the thread count.
SEEstimate se_state_prep_sampled(const SEPlan& plan, const std::vector<DensityMatrix>& noisy_states,
                                 const SamplingOptions& options);

struct SEMeasurementExact {
  double value = 0.0;
  double p_c = 0.0;
};

/// Tr[(Z_M P^(c))^⊗N rho] / Tr[(P^(c))^⊗N rho] for rho over N equal modes.
SEMeasurementExact se_measurement_exact(const DensityMatrix& rho, int order, int measured_modes);

/// Ratio estimator for se_measurement_exact. Even shots sample the numerator
/// terms ⊗Z_M^{2m+1}, odd shots the denominator terms ⊗Z_M^{2m}.
/// Throws NumericalError when the denominator estimate is within three of its
/// standard errors of zero.
SEEstimate se_measurement_sampled(const DensityMatrix& rho, int order, int measured_modes,
                                  const SamplingOptions& options);

struct VirtualState {
  double value = 0.0;
  double p_phi = 0.0;
};

/// Tr[O P^(0) rho P^(0)] / p_Phi with p_Phi = Tr[P^(0) rho].
VirtualState virtual_code_state(const DensityMatrix& primitive, int order, const FockOperator& o);

/// C = (∏p)^-2.
double sampling_cost(const std::vector<double>& proj_probs);

/// Expected runs per accepted sample when verifying by post-selection, (∏p)^-1.
double postselection_cost(const std::vector<double>& proj_probs);

}  // namespace rsbc
