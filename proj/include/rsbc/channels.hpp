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

#pragma once

#include "rsbc/fock.hpp"

#include <vector>

namespace rsbc {

enum class NoiseKind { kPhotonLoss, kDephasing };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kPhotonLoss;
  double gamma_t = 0.0;  // dimensionless γt
  int kraus_cutoff = 0;  // highest loss order kept; 0 selects the default rule

  static NoiseSpec photon_loss(double gamma_t, int kraus_cutoff = 0) {
    return {NoiseKind::kPhotonLoss, gamma_t, kraus_cutoff};
  }
  static NoiseSpec dephasing(double gamma_t) { return {NoiseKind::kDephasing, gamma_t, 0}; }

  void validate() const;
};

/// ceil(n γt + 10 sqrt(n γt) + 10), capped at D-1 where the Kraus set is exact.
int default_kraus_cutoff(double mean_photons, double gamma_t, int dim);

/// K_L = sqrt((1-e^{-γt})^L / L!) e^{-γt N/2} a^L for L = 0..L_max.
///
/// With kraus_cutoff = 0 the cutoff follows default_kraus_cutoff evaluated at
/// the top Fock level, so the set is complete on the whole truncated space.
/// Throws TruncationError when an explicit cutoff leaves a completeness
/// deficit above 1e-8 on any level.
std::vector<FockOperator> photon_loss_kraus(const NoiseSpec& spec, int dim);

/// ‖Σ K†K - I‖_max.
double completeness_deficit(const std::vector<FockOperator>& kraus);

/// Σ K rho K†, summed in Kraus-index order.
DensityMatrix apply_kraus(const DensityMatrix& rho, const std::vector<FockOperator>& kraus);

/// Photon loss or dephasing on a single-mode state.
DensityMatrix apply_noise(const DensityMatrix& rho, const NoiseSpec& spec);

/// Closed-form photon loss of Σ_m c_m |α_m>:
///   Σ c_m c*_m' exp(κ α_m α*_m') exp(-κ(|α_m|² + |α_m'|²)/2) |α_m e^{-γt/2}><α_m' e^{-γt/2}|
/// with κ = 1 - e^{-γt}. The result carries the input's norm; it is not
/// renormalized.
DensityMatrix loss_on_coherent_superposition(const std::vector<cplx>& coeffs, const std::vector<cplx>& alphas,
                                             double gamma_t, int dim);

/// Exact dephasing: rho_mn -> rho_mn exp(-γt (m-n)² / 2).
DensityMatrix dephasing_channel(const NoiseSpec& spec, const DensityMatrix& rho);

struct LindbladOptions {
  int steps = 2000;
  // Maximum elementwise gap allowed between the run and a half-step-count
  // rerun before the step count is declared too small.
  double halving_tolerance = 1e-6;
};

/// Fixed-step RK4 on dρ/dτ = LρL† - ½{L†L, ρ}, τ from 0 to γt.
DensityMatrix lindblad_integrator(const DensityMatrix& rho0, const FockOperator& jump, double gamma_t,
                                  const LindbladOptions& options = {});

}  // namespace rsbc
