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

// Rotation-symmetry projectors and the truncated number-translation filter.
//
//   P_2M^(l) = Σ_n |2nM + l><2nM + l| = (1/2M) Σ_k e^{-iπlk/M} Z_M^k
//   P_2M^(c) = P_2M^(0) + P_2M^(M)   = (1/M)  Σ_k R_M^k

#pragma once

#include "rsbc/fock.hpp"

namespace rsbc {

enum class ProjectorType { kFockResidue, kCodeSpace, kTruncatedX };

struct ProjectorKind {
  ProjectorType type = ProjectorType::kFockResidue;
  int order = 1;    // M
  int residue = 0;  // l, fock_residue only
  int level = 0;    // L, truncated_x only

  static ProjectorKind fock_residue(int order, int residue) {
    return {ProjectorType::kFockResidue, order, residue, 0};
  }
  static ProjectorKind code_space(int order) { return {ProjectorType::kCodeSpace, order, 0, 0}; }
  static ProjectorKind truncated_x(int order, int level) { return {ProjectorType::kTruncatedX, order, 0, level}; }

  void validate() const;
  // Runtime construction (Fock-mask form for the rotation projectors).
  FockOperator build(int dim) const;
};

/// Fock mask on n ≡ l (mod 2M). Throws std::invalid_argument unless 0 <= l < 2M.
FockOperator rotation_projector(int order, int residue, int dim);
/// Same projector assembled from the 2M powers of Z_M.
FockOperator rotation_projector_phase_sum(int order, int residue, int dim);

/// Fock mask on n ≡ 0 (mod M).
FockOperator code_projector(int order, int dim);
/// Same projector assembled from the M powers of R_M.
FockOperator code_projector_rotation_sum(int order, int dim);

struct Projected {
  DensityMatrix state;
  double prob = 0.0;
};

/// rho_S = P rho P / Tr[P rho]. P must be a Hermitian projector.
/// Throws ProjectionError when Tr[P rho] <= 1e-12.
Projected project_state(const DensityMatrix& rho, const FockOperator& p);

/// X_N = Σ_m |m><m+M| on D levels.
FockOperator number_translation(int order, int dim);

/// A = (1/(L+1)) Σ_{k=0}^{L} X_N^{2k}. Requires D > 2LM so the highest
/// shift still maps some level into the space.
FockOperator truncated_x_projector(int order, int level, int dim);

/// A rho A† / Tr[A rho A†] for a general (non-Hermitian) filter A.
/// Throws ProjectionError when the trace is <= 1e-12.
Projected apply_filter(const DensityMatrix& rho, const FockOperator& a);

}  // namespace rsbc
