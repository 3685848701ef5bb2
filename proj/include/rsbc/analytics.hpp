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

// Closed forms for cat codes under photon loss. Everything here is computed
// without touching a Fock matrix, so the numerical pipeline can be checked
// against it.
//
//   f_M(x) = Σ_l x^{Ml} / (Ml)!          g_M(x) = Σ_l (-1)^l x^{Ml} / (Ml)!
//   Γ(t)   = |α|² (1 - e^{-γt})          α(t)   = α e^{-γt/2}

#pragma once

#include "rsbc/codes.hpp"

namespace rsbc {

enum class CombKind { kF, kG };

struct CombSeries {
  int order = 1;
  CombKind kind = CombKind::kF;
  int cutoff_terms = 0;  // number of summed terms, 0 when evaluated in closed form
  double value = 0.0;
};

/// f_M(x) or g_M(x). f requires x >= 0.
///
/// f is summed term by term until the next term drops below 1e-16 of the
/// partial sum. g alternates and cancels catastrophically for large x, so it
/// is evaluated through the roots of -1: g_M(x) = (1/M) Σ_j exp(x ζ_j),
/// ζ_j = e^{iπ(2j+1)/M}. Throws std::overflow_error when f_M(x) itself
/// is not representable; use comb_series_scaled there.
CombSeries comb_series(CombKind kind, int order, double x);

/// e^{-x} f_M(x) or e^{-x} g_M(x). Above x = 300 this uses the roots-of-unity
/// identity e^{-x} f_M(x) = (1/M) Σ_j e^{x(ω_j - 1)} and never overflows.
double comb_series_scaled(CombKind kind, int order, double x);

struct CatNoiseContext {
  cplx alpha = 0.0;
  int order = 1;
  double gamma_t = 0.0;

  double gamma() const;          // Γ(t)
  cplx alpha_t() const;          // α(t)
  void validate() const;
};

/// Norm² of Σ_{k<2M} |α e^{iπk/M}>: 4M² e^{-|α|²} f_2M(|α|²).
double cat_normalization(int order, double alpha_sq);

/// p0 = f_2M(Γ) f_2M(|α(t)|²) / f_2M(|α|²), the weight of the lossy logical
/// zero on the residue-0 comb.
double p0_exact(const CatNoiseContext& ctx);

struct P0Approximations {
  double approx_f = 0.0;    // e^{-Γ} f_2M(Γ)
  double approx_exp = 0.0;  // e^{-Γ}
  double rel_gap_f = 0.0;   // (approx - exact) / exact
  double rel_gap_exp = 0.0;
};

P0Approximations p0_approximations(const CatNoiseContext& ctx);

struct FlaggedValue {
  double value = 0.0;
  bool distinguishable = true;  // |α|² above the leg-distinguishability threshold
};

/// Code-space projection probability of a general logical state,
/// p_ψ ≈ e^{-Γ} f_M(Γ).
FlaggedValue p_psi_approx(const CatNoiseContext& ctx);

struct TraceDistanceForm {
  double exact_form = 0.0;     // (M_c/N_c)(1 - g_M(Γ)/f_M(Γ))
  double leading_order = 0.0;  // (2 M_c/N_c) Γ^M / M!
  double mc_over_nc = 0.0;
};

/// Leg coefficients with equal normalizations N0 = N1 = 2M:
/// c_m = a/√N0 + (-1)^m b/√N1.
std::pair<cplx, cplx> leg_coefficients(const LogicalCoeffs& coeffs, int order);

TraceDistanceForm trace_distance_formula(const CatNoiseContext& ctx, const LogicalCoeffs& coeffs);

/// |α_M|² = α0² / sin²(π / 2M).
double distinguishability_threshold(int order, double alpha0_sq = 1.5);

/// C = exp(2 n̄ γt N_QEM).
double overhead_bound(double mean_photons, double gamma_t, int n_qem);

}  // namespace rsbc
