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

#include <cmath>
#include <stdexcept>

namespace rsbc {

namespace {

constexpr double kScaledSwitch = 300.0;

void check_order(int order) {
  if (order < 1) throw std::invalid_argument("comb series: order M must be >= 1");
}

// (1/M) Σ_j exp(x (z_j - shift)) over z_j = e^{iπ(2j + offset)/M}; offset 0
// gives the M-th roots of unity (f), offset 1 the roots of -1 (g).
double roots_sum(int order, double x, int offset, double shift) {
  double acc = 0.0;
  for (int j = 0; j < order; ++j) {
    const cplx z = std::polar(1.0, kPi * (2.0 * j + offset) / order);
    acc += std::exp(x * (z - shift)).real();
  }
  return acc / order;
}

double f_direct(int order, double x, int* terms) {
  // term_l = x^{Ml} / (Ml)!, advanced by multiplying M consecutive ratios.
  double term = 1.0;
  double sum = 1.0;
  int l = 0;
  if (x == 0.0) {
    *terms = 1;
    return 1.0;
  }
  for (;;) {
    for (int j = 1; j <= order; ++j) term *= x / (static_cast<double>(order) * l + j);
    ++l;
    sum += term;
    if (!std::isfinite(sum)) throw std::overflow_error("comb_series: f_M(x) overflows; use comb_series_scaled");
    // Terms grow until Ml ~ x; only stop once they are decreasing.
    if (static_cast<double>(order) * l > x && term < 1e-16 * sum) break;
  }
  *terms = l + 1;
  return sum;
}

}  // namespace

CombSeries comb_series(CombKind kind, int order, double x) {
  check_order(order);
  if (!std::isfinite(x)) throw std::invalid_argument("comb_series: x must be finite");
  CombSeries out;
  out.order = order;
  out.kind = kind;
  if (kind == CombKind::kF) {
    if (x < 0.0) throw std::invalid_argument("comb_series: f_M requires x >= 0");
    out.value = f_direct(order, x, &out.cutoff_terms);
  } else {
    out.value = roots_sum(order, x, 1, 0.0);
    if (!std::isfinite(out.value)) throw std::overflow_error("comb_series: g_M(x) overflows");
  }
  return out;
}

double comb_series_scaled(CombKind kind, int order, double x) {
  check_order(order);
  if (kind == CombKind::kF && x < 0.0) throw std::invalid_argument("comb_series_scaled: f_M requires x >= 0");
  if (kind == CombKind::kG || x > kScaledSwitch) return roots_sum(order, x, kind == CombKind::kF ? 0 : 1, 1.0);
  return std::exp(-x) * comb_series(kind, order, x).value;
}

double CatNoiseContext::gamma() const { return std::norm(alpha) * (1.0 - std::exp(-gamma_t)); }

cplx CatNoiseContext::alpha_t() const { return alpha * std::exp(-0.5 * gamma_t); }

void CatNoiseContext::validate() const {
  if (order < 1) throw std::invalid_argument("CatNoiseContext: order must be >= 1");
  if (!(gamma_t >= 0.0) || !std::isfinite(gamma_t)) throw std::invalid_argument("CatNoiseContext: gamma_t must be >= 0");
}

double cat_normalization(int order, double alpha_sq) {
  return 4.0 * order * order * comb_series_scaled(CombKind::kF, 2 * order, alpha_sq);
}

double p0_exact(const CatNoiseContext& ctx) {
  ctx.validate();
  const int two_m = 2 * ctx.order;
  const double a2 = std::norm(ctx.alpha);
  const double at2 = std::norm(ctx.alpha_t());
  // Γ + |α(t)|² = |α|², so the exponential scalings cancel exactly.
  return comb_series_scaled(CombKind::kF, two_m, ctx.gamma()) * comb_series_scaled(CombKind::kF, two_m, at2) /
         comb_series_scaled(CombKind::kF, two_m, a2);
}

P0Approximations p0_approximations(const CatNoiseContext& ctx) {
  ctx.validate();
  P0Approximations out;
  const double g = ctx.gamma();
  out.approx_f = comb_series_scaled(CombKind::kF, 2 * ctx.order, g);
  out.approx_exp = std::exp(-g);
  const double exact = p0_exact(ctx);
  out.rel_gap_f = (out.approx_f - exact) / exact;
  out.rel_gap_exp = (out.approx_exp - exact) / exact;
  return out;
}

FlaggedValue p_psi_approx(const CatNoiseContext& ctx) {
  ctx.validate();
  return FlaggedValue{comb_series_scaled(CombKind::kF, ctx.order, ctx.gamma()),
                      std::norm(ctx.alpha) >= distinguishability_threshold(ctx.order)};
}

std::pair<cplx, cplx> leg_coefficients(const LogicalCoeffs& coeffs, int order) {
  const double n = std::sqrt(2.0 * order);
  return {coeffs.a / n + coeffs.b / n, coeffs.a / n - coeffs.b / n};
}

TraceDistanceForm trace_distance_formula(const CatNoiseContext& ctx, const LogicalCoeffs& coeffs) {
  ctx.validate();
  const auto [c0, c1] = leg_coefficients(coeffs, ctx.order);
  const double nc = std::norm(c0) + std::norm(c1);
  if (nc <= 0.0) throw std::invalid_argument("trace_distance_formula: zero logical coefficients");
  TraceDistanceForm out;
  out.mc_over_nc = std::abs(c0) * std::abs(c1) / nc;
  const double g = ctx.gamma();
  const double ratio = comb_series_scaled(CombKind::kG, ctx.order, g) / comb_series_scaled(CombKind::kF, ctx.order, g);
  out.exact_form = out.mc_over_nc * (1.0 - ratio);
  out.leading_order = 2.0 * out.mc_over_nc * std::exp(ctx.order * std::log(g) - std::lgamma(ctx.order + 1.0));
  if (g == 0.0) out.leading_order = 0.0;
  return out;
}

double distinguishability_threshold(int order, double alpha0_sq) {
  if (order < 1) throw std::invalid_argument("distinguishability_threshold: order must be >= 1");
  const double s = std::sin(kPi / (2.0 * order));
  return alpha0_sq / (s * s);
}

double overhead_bound(double mean_photons, double gamma_t, int n_qem) {
  if (mean_photons < 0.0 || gamma_t < 0.0 || n_qem < 0) {
    throw std::invalid_argument("overhead_bound: arguments must be >= 0");
  }
  return std::exp(2.0 * mean_photons * gamma_t * n_qem);
}

}  // namespace rsbc
