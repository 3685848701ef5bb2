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

#include "rsbc/codes.hpp"

#include "rsbc/analytics.hpp"

#include <cmath>
#include <string>

namespace rsbc {

CodeSpec CodeSpec::cat(int order, cplx alpha, int dim) {
  CodeSpec s;
  s.family = CodeFamily::kCat;
  s.order = order;
  s.alpha = alpha;
  s.dim = dim > 0 ? dim : default_truncation(std::norm(alpha));
  return s;
}

CodeSpec CodeSpec::binomial(int order, int level, int dim) {
  CodeSpec s;
  s.family = CodeFamily::kBinomial;
  s.order = order;
  s.level = level;
  s.dim = dim > 0 ? dim : (level + 1) * order + 1;
  return s;
}

double CodeSpec::mean_photons() const {
  return family == CodeFamily::kCat ? std::norm(alpha) : 0.5 * order * (level + 1);
}

void CodeSpec::validate() const {
  if (order < 1) throw std::invalid_argument("CodeSpec: rotation order M must be >= 1");
  if (dim < 1) throw std::invalid_argument("CodeSpec: dim must be >= 1");
  if (family == CodeFamily::kCat) {
    if (level != 0) throw std::invalid_argument("CodeSpec: cat codes take alpha, not a binomial level");
  } else {
    if (alpha != cplx(0.0, 0.0)) throw std::invalid_argument("CodeSpec: binomial codes take L, not alpha");
    if (level < 1) throw std::invalid_argument("CodeSpec: binomial level L must be >= 1");
    if (dim <= (level + 1) * order) {
      throw TruncationError("CodeSpec: binomial code needs D > (L+1)M = " + std::to_string((level + 1) * order));
    }
  }
}

LogicalCoeffs LogicalCoeffs::plus() { return {M_SQRT1_2, M_SQRT1_2}; }
LogicalCoeffs LogicalCoeffs::minus() { return {M_SQRT1_2, -M_SQRT1_2}; }
LogicalCoeffs LogicalCoeffs::plus_i() { return {M_SQRT1_2, cplx(0.0, M_SQRT1_2)}; }
LogicalCoeffs LogicalCoeffs::magic_t() { return {M_SQRT1_2, std::polar(M_SQRT1_2, kPi / 4.0)}; }

LogicalCoeffs LogicalCoeffs::from_name(std::string_view name) {
  if (name == "zero") return zero();
  if (name == "one") return one();
  if (name == "plus") return plus();
  if (name == "minus") return minus();
  if (name == "plus_i") return plus_i();
  if (name == "magic_t" || name == "t") return magic_t();
  throw std::invalid_argument("unknown logical state '" + std::string(name) + "'");
}

bool LogicalCoeffs::is_normalized(double tol) const { return std::abs(std::norm(a) + std::norm(b) - 1.0) <= tol; }

CatCodeword cat_codeword(const CodeSpec& spec, Logical which) {
  if (spec.family != CodeFamily::kCat) throw std::invalid_argument("cat_codeword: spec is not a cat code");
  spec.validate();
  const int m = spec.order;
  const FockVector primitive = coherent_state(spec.alpha, spec.dim);

  // Σ_k (±1)^k exp(i k pi N / M) |alpha>, summed literally over the 2M legs.
  Vector acc = Vector::Zero(spec.dim);
  FockVector leg = primitive;
  const FockOperator step = logical_z(m, spec.dim);
  for (int k = 0; k < 2 * m; ++k) {
    const double sign = (which == Logical::kOne && k % 2 == 1) ? -1.0 : 1.0;
    acc += sign * leg.amps;
    leg = step.apply(leg);
  }
  const double c = acc.squaredNorm();
  if (c <= tol::kProbabilityFloor) {
    throw ProjectionError("cat_codeword: codeword vanishes for this alpha (no support on the residue class)");
  }
  CatCodeword out;
  out.state = FockVector{acc / std::sqrt(c), primitive.leakage};
  out.norm_const = c;
  out.distinguishable = std::norm(spec.alpha) >= distinguishability_threshold(m);
  return out;
}

FockVector binomial_codeword(const CodeSpec& spec, Logical which) {
  if (spec.family != CodeFamily::kBinomial) throw std::invalid_argument("binomial_codeword: spec is not binomial");
  spec.validate();
  const int big_l = spec.level;
  Vector amps = Vector::Zero(spec.dim);
  const int parity = which == Logical::kZero ? 0 : 1;
  for (int m = parity; m <= big_l + 1; m += 2) {
    // sqrt(binom(L+1, m) / 2^L) via lgamma to stay exact-ish for large L.
    const double log_binom = std::lgamma(big_l + 2.0) - std::lgamma(m + 1.0) - std::lgamma(big_l + 2.0 - m);
    amps(m * spec.order) = std::exp(0.5 * (log_binom - big_l * std::log(2.0)));
  }
  return FockVector{amps, 0.0};
}

FockVector codeword(const CodeSpec& spec, Logical which) {
  return spec.family == CodeFamily::kCat ? cat_codeword(spec, which).state : binomial_codeword(spec, which);
}

FockVector logical_state(const CodeSpec& spec, const LogicalCoeffs& coeffs) {
  const FockVector zero = codeword(spec, Logical::kZero);
  const FockVector one = codeword(spec, Logical::kOne);
  FockVector out{coeffs.a * zero.amps + coeffs.b * one.amps, std::max(zero.leakage, one.leakage)};
  return out.normalized();
}

FockVector damped_logical_state(const CodeSpec& spec, const LogicalCoeffs& coeffs, double gamma_t) {
  if (spec.family != CodeFamily::kCat) throw std::invalid_argument("damped_logical_state: spec is not a cat code");
  if (!(gamma_t >= 0.0)) throw std::invalid_argument("damped_logical_state: gamma_t must be >= 0");
  CodeSpec damped = spec;
  damped.alpha = spec.alpha * std::exp(-gamma_t / 2.0);
  const CatCodeword z0 = cat_codeword(spec, Logical::kZero);
  const CatCodeword o0 = cat_codeword(spec, Logical::kOne);
  const CatCodeword zt = cat_codeword(damped, Logical::kZero);
  const CatCodeword ot = cat_codeword(damped, Logical::kOne);
  const cplx a = coeffs.a * std::sqrt(zt.norm_const / z0.norm_const);
  const cplx b = coeffs.b * std::sqrt(ot.norm_const / o0.norm_const);
  FockVector out{a * zt.state.amps + b * ot.state.amps, std::max(zt.state.leakage, ot.state.leakage)};
  return out.normalized();
}

SupportCheck codeword_support_check(const FockVector& v, int order, int residue) {
  if (order < 1 || residue < 0 || residue >= 2 * order) {
    throw std::invalid_argument("codeword_support_check: residue must lie in [0, 2M)");
  }
  double leak = 0.0;
  for (int n = 0; n < v.dim(); ++n) {
    if (n % (2 * order) != residue) leak += std::norm(v.amps(n));
  }
  return SupportCheck{leak <= 1e-10, leak};
}

SupportCheck codeword_support_check(const DensityMatrix& rho, int order, int residue) {
  if (order < 1 || residue < 0 || residue >= 2 * order) {
    throw std::invalid_argument("codeword_support_check: residue must lie in [0, 2M)");
  }
  if (rho.num_subsystems() != 1) throw std::invalid_argument("codeword_support_check: single-mode state expected");
  double leak = 0.0;
  for (int n = 0; n < rho.dim(); ++n) {
    if (n % (2 * order) != residue) leak += rho.matrix()(n, n).real();
  }
  return SupportCheck{leak <= 1e-10, leak};
}

}  // namespace rsbc
