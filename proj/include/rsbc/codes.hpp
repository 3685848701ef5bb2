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

// Codewords of rotation-symmetric bosonic codes: cat codes (superpositions of
// 2M rotated coherent states) and binomial codes (binomial-weighted Fock
// combs with spacing M).

#pragma once

#include "rsbc/fock.hpp"

#include <string_view>

namespace rsbc {

enum class CodeFamily { kCat, kBinomial };

enum class Logical { kZero, kOne };

struct CodeSpec {
  CodeFamily family = CodeFamily::kCat;
  int order = 1;       // rotation order M
  cplx alpha = 0.0;    // cat only
  int level = 0;       // binomial truncation L, binomial only
  int dim = 0;         // Fock cutoff D

  static CodeSpec cat(int order, cplx alpha, int dim = 0);
  static CodeSpec binomial(int order, int level, int dim = 0);

  // Mean photon number of the logical-zero codeword (|alpha|^2 for cat,
  // M(L+1)/2 for binomial).
  double mean_photons() const;
  // Throws std::invalid_argument when fields are inconsistent with the family.
  void validate() const;
};

struct LogicalCoeffs {
  cplx a = 1.0;
  cplx b = 0.0;

  static LogicalCoeffs zero() { return {1.0, 0.0}; }
  static LogicalCoeffs one() { return {0.0, 1.0}; }
  static LogicalCoeffs plus();
  static LogicalCoeffs minus();
  static LogicalCoeffs plus_i();
  static LogicalCoeffs magic_t();
  static LogicalCoeffs from_name(std::string_view name);

  bool is_normalized(double tol = tol::kNormalized) const;
};

struct CatCodeword {
  FockVector state;
  double norm_const = 0.0;  // C_0 or C_1
  // False when legs overlap more than |<a0|-a0>|^2 at |a0|^2 = 1.5; the
  // closed-form analytics assume distinguishable legs.
  bool distinguishable = true;
};

CatCodeword cat_codeword(const CodeSpec& spec, Logical which);
FockVector binomial_codeword(const CodeSpec& spec, Logical which);
// Dispatches on the family.
FockVector codeword(const CodeSpec& spec, Logical which);

/// a|0_L> + b|1_L>, renormalized.
FockVector logical_state(const CodeSpec& spec, const LogicalCoeffs& coeffs);

/// Cat only. The logical state with every leg shrunk to alpha e^{-gamma_t/2}
/// and the leg weights of the undamped state kept, i.e.
/// a sqrt(C0(t)/C0)|0_{alpha(t)}> + b sqrt(C1(t)/C1)|1_{alpha(t)}>, renormalized.
/// Equals logical_state on the damped spec for the two codewords.
FockVector damped_logical_state(const CodeSpec& spec, const LogicalCoeffs& coeffs, double gamma_t);

struct SupportCheck {
  bool passes = false;
  double leakage = 0.0;  // weight on levels n ≢ residue (mod 2M)
};

SupportCheck codeword_support_check(const FockVector& v, int order, int residue);
SupportCheck codeword_support_check(const DensityMatrix& rho, int order, int residue);

}  // namespace rsbc
