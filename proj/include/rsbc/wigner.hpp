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

// Wigner function W(β) = (2/π) Tr[rho D(β) Π D†(β)], β = (x + ip)/√2,
// Π = (-1)^N. Vacuum peaks at 2/π and |α> is centred on (√2 Re α, √2 Im α).
// With this scaling ∫W d²β = 1, so a sum over an (x, p) grid needs the factor
// ½ ΔxΔp.

#pragma once

#include "rsbc/fock.hpp"

#include <vector>

namespace rsbc {

enum class WignerMethod {
  kLaguerre,  // closed-form displaced-parity matrix elements
  kExpm,      // displacement by matrix exponential in an enlarged space
};

struct WignerOptions {
  WignerMethod method = WignerMethod::kLaguerre;
  int threads = 1;  // 0 picks the hardware concurrency
};

struct WignerGrid {
  std::vector<double> xs;
  std::vector<double> ps;
  Eigen::MatrixXd values;  // values(i, j) = W(xs[i], ps[j])

  double dx() const;
  double dp() const;
  /// ½ Σ W ΔxΔp, which approximates ∫W d²β.
  double integral() const;
  double min_value() const { return values.minCoeff(); }
};

/// Evenly spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int count);

/// W at a single phase-space point.
double wigner_point(const DensityMatrix& rho, double x, double p, WignerMethod method = WignerMethod::kLaguerre);

/// W over xs × ps. Throws TruncationError when the expm method would need a
/// working space above 1024 levels for the requested extent.
WignerGrid wigner_grid(const DensityMatrix& rho, const std::vector<double>& xs, const std::vector<double>& ps,
                       const WignerOptions& options = {});

}  // namespace rsbc
