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

// Experiment configuration: flat `key = value` lines with dotted namespaces.
// Blank lines and lines starting with '#' are ignored.

#pragma once

#include "rsbc/channels.hpp"
#include "rsbc/codes.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rsbc::cli {

/// Malformed, unknown or out-of-range configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

enum class Experiment {
  kProjProbSweep,
  kTraceDistanceSweep,
  kSeShotStudy,
  kWignerPair,
  kPhaseNoiseTruncation,
  kOverheadTable,
};

std::string_view experiment_name(Experiment e);

/// Throws ConfigError naming the line on syntax errors or duplicate keys.
KeyValues parse_config_text(std::string_view text);
/// Throws ConfigError when the file cannot be read.
KeyValues load_config(const std::string& path);

/// Every key the runner understands.
const std::vector<std::string>& known_keys();

struct Diagnostics {
  std::vector<std::string> errors;
  std::vector<std::string> notes;
  int derived_dim = 0;

  bool clean() const { return errors.empty(); }
};

/// Unknown keys, missing required keys, range violations, and the derived
/// Fock truncation.
Diagnostics validate_config(const KeyValues& kv);

struct ExperimentConfig {
  Experiment experiment = Experiment::kProjProbSweep;
  CodeFamily family = CodeFamily::kCat;
  int order = 2;
  double alpha_sq = 0.0;
  int level = 1;
  int dim = 0;  // resolved: explicit code.dim or the truncation rule
  NoiseSpec noise;
  std::string state = "zero";
  std::string sweep_param;
  std::vector<double> sweep_values;
  std::int64_t shots = 100000;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string output;

  int wigner_points = 101;
  double wigner_extent = 0.0;  // 0 selects √2|α| + 4
  int se_seeds = 20;
  std::string se_variant = "state_prep";
  std::string se_probabilities = "exact";
  int n_qem = 1;

  CodeSpec code_spec(double alpha_sq_value, int level_value) const;
};

/// Validates and converts. Throws ConfigError listing every problem.
ExperimentConfig to_config(const KeyValues& kv);

/// Sorted `key=value` lines joined by '\n'.
std::string canonical_text(const KeyValues& kv);
/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// Comma-separated finite numbers. Throws ConfigError otherwise.
std::vector<double> parse_number_list(std::string_view text);

}  // namespace rsbc::cli
