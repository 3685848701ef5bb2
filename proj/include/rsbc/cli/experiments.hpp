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

// Experiment drivers. Column schemas:
//
//   proj_prob_sweep        alpha_sq,p0_exact,p0_approx_f,p0_approx_exp,p0_numeric
//   trace_distance_sweep   cat: alpha_sq,gamma_t,Gamma,p_proj,td_noisy,td_mitigated,td_formula,td_leading
//                          binomial: L,nbar,gamma_t,p_proj,td_noisy,td_mitigated
//   se_shot_study          seed,shots,mean,std_error,exact,cost_C
//   wigner_pair            x,p,w_noisy,w_mitigated
//   phase_noise_truncation L,fidelity_noisy,fidelity_mitigated,filter_weight
//   overhead_table         load,gamma_t,C_bound,C_exact

#pragma once

#include "rsbc/cli/config.hpp"
#include "rsbc/cli/csv.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rsbc::cli {

Table run_experiment(const ExperimentConfig& cfg);

struct RunResult {
  Table table;
  std::vector<std::pair<std::string, std::string>> meta;
};

/// Validates `kv`, runs it and assembles the metadata sidecar entries.
RunResult run_config(const KeyValues& kv);

/// Runs `kv` over `values` of `param`. A parameter the experiment sweeps
/// natively becomes sweep.param/sweep.values; any other scalar key is swept
/// in an outer loop and gets a leading column of its own.
RunResult run_sweep(const KeyValues& kv, const std::string& param, const std::vector<double>& values);

/// Writes the CSV and, next to it, the .meta sidecar.
void emit(const RunResult& result, const std::string& path);

/// %.12g.
std::string format_number(double v);

}  // namespace rsbc::cli
