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

#include "rsbc/cli/experiments.hpp"

#include "rsbc/analytics.hpp"
#include "rsbc/channels.hpp"
#include "rsbc/mitigation.hpp"
#include "rsbc/projectors.hpp"
#include "rsbc/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rsbc::cli {

namespace {

// Projector used to mitigate a logical state: the residue comb for the two
// codewords, the code space otherwise.
FockOperator mitigation_projector(const std::string& state, int order, int dim) {
  if (state == "zero") return rotation_projector(order, 0, dim);
  if (state == "one") return rotation_projector(order, order, dim);
  return code_projector(order, dim);
}

bool perfect_projection(const std::string& state) { return state == "zero" || state == "one"; }

DensityMatrix prepare(const CodeSpec& spec, const std::string& state) {
  return DensityMatrix::pure(logical_state(spec, LogicalCoeffs::from_name(state)));
}

Table proj_prob_sweep(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"alpha_sq", "p0_exact", "p0_approx_f", "p0_approx_exp", "p0_numeric"};
  for (double a2 : cfg.sweep_values) {
    const CodeSpec spec = cfg.code_spec(a2, cfg.level);
    const CatNoiseContext ctx{std::sqrt(a2), cfg.order, cfg.noise.gamma_t};
    const P0Approximations approx = p0_approximations(ctx);
    const DensityMatrix noisy = apply_noise(DensityMatrix::pure(codeword(spec, Logical::kZero)), cfg.noise);
    const double numeric = expectation(noisy, rotation_projector(cfg.order, 0, spec.dim)).real();
    t.add_row({a2, p0_exact(ctx), approx.approx_f, approx.approx_exp, numeric});
  }
  return t;
}

Table trace_distance_sweep(const ExperimentConfig& cfg) {
  Table t;
  const bool cat = cfg.family == CodeFamily::kCat;
  if (cat) {
    t.columns = {"alpha_sq", "gamma_t", "Gamma", "p_proj", "td_noisy", "td_mitigated", "td_formula", "td_leading"};
  } else {
    t.columns = {"L", "nbar", "gamma_t", "p_proj", "td_noisy", "td_mitigated"};
  }
  const LogicalCoeffs coeffs = LogicalCoeffs::from_name(cfg.state);
  for (double v : cfg.sweep_values) {
    const int level = cat ? cfg.level : static_cast<int>(v);
    const CodeSpec spec = cfg.code_spec(cat ? v : 0.0, level);
    const DensityMatrix ideal = prepare(spec, cfg.state);
    const DensityMatrix noisy = apply_noise(ideal, cfg.noise);
    const Projected mitigated = project_state(noisy, mitigation_projector(cfg.state, cfg.order, spec.dim));
    if (cat) {
      // Reference: the same leg superposition with every leg damped to α(t).
      const CatNoiseContext ctx{std::sqrt(v), cfg.order, cfg.noise.gamma_t};
      const DensityMatrix ref = DensityMatrix::pure(damped_logical_state(spec, coeffs, cfg.noise.gamma_t));
      double formula = 0.0;
      double leading = 0.0;
      if (!perfect_projection(cfg.state)) {
        const TraceDistanceForm f = trace_distance_formula(ctx, coeffs);
        formula = f.exact_form;
        leading = f.leading_order;
      }
      t.add_row({v, cfg.noise.gamma_t, ctx.gamma(), mitigated.prob, trace_distance(noisy, ref),
                 trace_distance(mitigated.state, ref), formula, leading});
    } else {
      t.add_row({static_cast<std::int64_t>(level), spec.mean_photons(), cfg.noise.gamma_t, mitigated.prob,
                 trace_distance(noisy, ideal), trace_distance(mitigated.state, ideal)});
    }
  }
  return t;
}

Table se_shot_study(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"seed", "shots", "mean", "std_error", "exact", "cost_C"};
  const CodeSpec spec = cfg.code_spec(cfg.alpha_sq, cfg.level);
  const DensityMatrix noisy = apply_noise(prepare(spec, cfg.state), cfg.noise);
  SamplingOptions opts;
  opts.shots = cfg.shots;
  opts.threads = cfg.threads;
  opts.probabilities = cfg.se_probabilities == "sampled" ? ProbabilityMode::kSampled : ProbabilityMode::kExact;

  double exact = 0.0;
  SEPlan plan;
  const bool prep = cfg.se_variant == "state_prep";
  if (prep) {
    plan.zero_modes = {spec};
    exact = se_state_prep_exact(plan, {noisy}).value;
  } else {
    exact = se_measurement_exact(noisy, cfg.order, 1).value;
  }
  for (int s = 0; s < cfg.se_seeds; ++s) {
    opts.seed = cfg.seed + static_cast<std::uint64_t>(s);
    const SEEstimate est = prep ? se_state_prep_sampled(plan, {noisy}, opts) : se_measurement_sampled(noisy, cfg.order, 1, opts);
    t.add_row({static_cast<std::int64_t>(opts.seed), static_cast<std::int64_t>(est.shots), est.mean, est.std_error,
               exact, est.cost_c});
  }
  return t;
}

Table wigner_pair(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"x", "p", "w_noisy", "w_mitigated"};
  const CodeSpec spec = cfg.code_spec(cfg.alpha_sq, cfg.level);
  const DensityMatrix noisy = apply_noise(prepare(spec, cfg.state), cfg.noise);
  const Projected mitigated = project_state(noisy, mitigation_projector(cfg.state, cfg.order, spec.dim));
  const double extent = cfg.wigner_extent > 0.0 ? cfg.wigner_extent : std::sqrt(2.0 * cfg.alpha_sq) + 4.0;
  const std::vector<double> axis = linspace(-extent, extent, cfg.wigner_points);
  WignerOptions opts;
  opts.threads = cfg.threads;
  const WignerGrid wn = wigner_grid(noisy, axis, axis, opts);
  const WignerGrid wm = wigner_grid(mitigated.state, axis, axis, opts);
  for (std::size_t i = 0; i < axis.size(); ++i) {
    for (std::size_t j = 0; j < axis.size(); ++j) t.add_row({axis[i], axis[j], wn.values(i, j), wm.values(i, j)});
  }
  return t;
}

Table phase_noise_truncation(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"L", "fidelity_noisy", "fidelity_mitigated", "filter_weight"};
  const CodeSpec spec = cfg.code_spec(cfg.alpha_sq, cfg.level);
  const FockVector ideal = logical_state(spec, LogicalCoeffs::from_name(cfg.state));
  const DensityMatrix noisy = apply_noise(DensityMatrix::pure(ideal), cfg.noise);
  const double f_noisy = fidelity(noisy, ideal);
  for (double v : cfg.sweep_values) {
    const int level = static_cast<int>(v);
    const Projected filtered = apply_filter(noisy, truncated_x_projector(cfg.order, level, spec.dim));
    t.add_row({static_cast<std::int64_t>(level), f_noisy, fidelity(filtered.state, ideal), filtered.prob});
  }
  return t;
}

Table overhead_table(const ExperimentConfig& cfg) {
  Table t;
  t.columns = {"load", "gamma_t", "C_bound", "C_exact"};
  const CodeSpec spec = cfg.code_spec(cfg.alpha_sq, cfg.level);
  const double nbar = spec.mean_photons();
  if (nbar <= 0.0) throw std::invalid_argument("overhead_table: the code needs a positive mean photon number");
  for (double load : cfg.sweep_values) {
    const double gt = load / (nbar * cfg.n_qem);
    double p = 1.0;
    if (cfg.family == CodeFamily::kCat) {
      p = p0_exact(CatNoiseContext{std::sqrt(cfg.alpha_sq), cfg.order, gt});
    } else {
      NoiseSpec noise = NoiseSpec::photon_loss(gt, cfg.noise.kraus_cutoff);
      const DensityMatrix noisy = apply_noise(DensityMatrix::pure(codeword(spec, Logical::kZero)), noise);
      p = expectation(noisy, rotation_projector(cfg.order, 0, spec.dim)).real();
    }
    t.add_row({load, gt, overhead_bound(nbar, gt, cfg.n_qem), sampling_cost(std::vector<double>(cfg.n_qem, p))});
  }
  return t;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Keys that do not change the numbers are left out of the hash.
std::uint64_t result_hash(KeyValues kv) {
  kv.erase("threads");
  kv.erase("output");
  return fnv1a64(canonical_text(kv));
}

std::vector<std::pair<std::string, std::string>> meta_for(const KeyValues& kv, const ExperimentConfig& cfg,
                                                          const Table& t) {
  return {
      {"experiment", std::string(experiment_name(cfg.experiment))},
      {"config_hash", hex64(result_hash(kv))},
      {"seed", std::to_string(cfg.seed)},
      {"shots", std::to_string(cfg.shots)},
      {"dim", std::to_string(cfg.dim)},
      {"rows", std::to_string(t.rows.size())},
      {"columns", join(t.columns, ';')},
  };
}

}  // namespace

std::string format_number(double v) { return format_cell(Cell{v}); }

Table run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::kProjProbSweep:
      return proj_prob_sweep(cfg);
    case Experiment::kTraceDistanceSweep:
      return trace_distance_sweep(cfg);
    case Experiment::kSeShotStudy:
      return se_shot_study(cfg);
    case Experiment::kWignerPair:
      return wigner_pair(cfg);
    case Experiment::kPhaseNoiseTruncation:
      return phase_noise_truncation(cfg);
    case Experiment::kOverheadTable:
      return overhead_table(cfg);
  }
  throw std::logic_error("run_experiment: unhandled experiment");
}

RunResult run_config(const KeyValues& kv) {
  const ExperimentConfig cfg = to_config(kv);
  RunResult out;
  out.table = run_experiment(cfg);
  out.meta = meta_for(kv, cfg, out.table);
  return out;
}

RunResult run_sweep(const KeyValues& kv, const std::string& param, const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("sweep: --values must list at least one number");
  const ExperimentConfig probe = to_config(kv);
  KeyValues base = kv;
  std::string list;
  for (double v : values) list += (list.empty() ? "" : ",") + format_number(v);

  const bool native = (probe.experiment == Experiment::kProjProbSweep && param == "code.alpha_sq") ||
                      (probe.experiment == Experiment::kTraceDistanceSweep &&
                       param == (probe.family == CodeFamily::kCat ? "code.alpha_sq" : "code.L")) ||
                      (probe.experiment == Experiment::kPhaseNoiseTruncation && param == "truncation.L") ||
                      (probe.experiment == Experiment::kOverheadTable && param == "load");
  if (native) {
    base["sweep.param"] = param;
    base["sweep.values"] = list;
    return run_config(base);
  }

  const auto& known = known_keys();
  if (std::find(known.begin(), known.end(), param) == known.end() || param.rfind("sweep.", 0) == 0 ||
      param == "experiment" || param == "output") {
    throw ConfigError("sweep: '" + param + "' cannot be swept");
  }
  RunResult out;
  for (double v : values) {
    base[param] = format_number(v);
    const ExperimentConfig cfg = to_config(base);
    Table t = run_experiment(cfg);
    if (out.table.columns.empty()) {
      out.table.columns = {param};
      out.table.columns.insert(out.table.columns.end(), t.columns.begin(), t.columns.end());
    }
    for (auto& row : t.rows) {
      std::vector<Cell> r{v};
      r.insert(r.end(), std::make_move_iterator(row.begin()), std::make_move_iterator(row.end()));
      out.table.add_row(std::move(r));
    }
  }
  KeyValues hashed = kv;
  hashed["sweep.outer"] = param + "=" + list;
  out.meta = meta_for(hashed, to_config(base), out.table);
  return out;
}

void emit(const RunResult& result, const std::string& path) {
  write_csv_file(result.table, path);
  write_meta_file(result.meta, meta_path_for(path));
}

}  // namespace rsbc::cli
