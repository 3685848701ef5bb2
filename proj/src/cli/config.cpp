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

#include "rsbc/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace rsbc::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) return std::nullopt;
  }
  return value;
}

const std::map<std::string_view, Experiment>& experiment_table() {
  static const std::map<std::string_view, Experiment> table = {
      {"proj_prob_sweep", Experiment::kProjProbSweep},
      {"trace_distance_sweep", Experiment::kTraceDistanceSweep},
      {"se_shot_study", Experiment::kSeShotStudy},
      {"wigner_pair", Experiment::kWignerPair},
      {"phase_noise_truncation", Experiment::kPhaseNoiseTruncation},
      {"overhead_table", Experiment::kOverheadTable},
  };
  return table;
}

// Sweep axes each experiment iterates over natively.
std::vector<std::string> native_axes(Experiment e, CodeFamily family) {
  switch (e) {
    case Experiment::kProjProbSweep:
      return {"code.alpha_sq"};
    case Experiment::kTraceDistanceSweep:
      return {family == CodeFamily::kCat ? "code.alpha_sq" : "code.L"};
    case Experiment::kPhaseNoiseTruncation:
      return {"truncation.L"};
    case Experiment::kOverheadTable:
      return {"load"};
    default:
      return {};
  }
}

std::vector<double> default_sweep(Experiment e) {
  if (e == Experiment::kPhaseNoiseTruncation) return {0, 1, 2, 3};
  if (e == Experiment::kOverheadTable) return {0, 0.25, 0.5, 0.75, 1, 1.25, 1.5, 1.75, 2};
  return {};
}

// Parses and range-checks every field, recording problems instead of
// throwing so validate can list them all.
struct Reader {
  const KeyValues& kv;
  std::vector<std::string>& errors;

  bool has(const std::string& key) const { return kv.count(key) > 0; }

  template <typename T>
  std::optional<T> number(const std::string& key, T lo, T hi) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    auto v = parse_number<T>(it->second);
    if (!v) {
      errors.push_back(key + ": '" + it->second + "' is not a valid number");
      return std::nullopt;
    }
    if (*v < lo || *v > hi) {
      std::ostringstream msg;
      msg << key << ": " << *v << " is out of range [" << lo << ", " << hi << "]";
      errors.push_back(msg.str());
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::string> choice(const std::string& key, const std::vector<std::string>& allowed) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    if (std::find(allowed.begin(), allowed.end(), it->second) == allowed.end()) {
      std::string msg = key + ": '" + it->second + "' is not one of";
      for (const auto& a : allowed) msg += " " + a;
      errors.push_back(msg);
      return std::nullopt;
    }
    return it->second;
  }
};

struct Resolved {
  ExperimentConfig cfg;
  Diagnostics diag;
};

Resolved resolve(const KeyValues& kv) {
  Resolved out;
  Diagnostics& diag = out.diag;
  ExperimentConfig& cfg = out.cfg;
  auto& errors = diag.errors;

  const auto& known = known_keys();
  for (const auto& [key, value] : kv) {
    if (std::find(known.begin(), known.end(), key) == known.end()) errors.push_back("unknown key '" + key + "'");
  }

  Reader r{kv, errors};
  bool experiment_ok = false;
  if (!r.has("experiment")) {
    errors.push_back("missing required key 'experiment' (one of proj_prob_sweep, trace_distance_sweep, "
                     "se_shot_study, wigner_pair, phase_noise_truncation, overhead_table)");
  } else {
    auto it = experiment_table().find(kv.at("experiment"));
    if (it == experiment_table().end()) {
      errors.push_back("experiment: unknown experiment '" + kv.at("experiment") + "'");
    } else {
      cfg.experiment = it->second;
      experiment_ok = true;
    }
  }

  if (auto f = r.choice("code.family", {"cat", "binomial"})) cfg.family = *f == "cat" ? CodeFamily::kCat : CodeFamily::kBinomial;
  if (!r.has("code.M")) errors.push_back("missing required key 'code.M'");
  if (auto m = r.number<int>("code.M", 1, 16)) cfg.order = *m;

  const bool cat = cfg.family == CodeFamily::kCat;
  if (cat && r.has("code.L")) errors.push_back("code.L: only valid for code.family=binomial");
  if (!cat && r.has("code.alpha_sq")) errors.push_back("code.alpha_sq: only valid for code.family=cat");

  // Sweep axis.
  const std::vector<std::string> axes = experiment_ok ? native_axes(cfg.experiment, cfg.family) : std::vector<std::string>{};
  if (r.has("sweep.param")) {
    cfg.sweep_param = kv.at("sweep.param");
    if (experiment_ok && std::find(axes.begin(), axes.end(), cfg.sweep_param) == axes.end()) {
      std::string msg = "sweep.param: '" + cfg.sweep_param + "' is not a sweep axis of this experiment";
      if (!axes.empty()) msg += " (use " + axes.front() + ")";
      errors.push_back(msg);
    }
  } else if (!axes.empty()) {
    cfg.sweep_param = axes.front();
  }
  if (r.has("sweep.values")) {
    try {
      cfg.sweep_values = parse_number_list(kv.at("sweep.values"));
    } catch (const ConfigError& e) {
      errors.push_back(std::string("sweep.values: ") + e.what());
    }
    if (experiment_ok && axes.empty()) errors.push_back("sweep.values: this experiment has no sweep axis");
  } else if (experiment_ok) {
    cfg.sweep_values = default_sweep(cfg.experiment);
  }
  const bool sweeps_alpha = cfg.sweep_param == "code.alpha_sq";
  const bool sweeps_level = cfg.sweep_param == "code.L";

  if (auto a = r.number<double>("code.alpha_sq", 0.0, 1e4)) cfg.alpha_sq = *a;
  if (auto l = r.number<int>("code.L", 1, 1000)) cfg.level = *l;
  if (cat && !r.has("code.alpha_sq") && !sweeps_alpha) errors.push_back("missing required key 'code.alpha_sq'");
  if (!cat && !r.has("code.L") && !sweeps_level) errors.push_back("missing required key 'code.L'");
  if (sweeps_alpha && experiment_ok) {
    if (cfg.sweep_values.empty()) errors.push_back("missing required key 'sweep.values'");
    for (double v : cfg.sweep_values) {
      if (v < 0.0) errors.push_back("sweep.values: alpha_sq must be >= 0");
    }
  }
  if (sweeps_level && experiment_ok) {
    if (cfg.sweep_values.empty()) errors.push_back("missing required key 'sweep.values'");
    for (double v : cfg.sweep_values) {
      if (v < 1.0 || v != std::floor(v)) errors.push_back("sweep.values: code.L values must be integers >= 1");
    }
  }
  if (cfg.sweep_param == "truncation.L") {
    for (double v : cfg.sweep_values) {
      if (v < 0.0 || v != std::floor(v)) errors.push_back("sweep.values: truncation levels must be integers >= 0");
    }
  }
  if (cfg.sweep_param == "load") {
    for (double v : cfg.sweep_values) {
      if (v < 0.0) errors.push_back("sweep.values: load must be >= 0");
    }
  }

  // Noise.
  const bool dephasing_default = experiment_ok && cfg.experiment == Experiment::kPhaseNoiseTruncation;
  cfg.noise.kind = dephasing_default ? NoiseKind::kDephasing : NoiseKind::kPhotonLoss;
  if (auto k = r.choice("noise.kind", {"photon_loss", "dephasing"})) {
    cfg.noise.kind = *k == "dephasing" ? NoiseKind::kDephasing : NoiseKind::kPhotonLoss;
  }
  const bool needs_noise = !(experiment_ok && cfg.experiment == Experiment::kOverheadTable);
  if (needs_noise && !r.has("noise.gamma_t")) errors.push_back("missing required key 'noise.gamma_t'");
  if (auto g = r.number<double>("noise.gamma_t", 0.0, 50.0)) cfg.noise.gamma_t = *g;
  if (auto c = r.number<int>("noise.kraus_cutoff", 0, 100000)) cfg.noise.kraus_cutoff = *c;

  if (experiment_ok) {
    const Experiment e = cfg.experiment;
    if ((e == Experiment::kProjProbSweep || e == Experiment::kWignerPair) && !cat) {
      errors.push_back("code.family: " + std::string(experiment_name(e)) + " requires cat codes");
    }
    if (e == Experiment::kPhaseNoiseTruncation && cfg.noise.kind != NoiseKind::kDephasing) {
      errors.push_back("noise.kind: phase_noise_truncation requires dephasing");
    }
    if ((e == Experiment::kProjProbSweep || e == Experiment::kTraceDistanceSweep || e == Experiment::kSeShotStudy) &&
        cfg.noise.kind != NoiseKind::kPhotonLoss) {
      errors.push_back("noise.kind: " + std::string(experiment_name(e)) + " requires photon_loss");
    }
  }

  if (r.has("state")) {
    cfg.state = kv.at("state");
    try {
      (void)LogicalCoeffs::from_name(cfg.state);
    } catch (const std::invalid_argument&) {
      errors.push_back("state: unknown logical state '" + cfg.state + "' (zero, one, plus, minus, plus_i, magic_t)");
    }
  } else if (experiment_ok && cfg.experiment == Experiment::kTraceDistanceSweep) {
    cfg.state = "magic_t";
  }

  if (auto s = r.number<std::int64_t>("shots", 1, std::int64_t{1} << 40)) cfg.shots = *s;
  if (auto s = r.number<std::uint64_t>("seed", 0, UINT64_MAX)) cfg.seed = *s;
  if (auto t = r.number<int>("threads", 0, 4096)) cfg.threads = *t;
  if (r.has("output")) cfg.output = kv.at("output");
  if (auto p = r.number<int>("wigner.points", 2, 2001)) cfg.wigner_points = *p;
  if (auto x = r.number<double>("wigner.extent", 1e-6, 100.0)) cfg.wigner_extent = *x;
  if (auto s = r.number<int>("se.seeds", 1, 100000)) cfg.se_seeds = *s;
  if (auto v = r.choice("se.variant", {"state_prep", "measurement"})) cfg.se_variant = *v;
  if (auto v = r.choice("se.probabilities", {"exact", "sampled"})) cfg.se_probabilities = *v;
  if (auto n = r.number<int>("overhead.n_qem", 1, 1000)) cfg.n_qem = *n;

  // Derived truncation.
  int derived = 0;
  if (cat) {
    double max_a2 = cfg.alpha_sq;
    if (sweeps_alpha) {
      for (double v : cfg.sweep_values) max_a2 = std::max(max_a2, v);
    }
    derived = default_truncation(max_a2);
  } else {
    int max_l = cfg.level;
    if (sweeps_level) {
      for (double v : cfg.sweep_values) max_l = std::max(max_l, static_cast<int>(v));
    }
    derived = (max_l + 1) * cfg.order + 1;
    if (r.has("code.dim")) {
      if (auto d = parse_number<int>(kv.at("code.dim")); d && *d < derived) {
        errors.push_back("code.dim: binomial codes need D > (L+1)M = " + std::to_string(derived - 1));
      }
    }
  }
  if (cfg.sweep_param == "truncation.L") {
    double max_l = 0.0;
    for (double v : cfg.sweep_values) max_l = std::max(max_l, v);
    derived = std::max(derived, 2 * static_cast<int>(max_l) * cfg.order + 1);
  }
  if (auto d = r.number<int>("code.dim", 1, 4096)) derived = *d;
  cfg.dim = derived;
  diag.derived_dim = derived;
  diag.notes.push_back("derived truncation D = " + std::to_string(derived));
  return out;
}

}  // namespace

std::string_view experiment_name(Experiment e) {
  for (const auto& [name, value] : experiment_table()) {
    if (value == e) return name;
  }
  return "unknown";
}

KeyValues parse_config_text(std::string_view text) {
  KeyValues out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!out.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

KeyValues load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "experiment",      "code.family",      "code.M",       "code.alpha_sq",  "code.L",
      "code.dim",        "noise.kind",       "noise.gamma_t", "noise.kraus_cutoff", "sweep.param",
      "sweep.values",    "shots",            "seed",         "threads",        "output",
      "state",           "wigner.points",    "wigner.extent", "se.seeds",      "se.variant",
      "se.probabilities", "overhead.n_qem",
  };
  return keys;
}

Diagnostics validate_config(const KeyValues& kv) { return resolve(kv).diag; }

ExperimentConfig to_config(const KeyValues& kv) {
  Resolved r = resolve(kv);
  if (!r.diag.clean()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : r.diag.errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return r.cfg;
}

CodeSpec ExperimentConfig::code_spec(double alpha_sq_value, int level_value) const {
  if (family == CodeFamily::kCat) return CodeSpec::cat(order, std::sqrt(alpha_sq_value), dim);
  return CodeSpec::binomial(order, level_value, dim);
}

std::string canonical_text(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (!out.empty()) out += '\n';
    out += k + "=" + v;
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item =
        trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    auto v = parse_number<double>(item);
    if (!v) throw ConfigError("'" + std::string(item) + "' is not a finite number");
    out.push_back(*v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace rsbc::cli
