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

// rsbc: run, validate and sweep experiment configs.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure.

#include "rsbc/cli/config.hpp"
#include "rsbc/cli/csv.hpp"
#include "rsbc/cli/experiments.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kConfigExit = 2;
constexpr int kNumericExit = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> shots;
  std::optional<std::string> out;
  std::optional<int> threads;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "RNG seed (u64)");
  cmd->add_option("--shots", o.shots, "shots per estimate")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "CSV output path; a .meta file is written next to it");
  cmd->add_option("--threads", o.threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
}

rsbc::cli::KeyValues with_overrides(rsbc::cli::KeyValues kv, const Overrides& o) {
  if (o.seed) kv["seed"] = std::to_string(*o.seed);
  if (o.shots) kv["shots"] = std::to_string(*o.shots);
  if (o.out) kv["output"] = *o.out;
  if (o.threads) kv["threads"] = std::to_string(*o.threads);
  return kv;
}

void deliver(const rsbc::cli::RunResult& result, const rsbc::cli::KeyValues& kv) {
  auto it = kv.find("output");
  if (it == kv.end() || it->second.empty() || it->second == "-") {
    rsbc::cli::write_csv(result.table, std::cout);
    return;
  }
  rsbc::cli::emit(result, it->second);
  std::cerr << "wrote " << result.table.rows.size() << " rows to " << it->second << "\n";
}

int validate(const std::string& path) {
  const rsbc::cli::KeyValues kv = rsbc::cli::load_config(path);
  const rsbc::cli::Diagnostics diag = rsbc::cli::validate_config(kv);
  for (const auto& e : diag.errors) std::cout << "error: " << e << "\n";
  for (const auto& n : diag.notes) std::cout << "note: " << n << "\n";
  if (diag.clean()) std::cout << "ok\n";
  return diag.clean() ? 0 : kConfigExit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation-symmetric bosonic codes: noise, symmetry expansion and closed-form checks"};
  app.require_subcommand(1);

  std::string run_path;
  Overrides run_o;
  CLI::App* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", run_path, "config file")->required();
  add_override_flags(run, run_o);

  std::string validate_path;
  CLI::App* val = app.add_subcommand("validate", "check a config and report the derived truncation");
  val->add_option("config", validate_path, "config file")->required();

  std::string sweep_path;
  std::string sweep_param;
  std::string sweep_values;
  Overrides sweep_o;
  CLI::App* sweep = app.add_subcommand("sweep", "run a config over a list of parameter values");
  sweep->add_option("config", sweep_path, "config file")->required();
  sweep->add_option("--param", sweep_param, "config key to sweep")->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();
  add_override_flags(sweep, sweep_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (*val) return validate(validate_path);
    if (*run) {
      const rsbc::cli::KeyValues kv = with_overrides(rsbc::cli::load_config(run_path), run_o);
      deliver(rsbc::cli::run_config(kv), kv);
      return 0;
    }
    const rsbc::cli::KeyValues kv = with_overrides(rsbc::cli::load_config(sweep_path), sweep_o);
    deliver(rsbc::cli::run_sweep(kv, sweep_param, rsbc::cli::parse_number_list(sweep_values)), kv);
    return 0;
  } catch (const rsbc::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const rsbc::cli::IoError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericExit;
  }
}
