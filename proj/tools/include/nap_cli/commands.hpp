// Copyright 2026 The NAP Trajectory Authors
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

#ifndef NAP_CLI__COMMANDS_HPP_
#define NAP_CLI__COMMANDS_HPP_

#include "nap_cli/run_config.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nap::cli
{

enum ExitCode : int
{
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitData = 3,
  kExitNumeric = 4,
  kExitIncompatible = 5,
};

struct EvalArgs
{
  std::vector<std::string> checkpoints;
  std::vector<std::string> scenes;
  std::vector<std::string> ar_checkpoints;
  std::string data_dir;
  std::string out_dir;
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  bool allow_train_eval = false;
};

struct PredictArgs
{
  std::string checkpoint;
  std::string track;
  std::string grid;
  std::optional<std::int64_t> ped;
  std::string steps = "all";
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
  bool heatmap = false;
  std::size_t heatmap_cells = 32;
  double heatmap_cell_size = 0.5;
  std::string out_dir;
};

void cmd_synth(const RunConfig & cfg, std::ostream & out);
void cmd_train(const RunConfig & cfg, bool leave_one_out, std::ostream & out);
void cmd_eval(const EvalArgs & args, std::ostream & out);
void cmd_predict(const PredictArgs & args, std::ostream & out);
void cmd_ablate(const RunConfig & cfg, std::ostream & out);
void cmd_increment_study(const RunConfig & cfg, std::ostream & out);

/// Parses 1-based step lists ("all", "12", "4,8,12") into 0-based indices.
std::vector<std::size_t> parse_steps(std::string_view text, std::size_t t_pred);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace nap::cli

#endif  // NAP_CLI__COMMANDS_HPP_
