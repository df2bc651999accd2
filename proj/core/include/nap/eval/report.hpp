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

#ifndef NAP__EVAL__REPORT_HPP_
#define NAP__EVAL__REPORT_HPP_

#include "nap/eval/metrics.hpp"
#include "nap/model/batch.hpp"
#include "nap/model/nap_model.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nap::eval
{

struct SceneResult
{
  std::string scene;
  double ade = 0.0;
  double fde = 0.0;
  std::size_t samples = 0;
};

/// One method's per-scene errors (one row of the results table).
struct MethodResult
{
  std::string method;
  bool multimodal = false;
  std::vector<SceneResult> scenes;

  /// Unweighted mean over scenes.
  ErrorPair average() const;
  const SceneResult * find(const std::string & scene) const;
};

/**
 * @brief Per-scene and average ADE/FDE for NAP and the baselines.
 *
 * `methods.front()` is the evaluated model; the remaining rows are baselines.
 */
struct MetricsReport
{
  std::string mode;  // "single" or "best-of-K"
  std::size_t k = 1;
  std::size_t t_pred = 12;
  std::vector<MethodResult> methods;

  /// Scene ids in first-seen order.
  std::vector<std::string> scene_ids() const;
  /// Methods as rows, scenes plus "Average" as columns, cells "ade / fde".
  std::string format_table(int decimals = 2) const;
  /// "scene,ade,fde,mode,K,T_pred" rows for one method, ending with the average.
  std::string format_csv(std::size_t method_index = 0) const;
};

struct CsvRow
{
  std::string scene;
  double ade = 0.0;
  double fde = 0.0;
  std::string mode;
  std::size_t k = 1;
  std::size_t t_pred = 12;
};

/// Parses format_csv output; throws DataError on a schema violation.
std::vector<CsvRow> parse_metrics_csv(std::string_view text);

/// One test scene: its samples and the model trained without it.
struct SceneEval
{
  std::string scene_id;
  const model::NapModel * model = nullptr;
  /// Optional autoregressive reference model for the same split.
  const model::NapModel * ar_reference = nullptr;
  std::vector<model::PreparedSample> samples;
};

struct EvalOptions
{
  std::size_t k = 1;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  /// Samples per forecast batch; fixed so results do not depend on threads.
  std::size_t chunk_size = 64;
  std::string method_name = "NAP";
};

/// Best-of-K (or single, K = 1) errors of `model` on one scene's samples, in
/// world coordinates. Sample i draws its noise from stream (seed, i).
SceneResult evaluate_model(const model::NapModel & model, const std::vector<model::PreparedSample> & samples,
                           const std::string & scene_id, const EvalOptions & options);

/// Errors of a deterministic baseline predictor working on world coordinates.
SceneResult evaluate_baseline(const std::function<Trajectory(const Trajectory &, std::size_t)> & predictor,
                              const std::vector<model::PreparedSample> & samples, const std::string & scene_id,
                              std::size_t t_pred);

/// Model, AR reference (when given), constant-position and constant-velocity
/// rows over all scenes.
MetricsReport evaluate_split(const std::vector<SceneEval> & scenes, const EvalOptions & options);

/// Scenes as rows, one column per variant (the ablation layout).
std::string format_variant_table(const std::vector<MethodResult> & variants, int decimals = 2);

struct IncrementRow
{
  std::string method;
  ErrorPair short_horizon;  // T_pred = 8
  ErrorPair long_horizon;   // T_pred = 12

  ErrorPair increment() const;
};

/// Method rows with "T_pred=8", "T_pred=12" and "Increment" columns.
std::string format_increment_table(const std::vector<IncrementRow> & rows, int decimals = 2);

/// Ground truth of a prepared sample in world coordinates.
Trajectory world_future(const model::PreparedSample & sample);
Trajectory world_observed(const model::PreparedSample & sample);

}  // namespace nap::eval

#endif  // NAP__EVAL__REPORT_HPP_
