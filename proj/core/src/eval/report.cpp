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

#include "nap/eval/report.hpp"

#include "nap/errors.hpp"
#include "nap/eval/baselines.hpp"
#include "nap/model/forecast.hpp"
#include "nap/numeric/random.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

namespace nap::eval
{
namespace
{
std::string render(const std::vector<std::vector<std::string>> & rows)
{
  std::vector<std::size_t> widths;
  for (const auto & row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const auto & cell = rows[r][c];
      if (c == 0) {
        line += cell + std::string(widths[c] - cell.size(), ' ');
      } else {
        line += " | " + std::string(widths[c] - cell.size(), ' ') + cell;
      }
    }
    out += line + "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : widths) {
        total += w + 3;
      }
      out += std::string(total - 3, '-') + "\n";
    }
  }
  return out;
}

std::string real_text(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn && fn)
{
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
        }
      }
    });
  }
  for (auto & t : pool) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}
}  // namespace

ErrorPair MethodResult::average() const
{
  ErrorPair out;
  if (scenes.empty()) {
    return out;
  }
  for (const auto & s : scenes) {
    out.ade += s.ade;
    out.fde += s.fde;
  }
  out.ade /= static_cast<double>(scenes.size());
  out.fde /= static_cast<double>(scenes.size());
  return out;
}

const SceneResult * MethodResult::find(const std::string & scene) const
{
  for (const auto & s : scenes) {
    if (s.scene == scene) {
      return &s;
    }
  }
  return nullptr;
}

std::vector<std::string> MetricsReport::scene_ids() const
{
  std::vector<std::string> ids;
  for (const auto & m : methods) {
    for (const auto & s : m.scenes) {
      if (std::find(ids.begin(), ids.end(), s.scene) == ids.end()) {
        ids.push_back(s.scene);
      }
    }
  }
  return ids;
}

std::string MetricsReport::format_table(int decimals) const
{
  const auto ids = scene_ids();
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Method", "#"};
  header.insert(header.end(), ids.begin(), ids.end());
  header.push_back("Average");
  rows.push_back(header);
  for (const auto & m : methods) {
    std::vector<std::string> row{m.method, m.multimodal ? "K=" + std::to_string(k) : ""};
    for (const auto & id : ids) {
      const SceneResult * s = m.find(id);
      row.push_back(s ? format_pair(s->ade, s->fde, decimals) : "--");
    }
    const ErrorPair avg = m.average();
    row.push_back(format_pair(avg.ade, avg.fde, decimals));
    rows.push_back(row);
  }
  return "ADE / FDE (m), mode=" + mode + ", T_pred=" + std::to_string(t_pred) +
         ", Average = unweighted mean over scenes\n" + render(rows);
}

std::string MetricsReport::format_csv(std::size_t method_index) const
{
  const MethodResult & m = methods.at(method_index);
  const std::string tail = "," + mode + "," + std::to_string(k) + "," + std::to_string(t_pred) + "\n";
  std::string out = "scene,ade,fde,mode,K,T_pred\n";
  for (const auto & s : m.scenes) {
    out += s.scene + "," + real_text(s.ade) + "," + real_text(s.fde) + tail;
  }
  const ErrorPair avg = m.average();
  out += "average," + real_text(avg.ade) + "," + real_text(avg.fde) + tail;
  return out;
}

std::vector<CsvRow> parse_metrics_csv(std::string_view text)
{
  std::vector<CsvRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      fields.push_back(field);
    }
    if (fields.size() != 6) {
      throw DataError("metrics csv line " + std::to_string(line_no) + ": expected 6 fields");
    }
    if (line_no == 1) {
      if (line != "scene,ade,fde,mode,K,T_pred") {
        throw DataError("metrics csv: unexpected header '" + line + "'");
      }
      continue;
    }
    CsvRow row;
    row.scene = fields[0];
    row.mode = fields[3];
    auto parse_num = [&](const std::string & s, auto & out) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw DataError("metrics csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
      }
    };
    parse_num(fields[1], row.ade);
    parse_num(fields[2], row.fde);
    parse_num(fields[4], row.k);
    parse_num(fields[5], row.t_pred);
    rows.push_back(row);
  }
  return rows;
}

Trajectory world_future(const model::PreparedSample & ps)
{
  Trajectory out;
  for (const auto & p : ps.sample.fut) {
    out.push_back(dataio::to_world(ps.sample, p));
  }
  return out;
}

Trajectory world_observed(const model::PreparedSample & ps)
{
  Trajectory out;
  for (const auto & p : ps.sample.obs) {
    out.push_back(dataio::to_world(ps.sample, p));
  }
  return out;
}

SceneResult evaluate_model(const model::NapModel & model, const std::vector<model::PreparedSample> & samples,
                           const std::string & scene_id, const EvalOptions & options)
{
  if (samples.empty()) {
    throw DataError("no evaluation samples for scene '" + scene_id + "'");
  }
  const std::size_t n = samples.size();
  const std::size_t chunk = std::max<std::size_t>(1, options.chunk_size);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<ErrorPair> per_sample(n);
  const auto steps = model::all_steps(model.config());
  parallel_for(chunks, options.threads, [&](std::size_t c) {
    const std::size_t lo = c * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    std::vector<const model::PreparedSample *> ptrs;
    std::vector<numeric::Rng> rngs;
    for (std::size_t i = lo; i < hi; ++i) {
      ptrs.push_back(&samples[i]);
      rngs.emplace_back(numeric::mix_seed(options.seed, {i}));
    }
    const auto sets = model::forecast_batch(ptrs, model, options.k, rngs, steps);
    for (std::size_t i = lo; i < hi; ++i) {
      const auto & set = sets[i - lo];
      std::vector<Trajectory> world;
      for (std::size_t k = 0; k < set.k(); ++k) {
        world.push_back(set.world_sample(k));
      }
      per_sample[i] = best_of_k(world, world_future(samples[i]));
    }
  });
  SceneResult out{scene_id, 0.0, 0.0, n};
  for (const auto & e : per_sample) {
    out.ade += e.ade;
    out.fde += e.fde;
  }
  out.ade /= static_cast<double>(n);
  out.fde /= static_cast<double>(n);
  return out;
}

SceneResult evaluate_baseline(const std::function<Trajectory(const Trajectory &, std::size_t)> & predictor,
                              const std::vector<model::PreparedSample> & samples, const std::string & scene_id,
                              std::size_t t_pred)
{
  if (samples.empty()) {
    throw DataError("no evaluation samples for scene '" + scene_id + "'");
  }
  SceneResult out{scene_id, 0.0, 0.0, samples.size()};
  for (const auto & ps : samples) {
    const Trajectory gt = world_future(ps);
    const Trajectory pred = predictor(world_observed(ps), t_pred);
    out.ade += ade(pred, gt);
    out.fde += fde(pred, gt);
  }
  out.ade /= static_cast<double>(samples.size());
  out.fde /= static_cast<double>(samples.size());
  return out;
}

MetricsReport evaluate_split(const std::vector<SceneEval> & scenes, const EvalOptions & options)
{
  if (scenes.empty()) {
    throw DataError("evaluate_split: no scenes");
  }
  MetricsReport report;
  report.k = options.k;
  report.mode = options.k > 1 ? "best-of-" + std::to_string(options.k) : "single";
  report.t_pred = scenes.front().model->config().t_pred;

  MethodResult nap{options.method_name, options.k > 1, {}};
  MethodResult ar{"AR-reference", options.k > 1, {}};
  MethodResult cp{"constant-position", false, {}};
  MethodResult cv{"constant-velocity", false, {}};
  for (const auto & scene : scenes) {
    if (scene.model == nullptr) {
      throw ConfigError("scene '" + scene.scene_id + "' has no model");
    }
    if (scene.model->config().t_pred != report.t_pred) {
      throw IncompatibleError("models disagree on t_pred");
    }
    nap.scenes.push_back(evaluate_model(*scene.model, scene.samples, scene.scene_id, options));
    if (scene.ar_reference != nullptr) {
      ar.scenes.push_back(evaluate_model(*scene.ar_reference, scene.samples, scene.scene_id, options));
    }
    cp.scenes.push_back(evaluate_baseline(constant_position, scene.samples, scene.scene_id, report.t_pred));
    cv.scenes.push_back(evaluate_baseline(constant_velocity, scene.samples, scene.scene_id, report.t_pred));
  }
  report.methods.push_back(std::move(nap));
  if (!ar.scenes.empty()) {
    report.methods.push_back(std::move(ar));
  }
  report.methods.push_back(std::move(cp));
  report.methods.push_back(std::move(cv));
  return report;
}

std::string format_variant_table(const std::vector<MethodResult> & variants, int decimals)
{
  std::vector<std::string> ids;
  for (const auto & v : variants) {
    for (const auto & s : v.scenes) {
      if (std::find(ids.begin(), ids.end(), s.scene) == ids.end()) {
        ids.push_back(s.scene);
      }
    }
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Scene"};
  for (const auto & v : variants) {
    header.push_back(v.method);
  }
  rows.push_back(header);
  for (const auto & id : ids) {
    std::vector<std::string> row{id};
    for (const auto & v : variants) {
      const SceneResult * s = v.find(id);
      row.push_back(s ? format_pair(s->ade, s->fde, decimals) : "--");
    }
    rows.push_back(row);
  }
  std::vector<std::string> avg_row{"Average"};
  for (const auto & v : variants) {
    const ErrorPair avg = v.average();
    avg_row.push_back(format_pair(avg.ade, avg.fde, decimals));
  }
  rows.push_back(avg_row);
  return "ADE / FDE (m) of the variants, single prediction\n" + render(rows);
}

ErrorPair IncrementRow::increment() const
{
  return {error_increment(short_horizon.ade, long_horizon.ade), error_increment(short_horizon.fde, long_horizon.fde)};
}

std::string format_increment_table(const std::vector<IncrementRow> & rows, int decimals)
{
  std::vector<std::vector<std::string>> cells{{"Method", "T_pred=8", "T_pred=12", "Increment"}};
  for (const auto & r : rows) {
    const ErrorPair inc = r.increment();
    cells.push_back({r.method, format_pair(r.short_horizon.ade, r.short_horizon.fde, decimals),
                     format_pair(r.long_horizon.ade, r.long_horizon.fde, decimals),
                     format_percent(inc.ade) + " / " + format_percent(inc.fde)});
  }
  return "ADE / FDE (m) by prediction length\n" + render(cells);
}

}  // namespace nap::eval
