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

#include "nap/train/trainer.hpp"

#include "nap/errors.hpp"
#include "nap/numeric/adam.hpp"
#include "nap/numeric/ops.hpp"
#include "nap/numeric/random.hpp"
#include "nap/train/loss.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <cmath>
#include <numbers>
#include <thread>

namespace nap::train
{
namespace ops = numeric::ops;
using model::Batch;
using model::NapModel;
using model::PreparedSample;
using numeric::Graph;
using numeric::Tensor;
using numeric::Var;

namespace
{
constexpr std::uint64_t kShuffleKey = 0x5348;
constexpr std::uint64_t kAugmentKey = 0x4147;
constexpr std::uint64_t kNoiseKey = 0x4e5a;
constexpr std::size_t kAngleSteps = 24;  // multiples of 15 degrees

std::string real_text(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}
}  // namespace

void TrainConfig::validate() const
{
  if (!(lr >= 0.0) || !std::isfinite(lr)) {
    throw ConfigError("lr must be a finite non-negative number");
  }
  if (batch_size == 0) {
    throw ConfigError("batch_size must be at least 1");
  }
  if (k_variety == 0) {
    throw ConfigError("k_variety must be at least 1");
  }
  if (!(kl_weight >= 0.0)) {
    throw ConfigError("kl_weight must be non-negative");
  }
  if (!(clip_norm > 0.0)) {
    throw ConfigError("clip_norm must be positive (inf disables clipping)");
  }
  if (threads == 0 || chunk_size == 0) {
    throw ConfigError("threads and chunk_size must be at least 1");
  }
}

KeyValues TrainConfig::to_key_values() const
{
  return {
    {"lr", real_text(lr)},
    {"batch_size", std::to_string(batch_size)},
    {"epochs", std::to_string(epochs)},
    {"seed", std::to_string(seed)},
    {"k_variety", std::to_string(k_variety)},
    {"kl_weight", real_text(kl_weight)},
    {"clip_norm", real_text(clip_norm)},
    {"augment", augment ? "true" : "false"},
    {"chunk_size", std::to_string(chunk_size)},
  };
}

bool TrainConfig::apply(std::string_view key, std::string_view value)
{
  if (key == "lr") {
    lr = parse_real(key, value);
  } else if (key == "batch_size") {
    batch_size = parse_size(key, value);
  } else if (key == "epochs") {
    epochs = parse_size(key, value);
  } else if (key == "seed") {
    seed = parse_u64(key, value);
  } else if (key == "k_variety") {
    k_variety = parse_size(key, value);
  } else if (key == "kl_weight") {
    kl_weight = parse_real(key, value);
  } else if (key == "clip_norm") {
    clip_norm = parse_real(key, value);
  } else if (key == "augment") {
    augment = parse_bool(key, value);
  } else if (key == "threads") {
    threads = parse_size(key, value);
  } else if (key == "chunk_size") {
    chunk_size = parse_size(key, value);
  } else {
    return false;
  }
  return true;
}

std::string TrainLog::format() const
{
  std::string out = "# seed=" + std::to_string(seed) + " config=" + config_hash + " data=" + data_hash + "\n";
  out += "# epoch loss grad_norm seconds\n";
  for (const auto & e : epochs) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%zu %.9g %.9g %.3f\n", e.epoch, e.loss, e.grad_norm, e.seconds);
    out += buf;
  }
  return out;
}

std::vector<PreparedSample> prepare_scene(const dataio::SceneData & scene, const model::NapConfig & config,
                                          std::size_t stride)
{
  dataio::WindowOptions opts;
  opts.t_obs = config.t_obs;
  opts.t_pred = config.t_pred;
  opts.stride = stride;
  std::vector<PreparedSample> out;
  for (const auto & raw : dataio::window_samples(scene.records, opts, scene.scene_id)) {
    out.push_back(model::prepare_sample(raw, scene.grid, config));
  }
  return out;
}

std::string dataset_hash(const std::vector<PreparedSample> & samples)
{
  std::string bytes;
  auto put = [&bytes](double v) { bytes.append(reinterpret_cast<const char *>(&v), sizeof(v)); };
  for (const auto & ps : samples) {
    bytes += ps.sample.scene_id;
    bytes += '\0';
    for (const auto & p : ps.sample.obs) {
      put(p.x), put(p.y);
    }
    for (const auto & p : ps.sample.fut) {
      put(p.x), put(p.y);
    }
    for (const auto & step : ps.sample.neighbors) {
      for (const auto & p : step) {
        put(p.x), put(p.y);
      }
      bytes += '|';
    }
    for (double v : ps.crop.values()) {
      put(v);
    }
  }
  return fnv1a_hex(bytes);
}

Var batch_loss(Graph & graph, const NapModel & model, const Batch & batch, const TrainConfig & config,
               std::span<const std::uint64_t> stream_seeds, double normalizer)
{
  const model::NapConfig & cfg = model.config();
  if (batch.future.size() != cfg.t_pred) {
    throw DataError("training batch lacks ground-truth futures");
  }
  if (stream_seeds.size() != batch.size) {
    throw ConfigError("batch_loss: one stream seed per sample required");
  }
  const model::EncodedState state = model.encode(graph, batch);
  const bool autoregressive = cfg.decoder == model::DecoderKind::kAutoregressive;
  model::ContextSet contexts;
  if (!autoregressive) {
    contexts = model.contexts(graph, state);
  }
  std::vector<numeric::Rng> rngs;
  for (std::uint64_t s : stream_seeds) {
    rngs.emplace_back(s);
  }

  const std::size_t draws = cfg.multimodal ? config.k_variety : 1;
  std::vector<Var> losses;
  std::optional<model::LatentVars> latent;
  for (std::size_t k = 0; k < draws; ++k) {
    std::optional<Var> z;
    if (cfg.uses_latent()) {
      Tensor eps({batch.size, cfg.d_z});
      if (k > 0) {
        for (std::size_t i = 0; i < batch.size; ++i) {
          for (std::size_t j = 0; j < cfg.d_z; ++j) {
            eps.at(i, j) = rngs[i].normal();
          }
        }
      }
      latent = model.latent(graph, state, graph.constant(std::move(eps)));
      z = latent->z;
    }
    std::vector<Var> preds;
    if (autoregressive) {
      preds = model.decode_autoregressive(graph, state, z);
    } else {
      for (std::size_t t = 0; t < cfg.t_pred; ++t) {
        preds.push_back(model.decode_step(graph, contexts, t, z));
      }
    }
    losses.push_back(mse_loss(preds, batch.future));
  }
  Var per_sample = variety_loss(losses);
  if (config.kl_weight > 0.0 && latent) {
    per_sample = ops::add(per_sample, ops::scale(kl_divergence(latent->mu, latent->log_variance), config.kl_weight));
  }
  return ops::scale(ops::sum_all(per_sample), 1.0 / normalizer);
}

namespace
{
struct ChunkResult
{
  double loss = 0.0;
  std::vector<Tensor> grads;
};

ChunkResult run_chunk(const NapModel & model, std::span<const PreparedSample * const> samples,
                      std::span<const std::uint64_t> seeds, const TrainConfig & config, double normalizer)
{
  Graph graph;
  const Batch batch = model::make_batch(samples, model.config());
  const Var loss = batch_loss(graph, model, batch, config, seeds, normalizer);
  graph.backward(loss);
  ChunkResult out;
  out.loss = loss.value()[0];
  const auto & params = model.params();
  out.grads.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    out.grads.push_back(graph.grad(graph.parameter(params, i)));
    if (!out.grads.back().all_finite()) {
      throw NumericError("non-finite gradient for parameter '" + params[i].name + "'");
    }
  }
  return out;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn && fn)
{
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) {
            error = std::current_exception();
          }
          failed = true;
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

EpochLog train_epoch(NapModel & model, const std::vector<PreparedSample> & data, const dataio::SplitPlan & plan,
                     const TrainConfig & config, std::size_t epoch)
{
  config.validate();
  plan.validate();
  if (data.empty()) {
    throw DataError("no training samples");
  }
  const auto started = std::chrono::steady_clock::now();

  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  numeric::Rng shuffle(numeric::mix_seed(config.seed, {kShuffleKey, epoch}));
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[shuffle.below(i)]);
  }

  auto & store = model.params();
  EpochLog log;
  log.epoch = epoch;
  std::size_t batches = 0;
  for (std::size_t start = 0; start < order.size(); start += config.batch_size, ++batches) {
    const std::size_t count = std::min(config.batch_size, order.size() - start);
    std::vector<PreparedSample> augmented;
    augmented.reserve(count);
    std::vector<std::uint64_t> seeds;
    for (std::size_t j = 0; j < count; ++j) {
      const PreparedSample & ps = data[order[start + j]];
      if (!plan.is_train_scene(ps.sample.scene_id)) {
        throw DataError("sample from scene '" + ps.sample.scene_id + "' is not a training scene of this split");
      }
      if (config.augment) {
        numeric::Rng rng(numeric::mix_seed(config.seed, {kAugmentKey, epoch, batches, j}));
        const double angle = static_cast<double>(rng.below(kAngleSteps)) * (std::numbers::pi / 12.0);
        auto [sample, crop] = dataio::rotate_augment(ps.sample, ps.crop, angle);
        augmented.push_back({std::move(sample), std::move(crop)});
      } else {
        augmented.push_back(ps);
      }
      seeds.push_back(numeric::mix_seed(config.seed, {kNoiseKey, epoch, batches, j}));
    }
    std::vector<const PreparedSample *> ptrs;
    for (const auto & ps : augmented) {
      ptrs.push_back(&ps);
    }

    const std::size_t chunks = (count + config.chunk_size - 1) / config.chunk_size;
    std::vector<ChunkResult> results(chunks);
    const NapModel & frozen = model;
    parallel_for(chunks, config.threads, [&](std::size_t c) {
      const std::size_t lo = c * config.chunk_size;
      const std::size_t n = std::min(config.chunk_size, count - lo);
      results[c] = run_chunk(frozen, std::span<const PreparedSample * const>(ptrs).subspan(lo, n),
                             std::span<const std::uint64_t>(seeds).subspan(lo, n), config,
                             static_cast<double>(count));
    });

    store.zero_grad();
    double batch_loss_value = 0.0;
    for (const auto & r : results) {
      batch_loss_value += r.loss;
      for (std::size_t i = 0; i < store.size(); ++i) {
        auto dst = store[i].grad.data();
        const auto src = r.grads[i].data();
        for (std::size_t e = 0; e < dst.size(); ++e) {
          dst[e] += src[e];
        }
      }
    }
    if (!std::isfinite(batch_loss_value)) {
      throw NumericError("non-finite loss in epoch " + std::to_string(epoch) + ", batch " + std::to_string(batches));
    }
    store.mark_grad_ready();
    log.grad_norm += numeric::clip_grad_norm(store, config.clip_norm);
    numeric::adam_step(store, {.lr = config.lr});
    store.round_to_float();
    log.loss += batch_loss_value;
  }
  log.loss /= static_cast<double>(batches);
  log.grad_norm /= static_cast<double>(batches);
  log.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return log;
}

TrainLog train(NapModel & model, const std::vector<PreparedSample> & data, const dataio::SplitPlan & plan,
               const TrainConfig & config, const std::function<void(const EpochLog &)> & on_epoch)
{
  TrainLog log;
  log.seed = config.seed;
  log.config_hash = fnv1a_hex(format_key_values(model.config().to_key_values()) +
                              format_key_values(config.to_key_values()));
  log.data_hash = dataset_hash(data);
  for (std::size_t e = 1; e <= config.epochs; ++e) {
    log.epochs.push_back(train_epoch(model, data, plan, config, e));
    if (on_epoch) {
      on_epoch(log.epochs.back());
    }
  }
  return log;
}

}  // namespace nap::train
