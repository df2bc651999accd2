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

#include "nap_cli/commands.hpp"

#include "nap/errors.hpp"
#include "nap/eval/heatmap.hpp"
#include "nap/model/checkpoint.hpp"
#include "nap/model/forecast.hpp"
#include "nap/numeric/random.hpp"
#include "nap_cli/experiments.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>

namespace nap::cli
{
namespace fs = std::filesystem;

namespace
{
std::string epoch_line(const train::EpochLog & e)
{
  char buf[128];
  std::snprintf(buf, sizeof(buf), "epoch %zu loss %.6f grad_norm %.4f", e.epoch, e.loss, e.grad_norm);
  return buf;
}

std::vector<std::string> scenes_to_run(const RunConfig & cfg, const std::vector<std::string> & available)
{
  if (!cfg.test_scene.empty()) {
    return {cfg.test_scene};
  }
  return available;
}
}  // namespace

void cmd_synth(const RunConfig & cfg, std::ostream & out)
{
  const auto counts = write_synthetic(cfg, cfg.data_dir);
  std::size_t total = 0;
  for (const auto & [id, n] : counts) {
    out << id << ": " << n << " records\n";
    total += n;
  }
  out << "wrote " << counts.size() << " scenes, " << total << " records to " << cfg.data_dir << "\n";
}

void cmd_train(const RunConfig & cfg, bool leave_one_out, std::ostream & out)
{
  cfg.validate();
  const auto available = list_scenes(cfg.data_dir);
  const SceneSet scenes = load_scenes(cfg.data_dir, available);
  std::vector<std::string> tests;
  if (leave_one_out) {
    tests = available;
  } else {
    tests = {cfg.test_scene};
  }
  for (const auto & test : tests) {
    RunConfig run_cfg = cfg;
    run_cfg.test_scene = test;
    const auto plan = resolve_split(run_cfg, available);
    const fs::path dir = leave_one_out ? fs::path(cfg.out_dir) / test : fs::path(cfg.out_dir);
    out << "training " << model::variant_name(cfg.model.variant) << " on " << join(plan.train_scenes)
        << ", test scene " << test << "\n";
    const TrainedRun run =
      train_on_split(run_cfg, scenes, plan, [&out](const train::EpochLog & e) { out << epoch_line(e) << "\n"; });
    write_run_directory(dir, run_cfg, run, scenes);
    out << "checkpoint: " << (dir / "checkpoint.nap").string() << "\n";
  }
}

void cmd_eval(const EvalArgs & args, std::ostream & out)
{
  if (args.checkpoints.empty()) {
    throw ConfigError("eval needs at least one --checkpoint");
  }
  if (!args.scenes.empty() && args.scenes.size() != args.checkpoints.size()) {
    throw ConfigError("give one --scene per --checkpoint");
  }
  if (!args.ar_checkpoints.empty() && args.ar_checkpoints.size() != args.checkpoints.size()) {
    throw ConfigError("give one --ar-checkpoint per --checkpoint");
  }
  std::vector<model::NapModel> models;
  std::vector<model::NapModel> ar_models;
  std::vector<eval::SceneEval> scenes;
  for (std::size_t i = 0; i < args.checkpoints.size(); ++i) {
    const fs::path ckpt = args.checkpoints[i];
    std::optional<RunConfig> run_cfg;
    if (fs::exists(ckpt.parent_path() / "run.cfg")) {
      run_cfg = RunConfig::load(ckpt.parent_path() / "run.cfg");
    }
    std::string scene = args.scenes.empty() ? std::string() : args.scenes[i];
    if (scene.empty()) {
      if (!run_cfg || run_cfg->test_scene.empty()) {
        throw ConfigError("no --scene given and " + ckpt.string() + " has no run.cfg naming its test scene");
      }
      scene = run_cfg->test_scene;
    }
    if (run_cfg && !args.allow_train_eval) {
      const auto & train_scenes = run_cfg->train_scenes;
      if (std::find(train_scenes.begin(), train_scenes.end(), scene) != train_scenes.end()) {
        throw ConfigError("scene '" + scene + "' was used to train " + ckpt.string() +
                          "; pass --allow-train-eval to evaluate on it anyway");
      }
    }
    std::string data_dir = args.data_dir;
    if (data_dir.empty()) {
      if (!run_cfg) {
        throw ConfigError("no --data given and " + ckpt.string() + " has no run.cfg");
      }
      data_dir = run_cfg->data_dir;
    }
    models.push_back(model::load_checkpoint(ckpt));
    if (!args.ar_checkpoints.empty()) {
      ar_models.push_back(model::load_checkpoint(args.ar_checkpoints[i]));
    }
    const std::size_t stride = run_cfg ? run_cfg->window_stride : 1;
    const auto data = load_scenes(data_dir, {scene});
    scenes.push_back({scene, nullptr, nullptr, prepare_scenes(data, {scene}, models.back().config(), stride)});
  }
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    scenes[i].model = &models[i];
    scenes[i].ar_reference = ar_models.empty() ? nullptr : &ar_models[i];
  }
  eval::EvalOptions opts;
  opts.k = args.k.value_or(models.front().config().sample_count());
  opts.seed = eval_seed(args.seed);
  opts.threads = args.threads;
  const eval::MetricsReport report = eval::evaluate_split(scenes, opts);
  const std::string table = report.format_table();
  out << table;
  if (!args.out_dir.empty()) {
    write_file(fs::path(args.out_dir) / "report.txt", table);
    write_file(fs::path(args.out_dir) / "report.csv", report.format_csv(0));
    for (std::size_t m = 1; m < report.methods.size(); ++m) {
      write_file(fs::path(args.out_dir) / (report.methods[m].method + ".csv"), report.format_csv(m));
    }
  }
  const auto avg = report.methods.front().average();
  out << "average " << report.mode << ": " << eval::format_pair(avg.ade, avg.fde) << "\n";
}

std::vector<std::size_t> parse_steps(std::string_view text, std::size_t t_pred)
{
  std::vector<std::size_t> steps;
  if (text == "all") {
    for (std::size_t t = 0; t < t_pred; ++t) {
      steps.push_back(t);
    }
    return steps;
  }
  for (const auto & item : split_list(text)) {
    const std::size_t step = parse_size("steps", item);
    if (step == 0 || step > t_pred) {
      throw ConfigError("step " + item + " outside 1.." + std::to_string(t_pred));
    }
    steps.push_back(step - 1);
  }
  if (steps.empty()) {
    throw ConfigError("empty --steps list");
  }
  return steps;
}

namespace
{
/// Builds an observation-only sample from the last t_obs consecutive frames of `ped`.
dataio::SequenceSample observed_sample(const std::vector<dataio::FrameRecord> & records, std::optional<std::int64_t> ped,
                                       std::size_t t_obs)
{
  if (records.empty()) {
    throw DataError("track file has no records");
  }
  const std::int64_t id = ped.value_or(records.front().ped_id);
  const std::int64_t interval = dataio::infer_frame_interval(records);
  std::map<std::int64_t, dataio::Point2> own;
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, dataio::Point2>>> frames;
  for (const auto & r : records) {
    if (r.ped_id == id) {
      own[r.frame_id] = {r.x, r.y};
    } else {
      frames[r.frame_id].push_back({r.ped_id, {r.x, r.y}});
    }
  }
  if (own.empty()) {
    throw DataError("pedestrian " + std::to_string(id) + " not found in track file");
  }
  const std::int64_t last = own.rbegin()->first;
  dataio::SequenceSample s;
  s.ped_id = id;
  s.scene_id = "track";
  for (std::size_t i = 0; i < t_obs; ++i) {
    const std::int64_t frame = last - static_cast<std::int64_t>(t_obs - 1 - i) * interval;
    auto it = own.find(frame);
    if (it == own.end()) {
      throw DataError("track of pedestrian " + std::to_string(id) + " has fewer than " + std::to_string(t_obs) +
                      " consecutive observed frames");
    }
    s.obs.push_back(it->second);
    std::vector<std::pair<double, std::pair<std::int64_t, dataio::Point2>>> nb;
    for (const auto & [pid, p] : frames[frame]) {
      nb.push_back({dataio::distance(p, it->second), {pid, p}});
    }
    std::sort(nb.begin(), nb.end(), [](const auto & a, const auto & b) {
      return a.first != b.first ? a.first < b.first : a.second.first < b.second.first;
    });
    std::vector<dataio::Point2> kept;
    for (std::size_t j = 0; j < nb.size() && j < 16; ++j) {
      kept.push_back(nb[j].second.second);
    }
    s.neighbors.push_back(std::move(kept));
  }
  s.start_frame = last - static_cast<std::int64_t>(t_obs - 1) * interval;
  return s;
}
}  // namespace

void cmd_predict(const PredictArgs & args, std::ostream & out)
{
  const model::NapModel model = model::load_checkpoint(args.checkpoint);
  const auto & cfg = model.config();
  const auto records = dataio::parse_trajectory_file(args.track);
  const auto raw = observed_sample(records, args.ped, cfg.t_obs);
  dataio::SceneGrid grid;
  if (args.grid.empty()) {
    grid = dataio::SceneGrid{"free", 1, 1, cfg.scene_channels, 1e6, {-5e5, -5e5},
                             std::vector<double>(cfg.scene_channels, 0.0)};
  } else {
    grid = dataio::parse_scene_grid(args.grid);
  }
  const model::PreparedSample prepared = model::prepare_sample(raw, grid, cfg);
  const auto steps = parse_steps(args.steps, cfg.t_pred);
  const std::size_t k = args.k.value_or(cfg.sample_count());
  numeric::Rng rng(numeric::mix_seed(eval_seed(args.seed), {static_cast<std::uint64_t>(raw.ped_id)}));
  const model::ForecastSet set = model::forecast(prepared, model, k, rng, steps);

  std::string text = "# ped " + std::to_string(set.ped_id) + " K " + std::to_string(k) + " steps " + args.steps +
                     " (world coordinates, steps 1-based)\n# sample step x y\n";
  for (std::size_t s = 0; s < set.k(); ++s) {
    const auto world = set.world_sample(s);
    for (std::size_t j = 0; j < world.size(); ++j) {
      text += std::to_string(s) + " " + std::to_string(set.steps[j] + 1) + " " + dataio::format_real(world[j].x) +
              " " + dataio::format_real(world[j].y) + "\n";
    }
  }
  std::string heat;
  if (args.heatmap) {
    const auto geometry =
      eval::centered_geometry(raw.obs.back(), args.heatmap_cells, args.heatmap_cells, args.heatmap_cell_size);
    heat = eval::heatmap(set, geometry).format();
  }
  if (args.out_dir.empty()) {
    out << text;
    if (args.heatmap) {
      out << "# heatmap\n" << heat;
    }
    return;
  }
  write_file(fs::path(args.out_dir) / "forecast.txt", text);
  if (args.heatmap) {
    write_file(fs::path(args.out_dir) / "heatmap.txt", heat);
  }
  out << "wrote " << set.k() << " x " << steps.size() << " predicted points to " << args.out_dir << "\n";
}

void cmd_ablate(const RunConfig & cfg, std::ostream & out)
{
  cfg.validate();
  const auto available = list_scenes(cfg.data_dir);
  const SceneSet scenes = load_scenes(cfg.data_dir, available);
  const auto tests = scenes_to_run(cfg, available);
  const std::vector<model::Variant> variants{model::Variant::kP, model::Variant::kIss, model::Variant::kIsg,
                                             model::Variant::kIsc};
  const fs::path root = cfg.out_dir;
  std::vector<eval::MethodResult> results;
  std::string log = "# variant scene training_data_hash\n";
  std::map<std::string, std::set<std::string>> data_hashes;
  for (auto variant : variants) {
    results.push_back({"NAP-" + std::string(model::variant_name(variant)), false, {}});
    for (auto & c : results.back().method) {
      c = static_cast<char>(c == '-' ? c : std::toupper(static_cast<unsigned char>(c)));
    }
  }
  for (std::size_t v = 0; v < variants.size(); ++v) {
    for (const auto & test : tests) {
      RunConfig run_cfg = cfg;
      run_cfg.model.variant = variants[v];
      run_cfg.model.multimodal = false;
      run_cfg.test_scene = test;
      const auto plan = resolve_split(run_cfg, available);
      out << "ablation " << results[v].method << " test scene " << test << "\n";
      const TrainedRun run = train_on_split(run_cfg, scenes, plan);
      const fs::path dir = root / (std::string(model::variant_name(variants[v])) + "_" + test);
      write_run_directory(dir, run_cfg, run, scenes);
      log += std::string(model::variant_name(variants[v])) + " " + test + " " + run.log.data_hash + "\n";
      data_hashes[test].insert(run.log.data_hash);

      const auto samples = prepare_scenes(scenes, {test}, run_cfg.model, cfg.window_stride);
      eval::EvalOptions opts;
      opts.k = 1;
      opts.seed = eval_seed(cfg.train.seed);
      opts.threads = cfg.train.threads;
      results[v].scenes.push_back(eval::evaluate_model(run.model, samples, test, opts));

      if (variants[v] == model::Variant::kIsg && !samples.empty()) {
        // Spot check: replacing the scene crops by noise must not change ISg forecasts.
        numeric::Rng noise(numeric::mix_seed(cfg.train.seed, {0x4e4f495345}));
        std::size_t checked = 0;
        bool identical = true;
        for (std::size_t i = 0; i < samples.size() && checked < 16; i += std::max<std::size_t>(1, samples.size() / 16)) {
          model::PreparedSample noisy = samples[i];
          for (auto & c : noisy.crop.data()) {
            c = noise.uniform();
          }
          numeric::Rng r1(1), r2(1);
          identical = identical && model::forecast(samples[i], run.model, 1, r1).samples ==
                                     model::forecast(noisy, run.model, 1, r2).samples;
          ++checked;
        }
        out << "isg scene-noise probe on " << test << ": " << (identical ? "identical" : "CHANGED") << " ("
            << checked << " samples)\n";
        if (!identical) {
          throw NumericError("NAP-ISg forecasts depend on the scene crop");
        }
      }
      write_file(root / "ablation.txt", eval::format_variant_table(results));
      write_file(root / "ablate.log", log);
    }
  }
  for (const auto & [test, hashes] : data_hashes) {
    if (hashes.size() != 1) {
      throw DataError("ablation variants saw different training data for test scene " + test);
    }
  }
  out << "training data shared by all variants (hash logged in ablate.log)\n";
  out << eval::format_variant_table(results);
}

void cmd_increment_study(const RunConfig & cfg, std::ostream & out)
{
  cfg.validate();
  const auto available = list_scenes(cfg.data_dir);
  const SceneSet scenes = load_scenes(cfg.data_dir, available);
  const auto tests = scenes_to_run(cfg, available);
  struct Arm
  {
    std::string name;
    model::DecoderKind decoder;
  };
  const std::vector<Arm> arms{{"NAP", model::DecoderKind::kNonAutoregressive},
                              {"AR-reference", model::DecoderKind::kAutoregressive}};
  const fs::path root = cfg.out_dir;
  std::vector<eval::IncrementRow> rows;
  for (const auto & arm : arms) {
    eval::IncrementRow row{arm.name, {}, {}};
    for (std::size_t horizon : {std::size_t{8}, std::size_t{12}}) {
      eval::MethodResult result{arm.name, false, {}};
      for (const auto & test : tests) {
        RunConfig run_cfg = cfg;
        run_cfg.model.variant = model::Variant::kFull;
        run_cfg.model.decoder = arm.decoder;
        run_cfg.model.t_pred = horizon;
        run_cfg.test_scene = test;
        const auto plan = resolve_split(run_cfg, available);
        out << arm.name << " T_pred=" << horizon << " test scene " << test << "\n";
        const TrainedRun run = train_on_split(run_cfg, scenes, plan);
        write_run_directory(root / (std::string(model::decoder_name(arm.decoder)) + "_t" + std::to_string(horizon) +
                                    "_" + test),
                            run_cfg, run, scenes);
        eval::EvalOptions opts;
        opts.k = run_cfg.model.sample_count();
        opts.seed = eval_seed(cfg.train.seed);
        opts.threads = cfg.train.threads;
        const auto samples = prepare_scenes(scenes, {test}, run_cfg.model, cfg.window_stride);
        result.scenes.push_back(eval::evaluate_model(run.model, samples, test, opts));
      }
      (horizon == 8 ? row.short_horizon : row.long_horizon) = result.average();
    }
    rows.push_back(row);
  }
  const std::string table = eval::format_increment_table(rows);
  write_file(root / "increment.txt", table);
  out << table;
}

namespace
{
int exit_code_for(const std::exception & e)
{
  if (dynamic_cast<const ConfigError *>(&e)) {
    return kExitConfig;
  }
  if (dynamic_cast<const DataError *>(&e)) {
    return kExitData;
  }
  if (dynamic_cast<const NumericError *>(&e)) {
    return kExitNumeric;
  }
  if (dynamic_cast<const IncompatibleError *>(&e) || dynamic_cast<const ShapeError *>(&e)) {
    return kExitIncompatible;
  }
  return kExitFailure;
}

struct CommonFlags
{
  std::string config;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> variant;
  std::optional<std::size_t> k;
  std::optional<std::size_t> tpred;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> epochs;
  std::optional<std::string> data;
  std::optional<std::string> out;
  std::optional<std::string> test_scene;

  void add_to(CLI::App & app, bool model_flags)
  {
    app.add_option("--config", config, "run config file (key = value)");
    app.add_option("--set", sets, "override one config key, key=value");
    app.add_option("--seed", seed, "seed of every random stream");
    app.add_option("--threads", threads, "worker threads (results do not depend on it)");
    app.add_option("--data", data, "dataset directory");
    app.add_option("--out", out, "output directory");
    if (model_flags) {
      app.add_option("--variant", variant, "full, p, iss, isg or isc");
      app.add_option("--k", k, "samples per pedestrian");
      app.add_option("--tpred", tpred, "prediction length")->check(CLI::IsMember({8, 12}));
      app.add_option("--epochs", epochs, "training epochs");
      app.add_option("--test-scene", test_scene, "held-out scene id");
    }
  }

  RunConfig resolve() const
  {
    RunConfig cfg = config.empty() ? RunConfig{} : RunConfig::load(config);
    for (const auto & s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("--set expects key=value, got '" + s + "'");
      }
      auto trim = [](std::string v) {
        const auto a = v.find_first_not_of(' ');
        const auto b = v.find_last_not_of(' ');
        return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
      };
      cfg.apply(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
    if (seed) cfg.train.seed = *seed;
    if (variant) cfg.model.variant = model::parse_variant(*variant);
    if (k) {
      cfg.model.k = *k;
      cfg.model.multimodal = *k > 1;
    }
    if (tpred) cfg.model.t_pred = *tpred;
    if (threads) cfg.train.threads = *threads;
    if (epochs) cfg.train.epochs = *epochs;
    if (data) cfg.data_dir = *data;
    if (out) cfg.out_dir = *out;
    if (test_scene) cfg.test_scene = *test_scene;
    cfg.validate();
    return cfg;
  }
};
}  // namespace

int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  CLI::App app{"NAP non-autoregressive trajectory prediction"};
  app.require_subcommand(1);

  CommonFlags synth_flags;
  std::optional<std::size_t> synth_scenes, n_peds;
  std::optional<std::string> mix;
  auto * synth = app.add_subcommand("synth", "write synthetic crowd scenes");
  synth_flags.add_to(*synth, false);
  synth->add_option("--scenes", synth_scenes, "number of scenes");
  synth->add_option("--n-peds", n_peds, "pedestrians per scene");
  synth->add_option("--mix", mix, "behaviour mix: linear, turn, avoid, mixed or linear:w,turn:w,avoid:w");

  CommonFlags train_flags;
  bool loo = false;
  auto * train_cmd = app.add_subcommand("train", "train a model on a leave-one-out split");
  train_flags.add_to(*train_cmd, true);
  train_cmd->add_flag("--loo", loo, "train one model per held-out scene");

  EvalArgs eval_args;
  std::optional<std::uint64_t> eval_seed_flag;
  auto * eval_cmd = app.add_subcommand("eval", "evaluate checkpoints (ADE/FDE report)");
  eval_cmd->add_option("--checkpoint", eval_args.checkpoints, "checkpoint file (repeatable)")->required();
  eval_cmd->add_option("--scene", eval_args.scenes, "test scene per checkpoint (default: from run.cfg)");
  eval_cmd->add_option("--ar-checkpoint", eval_args.ar_checkpoints, "autoregressive reference per checkpoint");
  eval_cmd->add_option("--data", eval_args.data_dir, "dataset directory (default: from run.cfg)");
  eval_cmd->add_option("--out", eval_args.out_dir, "report directory");
  eval_cmd->add_option("--k", eval_args.k, "samples per pedestrian (best-of-K when > 1)");
  eval_cmd->add_option("--seed", eval_seed_flag, "seed of the latent noise");
  eval_cmd->add_option("--threads", eval_args.threads, "worker threads");
  eval_cmd->add_flag("--allow-train-eval", eval_args.allow_train_eval, "permit evaluating on a training scene");

  PredictArgs predict_args;
  std::optional<std::uint64_t> predict_seed;
  auto * predict_cmd = app.add_subcommand("predict", "forecast one observed track");
  predict_cmd->add_option("--checkpoint", predict_args.checkpoint, "checkpoint file")->required();
  predict_cmd->add_option("--track", predict_args.track, "trajectory file with the observed track")->required();
  predict_cmd->add_option("--grid", predict_args.grid, "scene grid file");
  predict_cmd->add_option("--ped", predict_args.ped, "pedestrian id (default: first in file)");
  predict_cmd->add_option("--steps", predict_args.steps, "1-based steps, e.g. 12 or 4,8,12, or all");
  predict_cmd->add_option("--k", predict_args.k, "samples");
  predict_cmd->add_option("--seed", predict_seed, "seed of the latent noise");
  predict_cmd->add_flag("--heatmap", predict_args.heatmap, "also export a heatmap density grid");
  predict_cmd->add_option("--heatmap-cells", predict_args.heatmap_cells, "heatmap cells per side");
  predict_cmd->add_option("--heatmap-cell-size", predict_args.heatmap_cell_size, "heatmap cell size (m)");
  predict_cmd->add_option("--out", predict_args.out_dir, "output directory (default: stdout)");

  CommonFlags ablate_flags;
  auto * ablate_cmd = app.add_subcommand("ablate", "train and compare the four ablation variants");
  ablate_flags.add_to(*ablate_cmd, true);

  CommonFlags increment_flags;
  auto * increment_cmd =
    app.add_subcommand("increment-study", "error increment from T_pred=8 to 12, NAP vs autoregressive");
  increment_flags.add_to(*increment_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp & e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError & e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (synth->parsed()) {
      RunConfig cfg = synth_flags.resolve();
      if (synth_scenes) cfg.synth_scenes = *synth_scenes;
      if (n_peds) cfg.synth_peds = *n_peds;
      if (mix) {
        cfg.apply("synth_mix", *mix);
      }
      cmd_synth(cfg, out);
    } else if (train_cmd->parsed()) {
      cmd_train(train_flags.resolve(), loo, out);
    } else if (eval_cmd->parsed()) {
      eval_args.seed = eval_seed_flag.value_or(0);
      cmd_eval(eval_args, out);
    } else if (predict_cmd->parsed()) {
      predict_args.seed = predict_seed.value_or(0);
      cmd_predict(predict_args, out);
    } else if (ablate_cmd->parsed()) {
      cmd_ablate(ablate_flags.resolve(), out);
    } else if (increment_cmd->parsed()) {
      cmd_increment_study(increment_flags.resolve(), out);
    }
  } catch (const std::exception & e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitOk;
}

}  // namespace nap::cli
