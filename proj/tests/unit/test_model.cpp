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

#include "fixtures.hpp"
#include "nap/errors.hpp"
#include "nap/model/batch.hpp"
#include "nap/model/checkpoint.hpp"
#include "nap/model/forecast.hpp"
#include "nap/model/nap_model.hpp"
#include "nap/numeric/grad_check.hpp"
#include "nap/numeric/ops.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

namespace
{
using namespace nap;
using namespace nap::model;
using numeric::Rng;
using numeric::Tensor;
namespace ops = numeric::ops;
using nap::test::random_prepared;
using nap::test::randomize_params;
using nap::test::random_tensor;
using nap::test::tiny_config;

void zero_params(NapModel & m)
{
  for (auto & p : m.params()) {
    p.value.fill(0.0);
  }
}

void set_param(NapModel & m, const std::string & name, double value)
{
  m.params().at(name).value.fill(value);
}

NapConfig with_variant(NapConfig c, Variant v)
{
  c.variant = v;
  return c;
}

bool same_forecast(const ForecastSet & a, const ForecastSet & b)
{
  return a.samples == b.samples;
}

// ---------------------------------------------------------------- config

TEST(Config, KeyValueRoundTrip)
{
  NapConfig c = tiny_config();
  c.variant = Variant::kIsc;
  c.k = 7;
  EXPECT_EQ(NapConfig::from_key_values(c.to_key_values()), c);
  c.variant = Variant::kFull;
  c.multimodal = true;
  c.decoder = DecoderKind::kAutoregressive;
  EXPECT_EQ(NapConfig::from_key_values(c.to_key_values()), c);
  c.variant = Variant::kP;
  EXPECT_THROW(c.validate(), ConfigError);
  c.decoder = DecoderKind::kNonAutoregressive;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, RejectsInvalidValues)
{
  NapConfig c = tiny_config();
  c.d_z = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(parse_variant("nap-x"), ConfigError);
  for (auto v : {Variant::kFull, Variant::kP, Variant::kIss, Variant::kIsg, Variant::kIsc}) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
}

TEST(Config, SampleCountFollowsMode)
{
  NapConfig c;
  EXPECT_EQ(c.sample_count(), 1u);
  c.multimodal = true;
  EXPECT_EQ(c.sample_count(), 20u);
}

// ---------------------------------------------------------------- trajectory encoder

TEST(TrajectoryEncoder, ZeroParametersGiveZeroEncoding)
{
  NapModel m(tiny_config(), 1);
  zero_params(m);
  Rng rng(1);
  const auto ps = random_prepared(m.config(), rng);
  numeric::Graph g;
  const Var h = m.encode_trajectory(g, make_batch(ps, m.config()));
  EXPECT_EQ(h.value().values(), std::vector<double>(m.config().d_h, 0.0));
}

TEST(TrajectoryEncoder, DifferentPathsDifferentEncodings)
{
  NapModel m(tiny_config(), 2);
  Rng rng(2);
  std::vector<std::vector<double>> seen;
  for (int i = 0; i < 20; ++i) {
    const auto ps = random_prepared(m.config(), rng);
    numeric::Graph g;
    const auto h = m.encode_trajectory(g, make_batch(ps, m.config())).value().values();
    for (const auto & other : seen) {
      EXPECT_NE(h, other);
    }
    seen.push_back(h);
  }
}

TEST(TrajectoryEncoder, GradientMatchesFiniteDifferences)
{
  NapModel m(tiny_config(), 3);
  Rng rng(3);
  const auto ps = random_prepared(m.config(), rng);
  const Batch batch = make_batch(ps, m.config());
  auto f = [&](numeric::Graph & g, numeric::ParamStore &) {
    return ops::sum_all(ops::square(m.encode_trajectory(g, batch)));
  };
  const auto r = numeric::grad_check(f, m.params());
  EXPECT_LT(r.max_relative_error, 1e-4) << r.worst_parameter;
}

// ---------------------------------------------------------------- social encoder

PreparedSample without_neighbours(PreparedSample ps)
{
  for (auto & step : ps.sample.neighbors) {
    step.clear();
  }
  return ps;
}

TEST(SocialEncoder, NoNeighboursAndZeroBiasesGiveZero)
{
  NapModel m(tiny_config(), 4);
  for (auto & p : m.params()) {
    if (p.name.rfind("social.", 0) == 0 && p.name.size() > 5 && p.name.substr(p.name.size() - 5) == ".bias") {
      p.value.fill(0.0);
    }
  }
  Rng rng(4);
  const auto ps = without_neighbours(random_prepared(m.config(), rng));
  numeric::Graph g;
  const Var s = m.encode_social(g, make_batch(ps, m.config()));
  EXPECT_EQ(s.value().values(), std::vector<double>(m.config().d_g, 0.0));
}

TEST(SocialEncoder, InvariantToNeighbourOrder)
{
  NapModel m(tiny_config(), 5);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto ps = random_prepared(m.config(), rng, 2 + rng.below(5));
    numeric::Graph g;
    const auto a = m.encode_social(g, make_batch(ps, m.config())).value();
    for (auto & step : ps.sample.neighbors) {
      std::reverse(step.begin(), step.end());
      if (step.size() > 2) {
        std::swap(step[0], step[1]);
      }
    }
    const auto b = m.encode_social(g, make_batch(ps, m.config())).value();
    EXPECT_LE(numeric::max_abs_diff(a, b), 1e-6);
  }
}

TEST(SocialEncoder, DuplicatedNeighbourMatchesSingle)
{
  NapModel m(tiny_config(), 6);
  Rng rng(6);
  auto once = random_prepared(m.config(), rng, 1);
  auto twice = once;
  for (auto & step : twice.sample.neighbors) {
    step.push_back(step.front());
  }
  numeric::Graph g;
  EXPECT_EQ(m.encode_social(g, make_batch(once, m.config())).value(),
            m.encode_social(g, make_batch(twice, m.config())).value());
}

// ---------------------------------------------------------------- scene encoder

TEST(SceneEncoder, ZeroCropZeroBiasesGiveZero)
{
  NapModel m(tiny_config(), 7);
  for (const char * name : {"scene.conv1.bias", "scene.conv2.bias", "scene.head.bias"}) {
    set_param(m, name, 0.0);
  }
  Rng rng(7);
  auto ps = random_prepared(m.config(), rng);
  ps.crop.fill(0.0);
  numeric::Graph g;
  EXPECT_EQ(m.encode_scene(g, make_batch(ps, m.config())).value().values(),
            std::vector<double>(m.config().d_s, 0.0));
}

TEST(SceneEncoder, SensitiveToCropContentAndObstaclePosition)
{
  NapModel m(tiny_config(), 8);
  Rng rng(8);
  auto ps = random_prepared(m.config(), rng);
  const std::size_t s = m.config().crop_size;
  ps.crop.fill(0.0);
  for (std::size_t r = 1; r < 3; ++r) {
    for (std::size_t c = 1; c < 3; ++c) {
      ps.crop[r * s + c] = 1.0;
    }
  }
  auto shifted = ps;
  shifted.crop.fill(0.0);
  for (std::size_t r = 1; r < 3; ++r) {
    for (std::size_t c = 2; c < 4; ++c) {
      shifted.crop[r * s + c] = 1.0;
    }
  }
  auto changed = ps;
  changed.crop[2 * s + 2] = 0.0;
  numeric::Graph g;
  const auto base = m.encode_scene(g, make_batch(ps, m.config())).value();
  EXPECT_NE(base, m.encode_scene(g, make_batch(shifted, m.config())).value());
  EXPECT_NE(base, m.encode_scene(g, make_batch(changed, m.config())).value());
}

TEST(SceneEncoder, WrongCropShapeThrows)
{
  NapModel m(tiny_config(), 9);
  Rng rng(9);
  auto ps = random_prepared(m.config(), rng);
  ps.crop = Tensor({1, 3, 3});
  EXPECT_THROW(make_batch(ps, m.config()), ShapeError);
}

// ---------------------------------------------------------------- context generators

TEST(PersonalContext, ZeroInZeroOut)
{
  NapModel m(tiny_config(), 10);
  zero_params(m);
  numeric::Graph g;
  const Var c = m.personal_context(g, g.constant(Tensor({1, m.config().d_h})));
  EXPECT_EQ(c.value().values(), std::vector<double>(m.config().d_p, 0.0));
}

TEST(PersonalContext, IdentityWeightsCopyHidden)
{
  NapConfig cfg = tiny_config();
  cfg.d_p = cfg.d_h;
  NapModel m(cfg, 11);
  auto & w = m.params().at("pcg.weight").value;
  w.fill(0.0);
  for (std::size_t i = 0; i < cfg.d_h; ++i) {
    w.at(i, i) = 1.0;
  }
  set_param(m, "pcg.bias", 0.0);
  Rng rng(11);
  const Tensor h = random_tensor({1, cfg.d_h}, rng);
  numeric::Graph g;
  EXPECT_EQ(m.personal_context(g, g.constant(h)).value(), h);
}

TEST(PersonalContext, GradientMatchesFiniteDifferences)
{
  NapModel m(tiny_config(), 12);
  Rng rng(12);
  const Tensor h = random_tensor({3, m.config().d_h}, rng);
  auto f = [&](numeric::Graph & g, numeric::ParamStore &) {
    return ops::sum_all(ops::square(m.personal_context(g, g.constant(h))));
  };
  EXPECT_LT(numeric::grad_check(f, m.params()).max_relative_error, 1e-4);
}

EncodedState constant_state(numeric::Graph & g, const NapConfig & cfg, const Tensor & h, const Tensor & gs,
                            const Tensor & s)
{
  EncodedState st;
  st.h = g.constant(h);
  st.g = g.constant(gs);
  st.s = g.constant(s);
  st.state = ops::concat_cols(std::vector<Var>{st.h, *st.g, *st.s});
  (void)cfg;
  return st;
}

TEST(InteractionContext, ZeroInputZeroParamsGiveZeroContexts)
{
  NapModel m(tiny_config(), 13);
  zero_params(m);
  const auto & c = m.config();
  numeric::Graph g;
  const auto st = constant_state(g, c, Tensor({1, c.d_h}), Tensor({1, c.d_g}), Tensor({1, c.d_s}));
  const auto steps = m.interaction_contexts(g, st);
  ASSERT_EQ(steps.size(), c.t_pred);
  for (const auto & v : steps) {
    EXPECT_EQ(v.value().values(), std::vector<double>(c.d_c, 0.0));
  }
}

TEST(InteractionContext, DefaultShapeIsTwelveByThirtyTwo)
{
  NapModel m(NapConfig{}, 14);
  EXPECT_EQ(m.params().at("icg.fc3.weight").value.dim(0), 12u * 32u);
  numeric::Graph g;
  const auto st = constant_state(g, m.config(), Tensor({1, 32}), Tensor({1, 32}), Tensor({1, 32}));
  const auto steps = m.interaction_contexts(g, st);
  ASSERT_EQ(steps.size(), 12u);
  std::size_t total = 0;
  for (const auto & v : steps) {
    EXPECT_EQ(v.shape(), (numeric::Shape{1, 32}));
    total += v.value().size();
  }
  EXPECT_EQ(total, 384u);
}

TEST(InteractionContext, SocialFeatureChangesSomeStep)
{
  NapModel m(tiny_config(), 15);
  const auto & c = m.config();
  Rng rng(15);
  const Tensor h = random_tensor({1, c.d_h}, rng), s = random_tensor({1, c.d_s}, rng);
  numeric::Graph g;
  const auto a = m.interaction_contexts(g, constant_state(g, c, h, random_tensor({1, c.d_g}, rng), s));
  const auto b = m.interaction_contexts(g, constant_state(g, c, h, random_tensor({1, c.d_g}, rng), s));
  bool differs = false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    differs = differs || a[t].value() != b[t].value();
  }
  EXPECT_TRUE(differs);
}

// ---------------------------------------------------------------- latent

TEST(Latent, ZeroNoiseGivesMean)
{
  NapModel m(tiny_config(), 16);
  Rng rng(16);
  const auto ps = random_prepared(m.config(), rng);
  numeric::Graph g;
  const auto st = m.encode(g, make_batch(ps, m.config()));
  const auto lv = m.latent(g, st, g.constant(Tensor({1, m.config().d_z})));
  EXPECT_EQ(lv.z.value(), lv.mu.value());
}

TEST(Latent, ZeroLogVarianceGivesUnitSigma)
{
  NapModel m(tiny_config(), 17);
  set_param(m, "latent.logvar.weight", 0.0);
  set_param(m, "latent.logvar.bias", 0.0);
  Rng rng(17);
  const auto ps = random_prepared(m.config(), rng);
  numeric::Graph g;
  const auto st = m.encode(g, make_batch(ps, m.config()));
  const auto lv = m.latent(g, st, g.constant(random_tensor({1, m.config().d_z}, rng)));
  EXPECT_EQ(lv.sigma.value().values(), std::vector<double>(m.config().d_z, 1.0));
}

TEST(Latent, ReparameterizationIsExactAndSigmaPositive)
{
  NapModel m(tiny_config(), 18);
  Rng rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ps = random_prepared(m.config(), rng);
    numeric::Graph g;
    const auto st = m.encode(g, make_batch(ps, m.config()));
    const Tensor eps = numeric::gaussian_sample(rng, m.config().d_z);
    const auto lv = m.latent(g, st, g.constant(Tensor({1, m.config().d_z}, eps.values())));
    for (std::size_t j = 0; j < m.config().d_z; ++j) {
      EXPECT_GT(lv.sigma.value()[j], 0.0);
      EXPECT_EQ(lv.z.value()[j], lv.mu.value()[j] + lv.sigma.value()[j] * eps[j]);
    }
  }
}

TEST(Latent, MonteCarloMeanMatchesMu)
{
  NapModel m(tiny_config(), 19);
  const auto & c = m.config();
  const std::size_t n = 10000;
  Rng rng(19);
  const Tensor row = random_tensor({1, c.state_width()}, rng);
  Tensor rows({n, c.state_width()});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < c.state_width(); ++j) {
      rows.at(i, j) = row[j];
    }
  }
  Tensor eps({n, c.d_z});
  for (auto & v : eps.data()) {
    v = rng.normal();
  }
  numeric::Graph g(false);
  EncodedState st;
  st.h = g.constant(rows);
  st.state = st.h;
  const auto lv = m.latent(g, st, g.constant(eps));
  for (std::size_t j = 0; j < c.d_z; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mean += lv.z.value().at(i, j);
    }
    mean /= static_cast<double>(n);
    const double mu = lv.mu.value().at(0, j), sigma = lv.sigma.value().at(0, j);
    EXPECT_LE(std::abs(mean - mu), 3.0 * sigma / std::sqrt(static_cast<double>(n))) << "dim " << j;
  }
}

TEST(Latent, NoiseShapeMismatchThrows)
{
  NapModel m(tiny_config(), 20);
  Rng rng(20);
  numeric::Graph g;
  const auto st = m.encode(g, make_batch(random_prepared(m.config(), rng), m.config()));
  EXPECT_THROW(m.latent(g, st, g.constant(Tensor({1, m.config().d_z + 1}))), ShapeError);
}

// ---------------------------------------------------------------- decoder

NapConfig scalar_config()
{
  NapConfig c = tiny_config();
  c.d_c = 1;
  c.d_p = 1;
  c.d_z = 1;
  return c;
}

TEST(DecodeStep, ZeroInputsZeroParamsGiveOrigin)
{
  NapModel m(scalar_config(), 21);
  zero_params(m);
  numeric::Graph g;
  ContextSet ctx;
  ctx.personal = g.constant(Tensor({1, 1}));
  ctx.steps.assign(m.config().t_pred, g.constant(Tensor({1, 1})));
  const Var p = m.decode_step(g, ctx, 0, g.constant(Tensor({1, 1})));
  EXPECT_EQ(p.value().values(), (std::vector<double>{0.0, 0.0}));
}

TEST(DecodeStep, ScalarToyMatchesHandArithmetic)
{
  NapModel m(scalar_config(), 22);
  // Input order is step context, personal context, latent.
  m.params().at("decoder.weight").value = Tensor({2, 3}, {1.0, 2.0, 3.0, -1.0, 0.5, 0.0});
  m.params().at("decoder.bias").value = Tensor({2}, {0.25, -0.5});
  numeric::Graph g;
  ContextSet ctx;
  ctx.personal = g.constant(Tensor::matrix({{4.0}}));
  for (std::size_t t = 0; t < m.config().t_pred; ++t) {
    ctx.steps.push_back(g.constant(Tensor::matrix({{static_cast<double>(t) + 1.0}})));
  }
  const Var z = g.constant(Tensor::matrix({{-2.0}}));
  const Var p = m.decode_step(g, ctx, 1, z);
  // c_t = 2, c_p = 4, z = -2.
  EXPECT_EQ(p.value()[0], 1.0 * 2 + 2.0 * 4 + 3.0 * -2 + 0.25);
  EXPECT_EQ(p.value()[1], -1.0 * 2 + 0.5 * 4 + 0.0 * -2 - 0.5);
  EXPECT_EQ(m.decode_step(g, ctx, 1, z).value(), p.value());
  EXPECT_THROW(m.decode_step(g, ctx, m.config().t_pred, z), ShapeError);
}

// ---------------------------------------------------------------- forecast

TEST(Forecast, StepOrderDoesNotMatter)
{
  NapModel m(tiny_config(), 23);
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ps = random_prepared(m.config(), rng);
    auto forward = all_steps(m.config());
    std::vector<std::size_t> backward(forward.rbegin(), forward.rend());
    Rng r1(1), r2(1);
    const auto a = forecast(ps, m, 1, r1, forward);
    const auto b = forecast(ps, m, 1, r2, backward);
    const std::size_t n = forward.size();
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(a.samples[0][j], b.samples[0][n - 1 - j]);
    }
  }
}

TEST(Forecast, SingleStepEqualsRowOfFullForecast)
{
  NapModel m(NapConfig{}, 24);
  Rng rng(24);
  const auto ps = random_prepared(m.config(), rng);
  for (std::size_t k : {std::size_t{1}, std::size_t{5}}) {
    Rng r1(9), r2(9);
    const auto full = forecast(ps, m, k, r1);
    const std::vector<std::size_t> last{11};
    const auto one = forecast(ps, m, k, r2, last);
    for (std::size_t s = 0; s < k; ++s) {
      EXPECT_EQ(one.samples[s][0], full.samples[s][11]);
    }
  }
}

TEST(Forecast, AnySubsetOfStepsMatchesFullForecast)
{
  NapModel m(tiny_config(), 25);
  Rng rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ps = random_prepared(m.config(), rng);
    std::vector<std::size_t> subset;
    for (std::size_t t = 0; t < m.config().t_pred; ++t) {
      if (rng.uniform() < 0.5) {
        subset.push_back(t);
      }
    }
    const std::uint64_t seed = rng.next_u64();
    Rng r1(seed), r2(seed);
    const auto full = forecast(ps, m, 3, r1);
    const auto part = forecast(ps, m, 3, r2, subset);
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t j = 0; j < subset.size(); ++j) {
        EXPECT_EQ(part.samples[s][j], full.samples[s][subset[j]]);
      }
    }
  }
}

TEST(Forecast, TwentySamplesReproducible)
{
  NapConfig c = tiny_config();
  c.multimodal = true;
  NapModel m(c, 26);
  Rng rng(26);
  const auto ps = random_prepared(c, rng);
  Rng r1(77), r2(77), r3(78);
  const auto a = forecast(ps, m, 20, r1), b = forecast(ps, m, 20, r2), other = forecast(ps, m, 20, r3);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, other.samples);
  EXPECT_EQ(a.k(), 20u);
  EXPECT_EQ(a.latents.size(), 20u);
  for (const auto & d : a.latents) {
    for (std::size_t j = 0; j < c.d_z; ++j) {
      EXPECT_EQ(d.z[j], d.mu[j] + d.sigma[j] * d.eps[j]);
    }
  }
}

TEST(Forecast, FirstSampleUsesZeroNoiseAndPrefixProperty)
{
  NapModel m(tiny_config(), 27);
  Rng rng(27);
  const auto ps = random_prepared(m.config(), rng);
  Rng r1(5), r2(5);
  const auto five = forecast(ps, m, 5, r1), six = forecast(ps, m, 6, r2);
  EXPECT_EQ(five.latents[0].z, five.latents[0].mu);
  for (std::size_t s = 0; s < 5; ++s) {
    EXPECT_EQ(five.samples[s], six.samples[s]);
  }
}

TEST(Forecast, BatchedMatchesOneByOne)
{
  NapModel m(tiny_config(), 28);
  Rng rng(28);
  std::vector<PreparedSample> samples;
  for (int i = 0; i < 6; ++i) {
    samples.push_back(random_prepared(m.config(), rng, i % 3));
  }
  std::vector<const PreparedSample *> ptrs;
  std::vector<Rng> rngs;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ptrs.push_back(&samples[i]);
    rngs.emplace_back(100 + i);
  }
  const auto steps = all_steps(m.config());
  const auto batched = forecast_batch(ptrs, m, 4, rngs, steps);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Rng r(100 + i);
    const auto single = forecast(samples[i], m, 4, r);
    for (std::size_t s = 0; s < 4; ++s) {
      for (std::size_t t = 0; t < steps.size(); ++t) {
        EXPECT_NEAR(batched[i].samples[s][t].x, single.samples[s][t].x, 1e-12);
        EXPECT_NEAR(batched[i].samples[s][t].y, single.samples[s][t].y, 1e-12);
      }
    }
  }
}

TEST(Forecast, InvalidRequestsThrow)
{
  NapModel m(tiny_config(), 29);
  Rng rng(29);
  const auto ps = random_prepared(m.config(), rng);
  EXPECT_THROW(forecast(ps, m, 0, rng), ConfigError);
  const std::vector<std::size_t> beyond{m.config().t_pred};
  EXPECT_THROW(forecast(ps, m, 1, rng, beyond), ConfigError);
}

TEST(Forecast, WorldSampleUndoesNormalization)
{
  NapModel m(tiny_config(), 30);
  Rng rng(30);
  const auto ps = random_prepared(m.config(), rng);
  const auto f = forecast(ps, m, 1, rng);
  const auto world = f.world_sample(0);
  for (std::size_t t = 0; t < world.size(); ++t) {
    EXPECT_NEAR(world[t].x, f.samples[0][t].x + ps.sample.norm_offset.x, 1e-12);
    EXPECT_NEAR(world[t].y, f.samples[0][t].y + ps.sample.norm_offset.y, 1e-12);
  }
}

// ---------------------------------------------------------------- variants

TEST(Variants, FullAndPersonalOnlyDiffer)
{
  Rng rng(31);
  const auto ps = random_prepared(tiny_config(), rng);
  NapModel full(tiny_config(), 31), personal(with_variant(tiny_config(), Variant::kP), 31);
  Rng r1(1), r2(1);
  EXPECT_FALSE(same_forecast(forecast(ps, full, 1, r1), forecast(ps, personal, 1, r2)));
}

TEST(Variants, InvarianceUnderExcludedInputs)
{
  Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ps = random_prepared(tiny_config(), rng);
    auto other_crop = ps;
    for (auto & v : other_crop.crop.data()) {
      v = 1.0 - v;
    }
    auto other_neighbours = ps;
    for (auto & step : other_neighbours.sample.neighbors) {
      step.push_back({rng.uniform(-4, 4), rng.uniform(-4, 4)});
      step.front().x += 1.5;
    }
    auto run = [](const NapModel & m, const PreparedSample & s) {
      Rng r(3);
      return forecast(s, m, 1, r);
    };
    NapModel isg(with_variant(tiny_config(), Variant::kIsg), 40 + trial);
    NapModel isc(with_variant(tiny_config(), Variant::kIsc), 40 + trial);
    NapModel p(with_variant(tiny_config(), Variant::kP), 40 + trial);
    NapModel iss(with_variant(tiny_config(), Variant::kIss), 40 + trial);
    for (NapModel * m : {&isg, &isc, &p, &iss}) {
      randomize_params(m->params(), rng);
    }
    EXPECT_TRUE(same_forecast(run(isg, ps), run(isg, other_crop)));
    EXPECT_FALSE(same_forecast(run(isg, ps), run(isg, other_neighbours)));
    EXPECT_TRUE(same_forecast(run(isc, ps), run(isc, other_neighbours)));
    EXPECT_FALSE(same_forecast(run(isc, ps), run(isc, other_crop)));
    EXPECT_TRUE(same_forecast(run(p, ps), run(p, other_crop)));
    EXPECT_TRUE(same_forecast(run(p, ps), run(p, other_neighbours)));
    EXPECT_FALSE(same_forecast(run(iss, ps), run(iss, other_crop)));
    EXPECT_FALSE(same_forecast(run(iss, ps), run(iss, other_neighbours)));
  }
}

TEST(Variants, AblationsDropTheLatentPath)
{
  for (auto v : {Variant::kP, Variant::kIss, Variant::kIsg, Variant::kIsc}) {
    const NapModel m(with_variant(tiny_config(), v), 33);
    EXPECT_FALSE(m.params().find("latent.mu.weight").has_value()) << variant_name(v);
  }
  const NapModel iss(with_variant(tiny_config(), Variant::kIss), 33);
  EXPECT_FALSE(iss.params().find("pcg.weight").has_value());
  const NapModel p(with_variant(tiny_config(), Variant::kP), 33);
  EXPECT_FALSE(p.params().find("icg.fc1.weight").has_value());
}

// ---------------------------------------------------------------- gradients end to end

TEST(EndToEnd, GradientCheckForEveryVariantAndDecoder)
{
  Rng rng(34);
  std::vector<NapConfig> configs;
  for (auto v : {Variant::kFull, Variant::kP, Variant::kIss, Variant::kIsg, Variant::kIsc}) {
    configs.push_back(with_variant(tiny_config(), v));
  }
  NapConfig ar = tiny_config();
  ar.decoder = DecoderKind::kAutoregressive;
  configs.push_back(ar);
  for (const auto & c : configs) {
    NapModel m(c, 35);
    randomize_params(m.params(), rng);
    std::vector<PreparedSample> samples{random_prepared(c, rng, 2), random_prepared(c, rng, 0)};
    std::vector<const PreparedSample *> ptrs{&samples[0], &samples[1]};
    const Batch batch = make_batch(ptrs, c);
    const Tensor eps = random_tensor({2, c.d_z}, rng);
    auto f = [&](numeric::Graph & g, numeric::ParamStore &) {
      const auto pred = m.predict(g, batch, g.constant(eps));
      std::vector<Var> terms;
      for (std::size_t t = 0; t < pred.size(); ++t) {
        terms.push_back(ops::sum_all(ops::square(ops::sub(pred[t], g.constant(batch.future[t])))));
      }
      Var total = terms.front();
      for (std::size_t t = 1; t < terms.size(); ++t) {
        total = ops::add(total, terms[t]);
      }
      return total;
    };
    const auto r = numeric::grad_check(f, m.params());
    EXPECT_LT(r.max_relative_error, 1e-4)
      << variant_name(c.variant) << "/" << decoder_name(c.decoder) << " " << r.worst_parameter << "["
      << r.worst_index << "] analytic " << r.analytic << " numeric " << r.numeric;
  }
}

// ---------------------------------------------------------------- checkpoints

TEST(Checkpoint, RoundTripIsExact)
{
  NapConfig c = tiny_config();
  c.multimodal = true;
  c.k = 4;
  const NapModel m(c, 36);
  const std::string bytes = serialize_checkpoint(m);
  const NapModel back = deserialize_checkpoint(bytes);
  EXPECT_EQ(back.config(), c);
  ASSERT_EQ(back.params().size(), m.params().size());
  for (std::size_t i = 0; i < m.params().size(); ++i) {
    EXPECT_EQ(back.params()[i].name, m.params()[i].name);
    EXPECT_EQ(back.params()[i].value, m.params()[i].value);
  }
  EXPECT_EQ(serialize_checkpoint(back), bytes);
  EXPECT_EQ(bytes.substr(0, 7), "NAPCKPT");
}

TEST(Checkpoint, ForecastsMatchAfterReload)
{
  const NapModel m(tiny_config(), 37);
  const auto path = std::filesystem::temp_directory_path() / "nap_model_test.nap";
  save_checkpoint(m, path);
  const NapModel back = load_checkpoint(path);
  std::filesystem::remove(path);
  Rng rng(37);
  const auto ps = random_prepared(m.config(), rng);
  Rng r1(4), r2(4);
  EXPECT_EQ(forecast(ps, m, 3, r1).samples, forecast(ps, back, 3, r2).samples);
}

TEST(Checkpoint, TruncationAndCorruptionRejected)
{
  const std::string bytes = serialize_checkpoint(NapModel(tiny_config(), 38));
  for (std::size_t cut : {std::size_t{0}, std::size_t{5}, std::size_t{20}, bytes.size() / 2, bytes.size() - 1}) {
    EXPECT_THROW(deserialize_checkpoint(std::string_view(bytes).substr(0, cut)), IncompatibleError) << cut;
  }
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(deserialize_checkpoint(bad_magic), IncompatibleError);
  EXPECT_THROW(deserialize_checkpoint(bytes + "x"), IncompatibleError);
  EXPECT_THROW(load_checkpoint("/nonexistent/nap/model.nap"), Error);
}

TEST(Checkpoint, MismatchedConfigurationRejected)
{
  const NapModel m(tiny_config(), 39);
  NapConfig wider = tiny_config();
  wider.d_h += 1;
  EXPECT_THROW(NapModel(wider, m.params()), IncompatibleError);
  EXPECT_THROW(NapModel(with_variant(tiny_config(), Variant::kP), m.params()), IncompatibleError);
}

TEST(Model, InitialisationIsSeeded)
{
  const NapModel a(tiny_config(), 40), b(tiny_config(), 40), c(tiny_config(), 41);
  EXPECT_EQ(serialize_checkpoint(a), serialize_checkpoint(b));
  EXPECT_NE(serialize_checkpoint(a), serialize_checkpoint(c));
}

}  // namespace
