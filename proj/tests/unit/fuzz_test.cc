// Copyright 2026 The SkewSharp Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "skewsharp/fuzz.h"
#include "skewsharp/io.h"

namespace skewsharp {
namespace {

FuzzConfig small_config(std::uint64_t trials) {
  FuzzConfig cfg;
  cfg.trials = trials;
  cfg.seed = 42;
  return cfg;
}

TEST(Fuzz, SplitmixReferenceValue) {
  // First output of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Fuzz, ThreadCountDoesNotChangeTheReport) {
  FuzzConfig one = small_config(300);
  FuzzConfig four = one;
  four.threads = 4;
  const FuzzStats a = run_fuzz(one);
  const FuzzStats b = run_fuzz(four);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(a.violations(), 0u);
  EXPECT_EQ(a.errors, 0u);
  EXPECT_EQ(a.trials, 300u);
}

TEST(Fuzz, SeedChangesTheReport) {
  FuzzConfig a = small_config(50);
  FuzzConfig b = a;
  b.seed = 43;
  EXPECT_NE(run_fuzz(a).to_json(), run_fuzz(b).to_json());
}

TEST(Fuzz, InstancesRespectRankAndShape) {
  FuzzConfig cfg = small_config(1);
  cfg.dims = {5};
  cfg.n_obs = {3};
  cfg.ranks = {1, 2};
  for (std::uint64_t t = 0; t < 40; ++t) {
    const TrialInstance inst = draw_instance(cfg, t);
    EXPECT_EQ(inst.dim, 5);
    EXPECT_EQ(inst.x.size(), 3u);
    EXPECT_EQ(numerical_rank(HermitianMatrix(inst.rho.matrix())), inst.rank);
    EXPECT_NEAR(inst.rho.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(Fuzz, RelationKeysForTwoObservables) {
  FuzzConfig cfg = small_config(1);
  cfg.dims = {3};
  cfg.n_obs = {2};
  const TrialInstance inst = draw_instance(cfg, 0);
  const auto margins = evaluate_relations(inst.rho, inst.x, relation_groups(), FunctionTable::build(cfg.f_labels));
  std::set<std::string> keys;
  for (const auto& m : margins) keys.insert(m.key());
  for (const char* k : {"rs", "eq3", "eq7-psd", "eq8-schur", "eq4a", "eq4b", "eq9a", "eq9b:1", "eq9b:2", "eq10",
                        "furuichi", "eq16", "eq17", "eq18:wy", "eq19:sld", "wy-strongest:sld"}) {
    EXPECT_TRUE(keys.count(k)) << k;
  }
  EXPECT_FALSE(keys.count("wy-strongest:wyd:0.3"));
}

TEST(Fuzz, ConfigValidation) {
  auto code = [](FuzzConfig cfg) {
    try {
      cfg.validate();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParseError;
  };
  FuzzConfig c = small_config(0);
  EXPECT_EQ(code(c), ErrorCode::kInvalidConfig);
  c = small_config(10);
  c.dims = {1};
  EXPECT_EQ(code(c), ErrorCode::kInvalidConfig);
  c = small_config(10);
  c.groups = {"eq99"};
  EXPECT_EQ(code(c), ErrorCode::kInvalidConfig);
  c = small_config(10);
  c.threads = 0;
  EXPECT_EQ(code(c), ErrorCode::kInvalidConfig);
  c = small_config(10);
  c.f_labels = {"wyd:0.7"};
  EXPECT_EQ(code(c), ErrorCode::kInvalidFunction);
}

TEST(Fuzz, HistogramBins) {
  EXPECT_EQ(histogram_bin(Margin::vacuous_true(), kTolIneq), kHistogramBins - 1);
  EXPECT_EQ(histogram_bin(Margin::of(-1.0, 1.0), kTolIneq), 0u);
  EXPECT_EQ(histogram_bin(Margin::of(0.0, 1.0), kTolIneq), 1u);
  EXPECT_EQ(histogram_bin(Margin::of(0.5, 1.0), kTolIneq), 13u);
  EXPECT_EQ(histogram_bin(Margin::of(5.0, 1.0), kTolIneq), 14u);
}

TEST(Fuzz, ReproducerReplaysAsStateAndObservables) {
  FuzzConfig cfg = small_config(1);
  cfg.dims = {4};
  cfg.n_obs = {2};
  const TrialInstance inst = draw_instance(cfg, 7);
  const Margin m = check_refined_rs(inst.rho, inst.x).margins.at("eq3");
  const std::string text = reproducer_json(inst.rho, inst.x, "eq3", m, cfg.seed, 7);
  const StateFile s = parse_state(text);
  const ObservablesFile o = parse_observables(text);
  std::vector<HermitianMatrix> xs;
  for (const auto& ob : o.observables) xs.emplace_back(ob);
  const Margin replay = check_refined_rs(DensityMatrix(s.matrix), ObservableSet(xs)).margins.at("eq3");
  EXPECT_DOUBLE_EQ(replay.value, m.value);
}

TEST(Strength, OrderingAndInjectedFixture) {
  FuzzConfig cfg = small_config(200);
  const StrengthStudy s = strength_study(cfg, true);
  EXPECT_EQ(s.rows.size(), 200u);
  EXPECT_EQ(s.ordering_failures, 0u);
  for (const auto& row : s.rows) {
    EXPECT_LE(row.delta_sq, row.ub_9a * (1 + 1e-8) + 1e-12);
    EXPECT_LE(row.ub_9a, row.ub_refined * (1 + 1e-8) + 1e-12);
    EXPECT_LE(row.ub_refined, row.ub_rs * (1 + 1e-8) + 1e-12);
  }
  ASSERT_TRUE(s.q1_injected);
  EXPECT_TRUE(s.q1_margins.at("eq3").saturated());
  EXPECT_TRUE(s.q1_margins.at("eq9a").saturated());
  for (const auto& [key, m] : s.q1_margins) EXPECT_FALSE(m.violated()) << key;
  const std::string csv = s.to_csv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 201);
}

}  // namespace
}  // namespace skewsharp
