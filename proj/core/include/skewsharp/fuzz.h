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

// Randomized verification. Every trial draws its own generator from
// (seed, trial index), so results do not depend on scheduling and a single
// failing trial can be replayed in isolation.

#ifndef SKEWSHARP_FUZZ_H_
#define SKEWSHARP_FUZZ_H_

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "skewsharp/gaussian.h"
#include "skewsharp/gcov.h"

namespace skewsharp {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; also used to derive per-trial streams.
std::uint64_t splitmix64(std::uint64_t x);
Rng trial_stream(std::uint64_t seed, std::uint64_t trial);

/// Ginibre: G G^dag / Tr(G G^dag) with G complex normal, dim x rank.
DensityMatrix random_density(int dim, int rank, Rng& rng);
/// GUE: (G + G^dag)/2.
ObservableSet random_observables(int dim, int n, Rng& rng);
/// Haar-ish unitary from the QR of a complex Ginibre matrix.
CMatrix random_unitary(int dim, Rng& rng);
/// Bounded-below quadratic generator with spectral radius of beta N at most 3.
QuadraticHamiltonian random_quadratic(int n_modes, Rng& rng);

/// Relation groups accepted in FuzzConfig::groups.
const std::vector<std::string>& relation_groups();

struct FuzzConfig {
  std::vector<int> dims{2, 3, 4, 5, 6};
  std::vector<int> n_obs{1, 2, 3, 4};
  std::vector<int> ranks{1, 0};  // 0 means full rank
  std::uint64_t trials = 10000;
  std::uint64_t seed = 42;
  std::vector<std::string> groups = relation_groups();
  std::vector<std::string> f_labels{"wy", "sld", "wyd:0.3"};
  int threads = 1;
  std::string reproducer_dir;  // empty disables reproducer files
  double tol = kTolIneq;

  /// Throws kInvalidConfig naming the offending field.
  void validate() const;
};

/// Normalized-margin histogram edges: violated | <=1e-12 | decades up to 1 | >1 | vacuous.
inline constexpr std::size_t kHistogramBins = 16;
const std::array<std::string, kHistogramBins>& histogram_labels();
std::size_t histogram_bin(const Margin& m, double tol);

struct RelationStats {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double min_margin = INFINITY;  // normalized
  std::array<std::uint64_t, kHistogramBins> histogram{};
};

struct FuzzStats {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::string version;
  std::map<std::string, RelationStats> relations;
  std::uint64_t errors = 0;  // trials where a construction threw
  std::vector<std::string> reproducers;

  std::uint64_t violations() const;
  std::string to_json() const;
};

struct RelationMargin {
  std::string id;       // relation family: rs, eq3, ..., eq18, wy-strongest
  std::string variant;  // function label, diagonal index or kernel name; may be empty
  Margin margin;

  /// id, or id:variant when a variant is present.
  std::string key() const { return variant.empty() ? id : id + ":" + variant; }
};

/// Precomputed lambda_f per label so repeated evaluation skips the search.
struct FunctionTable {
  std::vector<MonotoneFunction> functions;
  std::vector<double> lambdas;
  std::vector<bool> strongest_class;  // f(x) <= f(0)(1 + sqrt x)^2
  static FunctionTable build(const std::vector<std::string>& labels);
};

/// Every relation of the requested groups on one instance. Two-observable
/// relations are evaluated only when x has exactly two members.
std::vector<RelationMargin> evaluate_relations(const DensityMatrix& rho, const ObservableSet& x,
                                               const std::vector<std::string>& groups,
                                               const FunctionTable& fns);

struct TrialInstance {
  int dim = 0;
  int n = 0;
  int rank = 0;
  DensityMatrix rho;
  ObservableSet x;
};
TrialInstance draw_instance(const FuzzConfig& cfg, std::uint64_t trial);

FuzzStats run_fuzz(const FuzzConfig& cfg);

/// JSON carrying the state and observables in the CLI file format plus the
/// relation that failed, so the file replays through `check`.
std::string reproducer_json(const DensityMatrix& rho, const ObservableSet& x, const std::string& relation,
                            const Margin& margin, std::uint64_t seed, std::uint64_t trial);

struct StrengthRow {
  std::uint64_t trial = 0;
  int dim = 0;
  double delta_sq = 0.0;
  double ub_rs = 0.0;       // |sigma|
  double ub_refined = 0.0;  // sqrt(|sigma + c| |sigma - c|)
  double ub_9a = 0.0;       // A - sqrt(A^2 - B)
  std::map<std::string, double> ub_19;  // sqrt(|sigma - c^f||sigma + c^f|) / (4 lambda f(0))
  bool ordering_holds = true;
};

struct StrengthStudy {
  std::vector<StrengthRow> rows;
  std::uint64_t ordering_failures = 0;
  bool q1_injected = false;
  std::map<std::string, Margin> q1_margins;  // eq3, eq9a, eq9b:1, eq9b:2, furuichi
  std::string to_csv() const;
};

/// n = 2 instances only. Asserts ub_9a <= ub_refined <= ub_rs and, for
/// functions in the strongest-WY class, ub_refined <= ub_19.
StrengthStudy strength_study(const FuzzConfig& cfg, bool inject_q1);

}  // namespace skewsharp

#endif  // SKEWSHARP_FUZZ_H_
