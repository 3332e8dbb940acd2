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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Expected values come from closed forms in the oracle library or from
// brute-force references, never from the code under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "skewsharp/fuzz.h"
#include "skewsharp/gaussian.h"

namespace {

using namespace skewsharp;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream os;
      os.precision(12);
      os << what << ": got " << got << ", want " << want << " +- " << tol;
      failures.push_back(os.str());
    }
  }
};

ObservableSet wrap(const std::vector<oracle::CMat>& xs) {
  std::vector<HermitianMatrix> hs;
  for (const auto& x : xs) hs.emplace_back(x);
  return ObservableSet(std::move(hs));
}

void q1_saturation(Criterion& c) {
  const DensityMatrix rho(oracle::qubit::state());
  const ObservableSet x = wrap({oracle::qubit::sigma_x(), oracle::qubit::sigma_y()});
  // Warm once so allocation of static tables does not count.
  check_refined_rs(rho, x);
  const auto t0 = Clock::now();
  const UncertaintyReport r = check_refined_rs(rho, x);
  const TwoObsReport t = two_obs_relations(rho, x[0], x[1]);
  const double elapsed = seconds_since(t0);

  const double quantum = std::pow(oracle::qubit::delta(), 4);  // |delta|^2 with |delta| = delta^2 for n = 2
  c.near(r.dets.plus * r.dets.minus, 1.0 / 16.0, 1e-12, "|sigma+c||sigma-c|");
  c.near(r.dets.delta * r.dets.delta, quantum, 1e-12, "|delta|^2");
  c.near(quantum, 1.0 / 16.0, 1e-15, "closed-form |delta|^2");
  c.expect(std::abs(r.margins.at("eq3").value) <= 1e-10, "eq3 margin above 1e-10");
  c.expect(t.eq9a.saturated(), "eq9a not saturated");
  c.expect(t.eq9b[0].saturated(), "eq9b (first) not saturated");
  c.expect(t.eq9b[1].saturated(), "eq9b (second) not saturated");
  c.expect(t.furuichi.saturated(), "refined two-observable bound not saturated");
  c.expect(elapsed < 1e-3, "runtime " + std::to_string(elapsed) + " s >= 1 ms");
}

void thermal_fixture(Criterion& c) {
  const double q = 0.25;
  const auto t0 = Clock::now();
  const auto h = QuadraticHamiltonian::single_mode(1.0, 0.0, -std::log(q));
  const SaturationResult s = saturation_check(h, 60);
  const double elapsed = seconds_since(t0);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double d = i == j ? 1.0 : 0.0;
      const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      c.near(s.numeric.sigma(i, j), d * oracle::thermal::variance(q), 1e-6, "sigma" + at);
      c.near(s.numeric.skew(i, j), d * oracle::thermal::skew(q), 1e-6, "skew" + at);
      c.near(s.numeric.classical(i, j), d * oracle::thermal::classical(q), 1e-6, "classical" + at);
    }
  }
  c.near(oracle::thermal::variance(q), 5.0 / 6.0, 1e-15, "closed-form variance");
  c.near(oracle::thermal::classical(q), 2.0 / 3.0, 1e-15, "closed-form classical part");
  c.expect(std::abs(s.delta_g_exact) <= 1e-10, "exact Delta_G above 1e-10");
  c.expect(std::abs(s.delta_g_numeric) <= 1e-6, "Fock Delta_G above 1e-6");
  c.expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s >= 5 s");
}

void fock_one(Criterion& c) {
  for (int cutoff : {20, 40}) {
    oracle::CMat rho = oracle::CMat::Zero(cutoff, cutoff);
    rho(1, 1) = 1.0;
    c.near(nongaussianity(DensityMatrix(rho), 1, cutoff), 5.0, 1e-8, "cutoff " + std::to_string(cutoff));
  }
}

void lambda_table(Criterion& c) {
  std::vector<std::string> labels{"sld", "wyd:0.1", "wyd:0.2", "wyd:0.3", "wyd:0.4", "wy"};
  for (const auto& label : labels) {
    const MonotoneFunction f = MonotoneFunction::from_label(label);
    const auto t0 = Clock::now();
    const LambdaResult r = lambda_f(f);
    const double elapsed = seconds_since(t0);
    const double want = label == "sld" ? 0.5 : 1.0;
    c.near(r.lambda, want, label == "sld" ? 1e-9 : 1e-6, "lambda(" + label + ")");
    c.near(r.lambda, oracle::lambda_brute([&f](double v) { return f(v); }), 1e-6, "brute lambda(" + label + ")");
    const double lo = 1.0 - f.f0();
    const double hi = std::min(1.0, 1.0 / (4.0 * f.f0()));
    c.expect(r.lambda >= lo - 1e-9 && r.lambda <= hi + 1e-9, "bounds for " + label);
    c.expect(elapsed < 1.0, "runtime for " + label + " >= 1 s");
  }
}

void fuzz_gate(Criterion& c) {
  FuzzConfig cfg;
  cfg.trials = 10000;
  cfg.seed = 42;
  cfg.threads = 1;
  cfg.tol = 1e-8;
  const auto t0 = Clock::now();
  const FuzzStats a = run_fuzz(cfg);
  const double elapsed = seconds_since(t0);
  c.expect(a.violations() == 0, std::to_string(a.violations()) + " violations");
  c.expect(a.errors == 0, std::to_string(a.errors) + " trials raised errors");
  for (const char* key : {"rs", "eq3", "eq4a", "eq4b", "eq7-psd", "eq8-schur", "eq9a", "eq9b:1", "eq9b:2", "eq10",
                          "furuichi", "eq16", "eq17", "eq18:wy", "eq18:sld", "eq18:wyd:0.3", "eq19:wy", "eq19:sld",
                          "eq19:wyd:0.3", "wy-strongest:sld"}) {
    const auto it = a.relations.find(key);
    c.expect(it != a.relations.end() && it->second.trials > 0, std::string("relation ") + key + " never evaluated");
  }
  const FuzzStats b = run_fuzz(cfg);
  c.expect(a.to_json() == b.to_json(), "second run with the same seed differs");
  c.expect(elapsed < 600.0, "runtime " + std::to_string(elapsed) + " s >= 10 min");
}

void pure_states(Criterion& c) {
  int bad = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    Rng rng = trial_stream(1001, t);
    const int dim = 2 + static_cast<int>(t % 5);
    const DensityMatrix rho(oracle::random_state(dim, 1, rng));
    std::vector<oracle::CMat> xs;
    for (int k = 0; k < 1 + static_cast<int>(t % 4); ++k) xs.push_back(oracle::random_hermitian(dim, rng));
    const UncertaintyReport r = check_refined_rs(rho, wrap(xs));
    // The refined left side |sigma + c||sigma - c| against the squared RS side |sigma|^2.
    const double sq = oracle::laplace_det(oracle::covariance(rho.matrix(), xs));
    const bool ok = max_abs(r.classical) <= 1e-8 &&
                    std::abs(r.dets.plus * r.dets.minus - sq * sq) <= 1e-8 * std::max(1.0, sq * sq);
    bad += ok ? 0 : 1;
  }
  c.expect(bad == 0, std::to_string(bad) + " pure states failed");
}

void concavity(Criterion& c) {
  auto root = [](const oracle::CMat& rho, const std::vector<oracle::CMat>& xs) {
    const oracle::RMat cl = oracle::covariance(rho, xs) - oracle::wy_skew(rho, xs);
    return std::pow(std::max(0.0, oracle::laplace_det(cl)), 1.0 / static_cast<double>(xs.size()));
  };
  int bad = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    std::mt19937_64 rng(splitmix64(7000 + t));
    const int dim = 2 + static_cast<int>(t % 4);
    const oracle::CMat a = oracle::random_state(dim, dim, rng);
    const oracle::CMat b = oracle::random_state(dim, 1 + static_cast<int>(t % dim), rng);
    std::vector<oracle::CMat> xs;
    for (int k = 0; k < 1 + static_cast<int>(t % 3); ++k) xs.push_back(oracle::random_hermitian(dim, rng));
    const double w = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const oracle::CMat mix = w * a + (1.0 - w) * b;
    // The library's classical part on the mixture, against the oracle on the endpoints.
    const ObservableSet x = wrap(xs);
    const DensityMatrix mrho(mix);
    const RMatrix cl = covariance_matrix(mrho, x) - wy_skew_matrix(mrho, x);
    const double lhs = std::pow(std::max(0.0, cl.determinant()), 1.0 / static_cast<double>(xs.size()));
    const double rhs = w * root(a, xs) + (1.0 - w) * root(b, xs);
    bad += lhs >= rhs - 1e-9 * std::max(1.0, std::abs(rhs)) ? 0 : 1;
  }
  c.expect(bad == 0, std::to_string(bad) + " mixing triples failed");
}

void gaussian_identity(Criterion& c) {
  int bad_identity = 0, bad_converse = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng = trial_stream(8000, t);
    const auto h = random_quadratic(1 + static_cast<int>(t % 3), rng);
    const GaussianMoments m = exact_moments(h, t);
    if (!(std::abs(moments_delta_g(m)) <= 1e-10)) ++bad_identity;
    const auto back = generator_from_covariance(m.C, h.n_modes());
    const GaussianMoments m2 = exact_moments(back);
    if (!(max_abs(CMatrix(m2.C - m.C)) <= 1e-6)) ++bad_converse;
  }
  c.expect(bad_identity == 0, std::to_string(bad_identity) + " generators miss the identity at 1e-10");
  c.expect(bad_converse == 0, std::to_string(bad_converse) + " converse round trips off by more than 1e-6");
}

void reductions(Criterion& c) {
  int bad = 0, bad_f = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    std::mt19937_64 rng(splitmix64(9000 + t));
    const int dim = 2 + static_cast<int>(t % 5);
    const oracle::CMat rho_m = oracle::random_state(dim, 1 + static_cast<int>(t % dim), rng);
    std::vector<oracle::CMat> xs;
    for (int k = 0; k < 1 + static_cast<int>(t % 4); ++k) xs.push_back(oracle::random_hermitian(dim, rng));
    const DensityMatrix rho(rho_m);
    const ObservableSet x = wrap(xs);
    const double e1 = max_abs(CMatrix(g_covariance(rho, x, kernels::mean()) -
                                      oracle::covariance(rho_m, xs).cast<Complex>()));
    const double e2 = max_abs(CMatrix(g_covariance(rho, x, kernels::eps()) -
                                      oracle::commutator_matrix(rho_m, xs).cast<Complex>()));
    const double e3 = max_abs(CMatrix(g_covariance(rho, x, f_star(MonotoneFunction::wyd(0.5))) -
                                      oracle::wy_skew(rho_m, xs).cast<Complex>()));
    bad += e1 <= 1e-10 && e2 <= 1e-10 && e3 <= 1e-10 ? 0 : 1;

    const double eq3 = check_refined_rs(rho, x).margins.at("eq3").value;
    const MetricAdjustedReport ma = check_metric_adjusted(rho, x, MonotoneFunction::wyd(0.5));
    // With f = wyd:0.5 the mean kernel is (sigma + c)/2 and I^f = sigma - c, so
    // the left side of the first relation carries a factor 2^-n.
    const double n = static_cast<double>(xs.size());
    const bool f_ok = std::abs(ma.eq19.value - eq3) <= 1e-8 &&
                      std::abs(std::pow(2.0, n) * ma.eq18.value - eq3) <= 1e-8;
    bad_f += f_ok ? 0 : 1;
  }
  c.expect(bad == 0, std::to_string(bad) + " instances miss a kernel reduction at 1e-10");
  c.expect(bad_f == 0, std::to_string(bad_f) + " instances where f = wyd:0.5 departs from the refined relation");
}

void alpha_inequality(Criterion& c) {
  const std::vector<double> grid = log_grid(1e-8, 1e8, 10000);
  for (double alpha : {0.1, 0.25, 0.4, 0.5}) {
    int bad = 0;
    for (double v : grid) {
      // Independent evaluation with slack 1e-12 next to the library check.
      const double lhs = std::abs(std::pow(v, alpha) - std::pow(v, 1.0 - alpha));
      const double rhs = (1.0 - 2.0 * alpha) * std::abs(1.0 - v);
      if (lhs > rhs + 1e-12 * std::max(1.0, rhs)) ++bad;
    }
    c.expect(bad == 0, std::to_string(bad) + " grid failures at alpha " + std::to_string(alpha));
    c.expect(alpha_inequality_check(alpha, grid), "library check fails at alpha " + std::to_string(alpha));
  }
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> entries{
      {1, "qubit saturation fixture", q1_saturation},
      {2, "single-mode thermal fixture q = 0.25, cutoff 60", thermal_fixture},
      {3, "Fock |1> non-Gaussianity equals 5", fock_one},
      {4, "lambda_f table and bounds", lambda_table},
      {5, "fuzz gate, 1e4 trials, zero violations, deterministic", fuzz_gate},
      {6, "pure states have no classical part", pure_states},
      {7, "concavity of the classical determinant root", concavity},
      {8, "Gaussian exact identity and converse round trip", gaussian_identity},
      {9, "kernel reductions and the wyd:0.5 member", reductions},
      {10, "alpha inequality on a 1e4-point grid", alpha_inequality},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Criterion c{e.id, e.title, {}};
    const auto t0 = Clock::now();
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.failures.push_back(std::string("exception: ") + ex.what());
    }
    const double elapsed = seconds_since(t0);
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%.3f s)\n", ok ? "PASS" : "FAIL", e.id, e.title, elapsed);
    for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
