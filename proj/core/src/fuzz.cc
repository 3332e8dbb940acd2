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

#include "skewsharp/fuzz.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "skewsharp/io.h"
#include "skewsharp/version.h"

namespace skewsharp {

namespace {

using nlohmann::json;

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss;
  CMatrix g(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) g(r, c) = Complex(gauss(rng), gauss(rng));
  }
  return g;
}

bool wants(const std::vector<std::string>& groups, const std::string& g) {
  return std::find(groups.begin(), groups.end(), g) != groups.end();
}

json matrix_rows(const CMatrix& m) { return json::parse(matrix_to_json(m)); }

DensityMatrix q1_state() {
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = 0.75;
  rho(1, 1) = 0.25;
  return DensityMatrix(rho);
}

ObservableSet q1_observables() {
  CMatrix sx(2, 2), sy(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  return ObservableSet({HermitianMatrix(sx), HermitianMatrix(sy)});
}

struct TrialOutcome {
  std::vector<RelationMargin> margins;
  bool error = false;
  std::string error_what;
};

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng trial_stream(std::uint64_t seed, std::uint64_t trial) {
  return Rng(splitmix64(seed ^ splitmix64(trial)));
}

DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw Error(ErrorCode::kInvalidConfig, "need 1 <= rank <= dim");
  }
  const CMatrix g = ginibre(dim, rank, rng);
  CMatrix rho = g * g.adjoint();
  rho = (rho + rho.adjoint().eval()) / 2.0;
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

ObservableSet random_observables(int dim, int n, Rng& rng) {
  if (dim < 1 || n < 1) throw Error(ErrorCode::kInvalidConfig, "need dim >= 1 and n >= 1");
  std::vector<HermitianMatrix> xs;
  for (int k = 0; k < n; ++k) {
    const CMatrix g = ginibre(dim, dim, rng);
    xs.emplace_back(CMatrix((g + g.adjoint()) / 2.0));
  }
  return ObservableSet(std::move(xs));
}

CMatrix random_unitary(int dim, Rng& rng) {
  const CMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

QuadraticHamiltonian random_quadratic(int n_modes, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const CMatrix a = ginibre(n_modes, n_modes, rng);
  CMatrix h = a * a.adjoint() / static_cast<double>(n_modes) +
              0.2 * CMatrix::Identity(n_modes, n_modes);
  h = (h + h.adjoint().eval()) / 2.0;
  const double h_min =
      Eigen::SelfAdjointEigenSolver<CMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  CMatrix k = ginibre(n_modes, n_modes, rng);
  k = (k + k.transpose().eval()) / 2.0;
  const double k_norm = Eigen::JacobiSVD<CMatrix>(k).singularValues()(0);
  // ||k|| < lambda_min(h) keeps [[h, k], [conj k, conj h]] positive definite.
  k *= 0.9 * unit(rng) * h_min / std::max(k_norm, 1e-300);
  const QuadraticHamiltonian unit_beta = QuadraticHamiltonian::from_blocks(h, k, 1.0);
  const double radius = Eigen::ComplexEigenSolver<CMatrix>(unit_beta.N(), false)
                            .eigenvalues()
                            .cwiseAbs()
                            .maxCoeff();
  const double target = 0.1 + 2.9 * unit(rng);
  return unit_beta.with_beta(target / radius);
}

const std::vector<std::string>& relation_groups() {
  static const std::vector<std::string> groups{"rs",    "refined", "weak-chain", "two-obs",
                                               "g-psd", "eq18",    "eq19",       "wy-strongest"};
  return groups;
}

void FuzzConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); };
  if (trials < 1) fail("trials must be >= 1");
  if (dims.empty() || n_obs.empty() || ranks.empty()) fail("dims, n_obs and ranks must be non-empty");
  for (int d : dims) {
    if (d < 2 || d > 8) fail("dim " + std::to_string(d) + " outside 2..8");
  }
  for (int n : n_obs) {
    if (n < 1 || n > 5) fail("n_obs " + std::to_string(n) + " outside 1..5");
  }
  const int max_dim = *std::max_element(dims.begin(), dims.end());
  for (int r : ranks) {
    if (r < 0 || r > max_dim) fail("rank " + std::to_string(r) + " outside 1..dim (0 = full)");
  }
  for (const auto& g : groups) {
    if (!wants(relation_groups(), g)) fail("unknown relation group '" + g + "'");
  }
  if (threads < 1) fail("threads must be >= 1");
  if (!(tol > 0.0)) fail("tol must be positive");
  for (const auto& f : f_labels) MonotoneFunction::from_label(f);
}

const std::array<std::string, kHistogramBins>& histogram_labels() {
  static const std::array<std::string, kHistogramBins> labels{
      "violated", "<=1e-12",  "1e-12..1e-11", "1e-11..1e-10", "1e-10..1e-9", "1e-9..1e-8",
      "1e-8..1e-7", "1e-7..1e-6", "1e-6..1e-5", "1e-5..1e-4", "1e-4..1e-3", "1e-3..1e-2",
      "1e-2..1e-1", "1e-1..1", ">1", "vacuous"};
  return labels;
}

std::size_t histogram_bin(const Margin& m, double tol) {
  if (m.vacuous) return kHistogramBins - 1;
  if (m.violated(tol)) return 0;
  const double a = std::abs(m.normalized());
  if (a <= 1e-12) return 1;
  if (a > 1.0) return kHistogramBins - 2;
  // Decade (10^-(k+1), 10^-k] maps to bin 13 - k.
  const int k = std::clamp(static_cast<int>(std::floor(-std::log10(a))), 0, 11);
  return static_cast<std::size_t>(13 - k);
}

std::uint64_t FuzzStats::violations() const {
  std::uint64_t total = 0;
  for (const auto& [id, s] : relations) total += s.violations;
  return total;
}

std::string FuzzStats::to_json() const {
  json doc;
  doc["version"] = version;
  doc["seed"] = seed;
  doc["trials"] = trials;
  doc["errors"] = errors;
  doc["violations"] = violations();
  json rel = json::object();
  for (const auto& [id, s] : relations) {
    json hist = json::object();
    for (std::size_t b = 0; b < kHistogramBins; ++b) {
      if (s.histogram[b] != 0) hist[histogram_labels()[b]] = s.histogram[b];
    }
    rel[id] = {{"trials", s.trials},
               {"violations", s.violations},
               {"min_margin", std::isfinite(s.min_margin) ? json(s.min_margin) : json(nullptr)},
               {"histogram", hist}};
  }
  doc["relations"] = rel;
  doc["reproducers"] = reproducers;
  return doc.dump(1) + "\n";
}

FunctionTable FunctionTable::build(const std::vector<std::string>& labels) {
  FunctionTable t;
  for (const auto& label : labels) {
    t.functions.push_back(MonotoneFunction::from_label(label));
    t.lambdas.push_back(lambda_f(t.functions.back()).lambda);
    t.strongest_class.push_back(in_wy_strongest_class(t.functions.back()));
  }
  return t;
}

std::vector<RelationMargin> evaluate_relations(const DensityMatrix& rho, const ObservableSet& x,
                                               const std::vector<std::string>& groups,
                                               const FunctionTable& fns) {
  std::vector<RelationMargin> out;
  auto add = [&out](std::string id, Margin m, std::string variant = "") {
    out.push_back({std::move(id), std::move(variant), m});
  };

  if (wants(groups, "rs") || wants(groups, "refined") || wants(groups, "weak-chain")) {
    const UncertaintyReport r = check_refined_rs(rho, x);
    if (wants(groups, "rs")) add("rs", r.margins.at("rs"));
    if (wants(groups, "refined")) {
      add("eq3", r.margins.at("eq3"));
      add("eq7-psd", r.margins.at("eq7-psd"));
      add("eq8-schur", r.margins.at("eq8-schur"));
    }
    if (wants(groups, "weak-chain")) {
      add("eq4a", r.margins.at("eq4a"));
      add("eq4b", r.margins.at("eq4b"));
    }
  }
  if (wants(groups, "two-obs") && x.size() == 2) {
    const TwoObsReport t = two_obs_relations(rho, x[0], x[1]);
    add("eq9a", t.eq9a);
    add("eq9b", t.eq9b[0], "1");
    add("eq9b", t.eq9b[1], "2");
    add("eq10", t.eq10);
    add("furuichi", t.furuichi);
  }
  if (wants(groups, "g-psd")) {
    const CMatrix lg = build_Lg(rho, x, kernels::mean(), kernels::eps());
    add("eq16", Margin::of(is_psd(HermitianMatrix(lg)).min_eigenvalue, max_abs(lg)));
    add("eq17", check_g_triple(rho, x, kernels::mean(), kernels::mean(), kernels::eps()));
    const auto triple = kernels::product_triple([](double v) { return v; },
                                                [](double v) { return std::sqrt(v); }, 1.0, "xsqrt");
    add("eq17", check_g_triple(rho, x, triple.plus, triple.minus, triple.zero), "product");
  }
  const bool need18 = wants(groups, "eq18");
  const bool need19 = wants(groups, "eq19");
  for (std::size_t i = 0; i < fns.functions.size(); ++i) {
    const MonotoneFunction& f = fns.functions[i];
    if (need18 || need19) {
      const MetricAdjustedReport m = check_metric_adjusted(rho, x, f, fns.lambdas[i]);
      if (need18) add("eq18", m.eq18, f.label());
      if (need19) add("eq19", m.eq19, f.label());
    }
    if (wants(groups, "wy-strongest") && fns.strongest_class[i]) {
      add("wy-strongest", wy_strongest_check(rho, x, f), f.label());
    }
  }
  return out;
}

TrialInstance draw_instance(const FuzzConfig& cfg, std::uint64_t trial) {
  Rng rng = trial_stream(cfg.seed, trial);
  auto pick = [&rng](const std::vector<int>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  const int dim = pick(cfg.dims);
  const int n = pick(cfg.n_obs);
  const int r = pick(cfg.ranks);
  const int rank = r == 0 ? dim : std::min(r, dim);
  DensityMatrix rho = random_density(dim, rank, rng);
  ObservableSet x = random_observables(dim, n, rng);
  return TrialInstance{dim, n, rank, std::move(rho), std::move(x)};
}

std::string reproducer_json(const DensityMatrix& rho, const ObservableSet& x, const std::string& relation,
                            const Margin& margin, std::uint64_t seed, std::uint64_t trial) {
  json doc;
  doc["dim"] = rho.dim();
  doc["matrix"] = matrix_rows(rho.matrix());
  doc["observables"] = json::array();
  for (const auto& xk : x.items()) doc["observables"].push_back(matrix_rows(xk.matrix()));
  doc["relation"] = relation;
  doc["margin"] = std::isfinite(margin.value) ? json(margin.value) : json(nullptr);
  doc["scale"] = margin.scale;
  doc["seed"] = seed;
  doc["trial"] = trial;
  return doc.dump(1) + "\n";
}

FuzzStats run_fuzz(const FuzzConfig& cfg) {
  cfg.validate();
  const FunctionTable fns = FunctionTable::build(cfg.f_labels);
  std::vector<TrialOutcome> outcomes(cfg.trials);

  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (std::uint64_t t = next++; t < cfg.trials; t = next++) {
      TrialOutcome& o = outcomes[t];
      try {
        const TrialInstance inst = draw_instance(cfg, t);
        o.margins = evaluate_relations(inst.rho, inst.x, cfg.groups, fns);
      } catch (const Error& e) {
        o.error = true;
        o.error_what = e.what();
      }
    }
  };
  const int nthreads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(cfg.trials)));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Aggregate in trial order so the result is independent of scheduling.
  FuzzStats stats;
  stats.seed = cfg.seed;
  stats.trials = cfg.trials;
  stats.version = kVersion;
  auto dump = [&](std::uint64_t t, const std::string& relation, const Margin& m) {
    if (cfg.reproducer_dir.empty()) return;
    const TrialInstance inst = draw_instance(cfg, t);
    std::filesystem::create_directories(cfg.reproducer_dir);
    std::string name = relation;
    std::replace(name.begin(), name.end(), ':', '_');
    const std::string path =
        (std::filesystem::path(cfg.reproducer_dir) / ("trial" + std::to_string(t) + "_" + name + ".json"))
            .string();
    std::ofstream(path) << reproducer_json(inst.rho, inst.x, relation, m, cfg.seed, t);
    stats.reproducers.push_back(path);
  };
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    const TrialOutcome& o = outcomes[t];
    if (o.error) {
      ++stats.errors;
      dump(t, "error", Margin::of(NAN, 1.0));
      continue;
    }
    for (const RelationMargin& rm : o.margins) {
      RelationStats& s = stats.relations[rm.key()];
      ++s.trials;
      ++s.histogram[histogram_bin(rm.margin, cfg.tol)];
      if (!rm.margin.vacuous) s.min_margin = std::min(s.min_margin, rm.margin.normalized());
      if (rm.margin.violated(cfg.tol)) {
        ++s.violations;
        dump(t, rm.key(), rm.margin);
      }
    }
  }
  return stats;
}

std::string StrengthStudy::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "trial,dim,delta_sq,ub_rs,ub_refined,ub_9a";
  if (!rows.empty()) {
    for (const auto& [label, v] : rows.front().ub_19) os << ",ub_19[" << label << "]";
  }
  os << ",ordering_holds\n";
  for (const auto& r : rows) {
    os << r.trial << ',' << r.dim << ',' << r.delta_sq << ',' << r.ub_rs << ',' << r.ub_refined << ','
       << r.ub_9a;
    for (const auto& [label, v] : r.ub_19) os << ',' << v;
    os << ',' << (r.ordering_holds ? "true" : "false") << '\n';
  }
  return os.str();
}

StrengthStudy strength_study(const FuzzConfig& cfg, bool inject_q1) {
  FuzzConfig c = cfg;
  c.n_obs = {2};
  c.validate();
  const FunctionTable fns = FunctionTable::build(c.f_labels);
  StrengthStudy study;

  if (inject_q1) {
    study.q1_injected = true;
    const DensityMatrix rho = q1_state();
    const ObservableSet x = q1_observables();
    const UncertaintyReport r = check_refined_rs(rho, x);
    const TwoObsReport t = two_obs_relations(rho, x[0], x[1]);
    study.q1_margins["eq3"] = r.margins.at("eq3");
    study.q1_margins["eq9a"] = t.eq9a;
    study.q1_margins["eq9b:1"] = t.eq9b[0];
    study.q1_margins["eq9b:2"] = t.eq9b[1];
    study.q1_margins["furuichi"] = t.furuichi;
  }

  for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
    const TrialInstance inst = draw_instance(c, trial);
    const RMatrix sigma = covariance_matrix(inst.rho, inst.x);
    const RMatrix classical = classical_matrix(sigma, wy_skew_matrix(inst.rho, inst.x));
    const double delta = -commutator_matrix(inst.rho, inst.x)(0, 1).imag();
    const TwoObsReport t = two_obs_from_matrices(sigma, classical, delta);

    StrengthRow row;
    row.trial = trial;
    row.dim = inst.dim;
    row.delta_sq = delta * delta;
    row.ub_rs = sigma.determinant();
    row.ub_refined = std::sqrt(std::max(0.0, t.B));
    row.ub_9a = t.bound_9a;
    const double slack = 1e-9 * std::max(1.0, row.ub_rs);
    bool ok = row.ub_9a <= row.ub_refined + slack && row.ub_refined <= row.ub_rs + slack;
    for (std::size_t i = 0; i < fns.functions.size(); ++i) {
      const MonotoneFunction& f = fns.functions[i];
      const RMatrix cf = sigma - f_skew_matrix(inst.rho, inst.x, f);
      const double lhs = (sigma - cf).determinant() * (sigma + cf).determinant();
      const double ub = std::sqrt(std::max(0.0, lhs)) / (4.0 * fns.lambdas[i] * f.f0());
      row.ub_19[f.label()] = ub;
      if (fns.strongest_class[i]) ok = ok && row.ub_refined <= ub + slack;
    }
    row.ordering_holds = ok;
    if (!ok) ++study.ordering_failures;
    study.rows.push_back(std::move(row));
  }
  return study;
}

}  // namespace skewsharp
