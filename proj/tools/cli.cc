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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewsharp/fuzz.h"
#include "skewsharp/io.h"
#include "skewsharp/version.h"

namespace skewsharp::cli {

namespace {

using nlohmann::json;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// --tol beats SKEWSHARP_TOL beats the built-in default.
double resolve_tol(double flag) {
  if (!std::isnan(flag)) {
    if (!(flag > 0.0)) throw Error(ErrorCode::kInvalidConfig, "--tol must be positive");
    return flag;
  }
  if (const char* env = std::getenv("SKEWSHARP_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw Error(ErrorCode::kInvalidConfig, std::string("SKEWSHARP_TOL='") + env + "' is not a positive number");
    }
    return v;
  }
  return kTolIneq;
}

// "re", "re,im" or "re+imi" style is not needed; accept the first two.
Complex parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {re, 0.0};
    }
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParseError, "cannot parse complex number '" + s + "' (use re or re,im)");
  }
}

std::string verdict(const Margin& m, double tol) {
  if (m.violated(tol)) return "violated";
  if (m.saturated()) return "saturated";
  return "holds";
}

json margin_json(const Margin& m, double tol) {
  json j;
  j["value"] = m.vacuous ? json(nullptr) : json(m.value);
  j["scale"] = m.scale;
  j["normalized"] = m.vacuous ? json(nullptr) : json(m.normalized());
  j["vacuous"] = m.vacuous;
  j["verdict"] = verdict(m, tol);
  return j;
}

json split(const CMatrix& m) {
  return {{"re", json::parse(matrix_to_json(RMatrix(m.real())))},
          {"im", json::parse(matrix_to_json(RMatrix(m.imag())))}};
}
json split(const RMatrix& m) { return split(CMatrix(m.cast<Complex>())); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidConfig, "cannot write '" + path + "'");
  out << text;
}

json tolerances_json(double tol) {
  return {{"tol_herm", kTolHerm}, {"tol_eig", kTolEig},   {"tol_psd", kTolPsd},
          {"tol_trace", kTolTrace}, {"tol_ineq", tol}, {"sat_tol", kSatTol}};
}

std::string margin_line(const std::string& key, const Margin& m, double tol) {
  std::ostringstream os;
  os << std::left << std::setw(22) << key << std::setw(10) << verdict(m, tol);
  os << (m.vacuous ? std::string("vacuous") : "margin=" + fmt("%.6e", m.normalized()));
  return os.str();
}

struct CheckArgs {
  std::string state;
  std::string observables;
  std::vector<std::string> f_labels;
  bool two_obs = false;
  std::string json_out;
  double tol = NAN;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const double tol = resolve_tol(a.tol);
  const std::string state_text = read_file(a.state);
  const std::string obs_text = read_file(a.observables);
  const StateFile sf = parse_state(state_text);
  const ObservablesFile of = parse_observables(obs_text);
  const DensityMatrix rho(sf.matrix);
  std::vector<HermitianMatrix> hs;
  for (std::size_t k = 0; k < of.observables.size(); ++k) {
    try {
      hs.emplace_back(of.observables[k]);
    } catch (const Error& e) {
      throw Error(e.code(), "observable " + std::to_string(k) + ": " + e.what());
    }
  }
  const ObservableSet x(std::move(hs));
  if (x.dim() != rho.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "state dim " + std::to_string(rho.dim()) +
                                                   " != observable dim " + std::to_string(x.dim()));
  }
  if (a.two_obs && x.size() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "--two-obs needs exactly two observables");
  }
  const FunctionTable fns = FunctionTable::build(a.f_labels);

  std::vector<std::string> groups{"rs", "refined", "weak-chain", "g-psd", "eq18", "eq19", "wy-strongest"};
  if (a.two_obs) groups.push_back("two-obs");
  const UncertaintyReport r = check_refined_rs(rho, x);
  const std::vector<RelationMargin> margins = evaluate_relations(rho, x, groups, fns);

  bool violated = false;
  json jm = json::object();
  for (const auto& rm : margins) {
    violated = violated || rm.margin.violated(tol);
    jm[rm.key()] = margin_json(rm.margin, tol);
    out << margin_line(rm.key(), rm.margin, tol) << "\n";
  }
  out << "delta_G=" << fmt("%.12e", r.delta_g) << "\n";
  out << "result=" << (violated ? "violated" : "holds") << "\n";

  if (!a.json_out.empty()) {
    json doc;
    doc["tool"] = "skewsharp";
    doc["version"] = kVersion;
    doc["inputs"] = {{"state", {{"path", a.state}, {"fnv1a", fnv1a_hex(state_text)}}},
                     {"observables", {{"path", a.observables}, {"fnv1a", fnv1a_hex(obs_text)}}},
                     {"f", a.f_labels},
                     {"two_obs", a.two_obs}};
    // Echo in the input formats so the report itself replays through `check`.
    doc["dim"] = rho.dim();
    doc["matrix"] = json::parse(matrix_to_json(rho.matrix()));
    doc["observables"] = json::array();
    for (const auto& xk : x.items()) doc["observables"].push_back(json::parse(matrix_to_json(xk.matrix())));
    if (!of.labels.empty()) doc["labels"] = of.labels;
    doc["tolerances"] = tolerances_json(tol);
    doc["matrices"] = {{"sigma", split(r.sigma)},         {"delta", split(r.delta)},
                       {"i_delta", split(r.i_delta)},     {"skew", split(r.skew)},
                       {"classical", split(r.classical)}, {"L", split(r.L)}};
    doc["determinants"] = {{"sigma", r.dets.sigma}, {"delta", r.dets.delta},
                           {"skew", r.dets.skew},   {"classical", r.dets.classical},
                           {"plus", r.dets.plus},   {"minus", r.dets.minus}};
    doc["margins"] = jm;
    doc["delta_G"] = r.delta_g;
    doc["rank_L"] = r.rank_L;
    doc["schur_range_residual"] = r.schur_range_residual;
    json lam = json::object();
    for (std::size_t i = 0; i < fns.functions.size(); ++i) lam[fns.functions[i].label()] = fns.lambdas[i];
    doc["lambda"] = lam;
    doc["exit_code"] = violated ? kViolated : kOk;
    write_text(a.json_out, doc.dump(1) + "\n");
  }
  return violated ? kViolated : kOk;
}

int cmd_lambda(const std::string& label, const std::string& grid_dump, std::ostream& out) {
  const MonotoneFunction f = MonotoneFunction::from_label(label);
  const LambdaResult r = lambda_f(f);
  out << "lambda=" << fmt("%.12g", r.lambda) << " lower=" << fmt("%.12g", r.lower_bound)
      << " upper=" << fmt("%.12g", r.upper_bound)
      << " conjecture_match=" << (r.conjecture_match ? "true" : "false") << "\n";
  if (!grid_dump.empty()) {
    std::ostringstream csv;
    csv << "x,F\n" << std::setprecision(17);
    for (const auto& [xv, fv] : lambda_objective_samples(f)) csv << xv << ',' << fv << '\n';
    write_text(grid_dump, csv.str());
  }
  return kOk;
}

struct GaussianArgs {
  int modes = 1;
  std::vector<double> omega{1.0};
  std::vector<std::string> xi;
  std::string coupling = "0";
  double beta = 1.0;
  int cutoff = 60;
  std::string json_out;
  double tol = NAN;
};

int cmd_gaussian(const GaussianArgs& a, std::ostream& out) {
  const double tol = resolve_tol(a.tol);
  auto xi_at = [&a](std::size_t i) { return i < a.xi.size() ? parse_complex(a.xi[i]) : Complex(0.0); };
  if (a.omega.empty()) throw Error(ErrorCode::kInvalidGenerator, "--omega needs at least one value");
  std::optional<QuadraticHamiltonian> h;
  if (a.modes == 1) {
    h = QuadraticHamiltonian::single_mode(a.omega[0], xi_at(0), a.beta);
  } else if (a.modes == 2) {
    const double w2 = a.omega.size() > 1 ? a.omega[1] : a.omega[0];
    h = QuadraticHamiltonian::two_mode(a.omega[0], w2, parse_complex(a.coupling), xi_at(0), xi_at(1), a.beta);
  } else {
    throw Error(ErrorCode::kUnsupportedModeCount, "--modes must be 1 or 2");
  }
  if (!h->bounded_below()) {
    throw Error(ErrorCode::kInvalidGenerator, "H is not bounded below (squeezing too strong)");
  }
  const SaturationResult s = saturation_check(*h, a.cutoff);
  // The truncated path is trusted down to its geometric tail estimate.
  const double numeric_tol = 1e-6 + 100.0 * s.tail_mass;
  const bool exact_ok = std::abs(s.delta_g_exact) <= tol * s.exact_scale;
  const bool numeric_ok = std::abs(s.delta_g_numeric) <= numeric_tol * s.exact_scale;

  out << "delta_G_exact=" << fmt("%.6e", s.delta_g_exact) << "\n";
  out << "delta_G_numeric=" << fmt("%.6e", s.delta_g_numeric) << "\n";
  out << "tail_mass=" << fmt("%.3e", s.tail_mass) << "\n";
  if (s.exact.perturbed) out << "warning: generator perturbed because M - I was singular\n";
  out << "result=" << (exact_ok && numeric_ok ? "saturated" : "not-saturated") << "\n";

  if (!a.json_out.empty()) {
    json doc;
    doc["tool"] = "skewsharp";
    doc["version"] = kVersion;
    doc["inputs"] = {{"modes", a.modes}, {"omega", a.omega}, {"xi", a.xi},   {"coupling", a.coupling},
                     {"beta", a.beta},   {"cutoff", a.cutoff}};
    doc["tolerances"] = tolerances_json(tol);
    doc["tolerances"]["numeric_delta_G"] = numeric_tol;
    doc["exact"] = {{"C", split(s.exact.C)},
                    {"sigma", split(s.exact.sigma)},
                    {"classical", split(s.exact.c)},
                    {"i_delta", split(s.exact.delta)},
                    {"perturbed", s.exact.perturbed},
                    {"via_expm", s.exact.via_expm},
                    {"min_mode_gap", s.exact.min_mode_gap},
                    {"cond_m_minus_i", s.exact.cond_m_minus_i}};
    doc["numeric"] = {{"sigma", split(s.numeric.sigma)},
                      {"classical", split(s.numeric.classical)},
                      {"skew", split(s.numeric.skew)},
                      {"i_delta", split(s.numeric.i_delta)}};
    doc["delta_G_exact"] = s.delta_g_exact;
    doc["delta_G_numeric"] = s.delta_g_numeric;
    doc["delta_G_scale"] = s.exact_scale;
    doc["tail_mass"] = s.tail_mass;
    doc["saturated"] = exact_ok && numeric_ok;
    write_text(a.json_out, doc.dump(1) + "\n");
  }
  return exact_ok && numeric_ok ? kOk : kViolated;
}

int cmd_nongauss(const std::string& state_path, int modes, int cutoff, std::ostream& out) {
  const DensityMatrix rho(load_state(state_path).matrix);
  if (cutoff <= 0) {
    // Infer the cutoff from dim = cutoff^modes.
    cutoff = static_cast<int>(std::lround(std::pow(static_cast<double>(rho.dim()), 1.0 / modes)));
  }
  out << fmt("%.12f", nongaussianity(rho, modes, cutoff)) << "\n";
  return kOk;
}

std::vector<int> parse_ranks(const std::vector<std::string>& ranks) {
  std::vector<int> out;
  for (const auto& r : ranks) {
    if (r == "full") {
      out.push_back(0);
      continue;
    }
    try {
      std::size_t used = 0;
      const int v = std::stoi(r, &used);
      if (used != r.size() || v < 1) throw std::invalid_argument(r);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidConfig, "rank '" + r + "' is neither a positive integer nor 'full'");
    }
  }
  return out;
}

struct FuzzArgs {
  FuzzConfig cfg;
  std::vector<std::string> ranks{"1", "full"};
  std::string json_out;
  std::string csv_out;
  double tol = NAN;
  bool inject_q1 = false;
};

int cmd_fuzz(FuzzArgs a, std::ostream& out) {
  a.cfg.ranks = parse_ranks(a.ranks);
  a.cfg.tol = resolve_tol(a.tol);
  const FuzzStats stats = run_fuzz(a.cfg);
  out << std::left << std::setw(22) << "relation" << std::setw(9) << "trials" << std::setw(11)
      << "violations" << "min_margin\n";
  for (const auto& [id, s] : stats.relations) {
    out << std::setw(22) << id << std::setw(9) << s.trials << std::setw(11) << s.violations
        << fmt("%.3e", s.min_margin) << "\n";
  }
  out << "trials=" << stats.trials << " violations=" << stats.violations() << " errors=" << stats.errors
      << " seed=" << stats.seed << "\n";
  for (const auto& p : stats.reproducers) out << "reproducer: " << p << "\n";
  if (!a.json_out.empty()) write_text(a.json_out, stats.to_json());
  return stats.violations() == 0 && stats.errors == 0 ? kOk : kViolated;
}

int cmd_strength(FuzzArgs a, std::ostream& out) {
  a.cfg.ranks = parse_ranks(a.ranks);
  const StrengthStudy s = strength_study(a.cfg, a.inject_q1);
  bool q1_ok = true;
  for (const auto& [id, m] : s.q1_margins) {
    q1_ok = q1_ok && m.saturated();
    out << margin_line("q1:" + id, m, kTolIneq) << "\n";
  }
  out << "instances=" << s.rows.size() << " ordering_failures=" << s.ordering_failures << "\n";
  if (!a.csv_out.empty()) write_text(a.csv_out, s.to_csv());
  return s.ordering_failures == 0 && q1_ok ? kOk : kViolated;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skew-information refined uncertainty relations: checks, Gaussian saturation, fuzzing"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Evaluate every relation for a state and observable set");
  check->add_option("state", check_args.state, "State JSON file")->required();
  check->add_option("observables", check_args.observables, "Observables JSON file")->required();
  check->add_option("--f", check_args.f_labels, "Monotone function label (wy, sld, wyd:<alpha>); repeatable");
  check->add_flag("--two-obs", check_args.two_obs, "Also evaluate the two-observable relations");
  check->add_option("--json-out", check_args.json_out, "Write the machine-readable report here");
  check->add_option("--tol", check_args.tol, "Violation tolerance (overrides SKEWSHARP_TOL)");

  std::string lambda_label, grid_dump;
  auto* lambda = app.add_subcommand("lambda", "Compute lambda_f and its bounds");
  lambda->add_option("--f", lambda_label, "Function label")->required();
  lambda->add_option("--grid-dump", grid_dump, "Write (x, F(x)) samples as CSV");

  GaussianArgs gauss_args;
  auto* gaussian = app.add_subcommand("gaussian", "Thermal state of a quadratic Hamiltonian: exact vs Fock");
  gaussian->add_option("--modes", gauss_args.modes, "Number of modes (1 or 2)");
  gaussian->add_option("--omega", gauss_args.omega, "Mode frequencies")->delimiter(',');
  gaussian->add_option("--xi", gauss_args.xi, "Squeezing per mode as re or re,im; repeat per mode");
  gaussian->add_option("--coupling", gauss_args.coupling, "Beamsplitter coupling as re or re,im");
  gaussian->add_option("--beta", gauss_args.beta, "Inverse temperature");
  gaussian->add_option("--cutoff", gauss_args.cutoff, "Fock cutoff per mode (>= 8)");
  gaussian->add_option("--json-out", gauss_args.json_out, "Write the report here");
  gaussian->add_option("--tol", gauss_args.tol, "Tolerance for the exact path");

  std::string ng_state;
  int ng_modes = 1, ng_cutoff = 0;
  auto* nongauss = app.add_subcommand("nongauss", "Print Delta_G of the quadratures of a Fock-space state");
  nongauss->add_option("state", ng_state, "State JSON file")->required();
  nongauss->add_option("--modes", ng_modes, "Number of modes");
  nongauss->add_option("--cutoff", ng_cutoff, "Fock cutoff per mode (default: inferred from dim)");

  FuzzArgs fuzz_args;
  auto* fuzz = app.add_subcommand("fuzz", "Randomized verification of every relation");
  auto add_common = [](CLI::App* sub, FuzzArgs& fa) {
    sub->add_option("--seed", fa.cfg.seed, "Master seed");
    sub->add_option("--trials", fa.cfg.trials, "Number of random instances");
    sub->add_option("--dims", fa.cfg.dims, "Hilbert-space dimensions, e.g. 2,3,4")->delimiter(',');
    sub->add_option("--ranks", fa.ranks, "State ranks: integers or 'full'")->delimiter(',');
    sub->add_option("--f", fa.cfg.f_labels, "Monotone function labels")->delimiter(',');
  };
  add_common(fuzz, fuzz_args);
  fuzz->add_option("--n-obs", fuzz_args.cfg.n_obs, "Observable counts")->delimiter(',');
  fuzz->add_option("--relations", fuzz_args.cfg.groups,
                   "Groups: rs, refined, weak-chain, two-obs, g-psd, eq18, eq19, wy-strongest")
      ->delimiter(',');
  fuzz->add_option("--threads", fuzz_args.cfg.threads, "Worker threads");
  fuzz->add_option("--reproducers", fuzz_args.cfg.reproducer_dir, "Directory for violation reproducers");
  fuzz->add_option("--json-out", fuzz_args.json_out, "Write FuzzStats JSON here");
  fuzz->add_option("--tol", fuzz_args.tol, "Violation tolerance (overrides SKEWSHARP_TOL)");

  FuzzArgs strength_args;
  strength_args.cfg.trials = 1000;
  auto* strength = app.add_subcommand("strength", "Compare upper bounds on delta^2 across relations (n = 2)");
  add_common(strength, strength_args);
  strength->add_flag("--inject-q1", strength_args.inject_q1, "Also evaluate the qubit saturation instance");
  strength->add_option("--csv-out", strength_args.csv_out, "Write per-instance bounds as CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return cmd_check(check_args, out);
    if (*lambda) return cmd_lambda(lambda_label, grid_dump, out);
    if (*gaussian) return cmd_gaussian(gauss_args, out);
    if (*nongauss) return cmd_nongauss(ng_state, ng_modes, ng_cutoff, out);
    if (*fuzz) return cmd_fuzz(fuzz_args, out);
    if (*strength) return cmd_strength(strength_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace skewsharp::cli
