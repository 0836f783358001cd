// Copyright 2026 The cvbench Authors
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

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "cvbench/channel_eval.hpp"
#include "cvbench/classical_channel.hpp"
#include "cvbench/errors.hpp"
#include "cvbench/lemma.hpp"
#include "cvbench/report.hpp"
#include "cvbench/rng.hpp"

namespace {

using namespace cvbench;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerificationFailed = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using PriorChoice = std::variant<GaussianPrior, FlatPrior>;

PriorChoice parse_lambda(const std::string& text, bool allow_flat) {
  if (text == "flat") {
    if (!allow_flat) {
      throw UsageError("this command needs a sampleable prior; pass a "
                       "positive --lambda instead of 'flat'");
    }
    return FlatPrior{};
  }
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw UsageError("--lambda expects a positive number or 'flat'");
  }
  if (!(value > 0.0)) {
    throw UsageError("--lambda must be > 0; the flat (lambda -> 0) benchmark "
                     "is spelled --lambda flat");
  }
  return GaussianPrior(value);
}

GaussianPrior require_gaussian(const PriorChoice& prior) {
  if (const auto* p = std::get_if<GaussianPrior>(&prior)) return *p;
  throw UsageError("this command needs a sampleable prior; pass a positive "
                   "--lambda instead of 'flat'");
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  auto parse_one = [](const std::string& tok) {
    if (tok == "inf") return kInfiniteP;
    return std::stod(tok);
  };
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      const int hi = std::stoi(text.substr(dots + 2));
      if (lo < 1 || hi < lo) throw std::invalid_argument(text);
      for (int p = lo; p <= hi; ++p) out.push_back(p);
      return out;
    }
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_one(tok));
  } catch (const std::exception&) {
    throw UsageError("--p expects 'a..b', or a comma list like '1,2,8,inf'");
  }
  if (out.empty()) throw UsageError("--p: empty list");
  for (const double p : out) {
    if (!(p >= 1.0)) throw UsageError("--p: every entry must be >= 1");
  }
  return out;
}

int default_threads() {
  if (const char* env = std::getenv("CVBENCH_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

void write_csv_summary(const std::string& path, const nlohmann::json& report) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open csv summary path: " + path);
  out << "key,value\n";
  for (const auto& [key, value] : report.items()) {
    if (value.is_primitive()) {
      out << key << "," << value.dump() << "\n";
    } else if (value.is_object()) {
      for (const auto& [inner_key, inner] : value.items()) {
        if (inner.is_primitive()) {
          out << key << "." << inner_key << "," << inner.dump() << "\n";
        }
      }
    }
  }
}

void emit(const nlohmann::json& report, const std::string& out_path,
          const std::string& csv_path) {
  if (!csv_path.empty()) write_csv_summary(csv_path, report);
  if (out_path.empty() || out_path == "-") {
    std::cout << report.dump(2) << std::endl;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot open output path: " + out_path);
  out << report.dump(2) << "\n";
}

nlohmann::json lambda_config(const PriorChoice& prior) {
  if (std::holds_alternative<FlatPrior>(prior)) return "flat";
  return std::get<GaussianPrior>(prior).lambda();
}

struct CommonOpts {
  std::string lambda_text = "1";
  std::string out_path;
  std::string csv_path;
  int threads = default_threads();
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_threads = false) {
  cmd->add_option("--lambda", opts.lambda_text,
                  "prior parameter (positive number, or 'flat' where the "
                  "flat-limit benchmark is defined)");
  cmd->add_option("--out", opts.out_path, "report path (default: stdout)");
  cmd->add_option("--csv-summary", opts.csv_path,
                  "also write a key,value summary CSV");
  if (with_threads) {
    cmd->add_option("--threads", opts.threads,
                    "worker cap for parallel suites (env CVBENCH_THREADS)");
  }
}

int run_bound(const CommonOpts& opts) {
  const auto prior = parse_lambda(opts.lambda_text, /*allow_flat=*/true);
  const double value =
      std::visit([](const auto& p) { return benchmark_bound(p); }, prior);
  emit(make_report("bound", {{"lambda", lambda_config(prior)}},
                   {{"value", value}}),
       opts.out_path, opts.csv_path);
  return kExitOk;
}

int run_heterodyne(const CommonOpts& opts, double gain, bool gain_set) {
  const auto prior =
      require_gaussian(parse_lambda(opts.lambda_text, /*allow_flat=*/false));
  const double g = gain_set ? gain : 1.0 / (1.0 + prior.lambda());
  const double value = heterodyne_fidelity(prior, g);
  const double bench = benchmark_bound(prior);
  nlohmann::json payload = {
      {"gain", g},
      {"value", value},
      {"benchmark", bench},
      {"verdict", to_string(classify_value(value, 0.0, bench))},
  };
  emit(make_report("heterodyne", {{"lambda", prior.lambda()}, {"gain", g}},
                   payload),
       opts.out_path, opts.csv_path);
  return kExitOk;
}

int run_simulate(const CommonOpts& opts, double gain, bool gain_set,
                 const std::string& strategy_path, std::uint64_t n,
                 std::uint64_t seed) {
  const auto prior =
      require_gaussian(parse_lambda(opts.lambda_text, /*allow_flat=*/false));
  FidelityReport report;
  nlohmann::json config = {{"lambda", prior.lambda()},
                           {"n", n},
                           {"seed", seed},
                           {"threads", opts.threads}};
  if (gain_set == !strategy_path.empty()) {
    throw UsageError("simulate needs exactly one of --gain or --strategy");
  }
  if (gain_set) {
    config["gain"] = gain;
    report = simulate_strategy(HeterodyneStrategy{gain}, prior, n, seed,
                               opts.threads);
  } else {
    std::ifstream in(strategy_path);
    if (!in) throw UsageError("cannot open strategy file: " + strategy_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("strategy file: invalid JSON: ") + e.what());
    }
    const auto strategy = strategy_from_json(j);
    config["strategy"] = strategy_path;
    report = simulate_strategy(strategy, prior, n, seed, opts.threads);
  }
  emit(make_report("simulate", config, {{"report", to_json(report)}}),
       opts.out_path, opts.csv_path);
  return kExitOk;
}

int run_verify_lemma(const CommonOpts& opts, int trials, int phi_dim, int d,
                     const std::string& p_text, std::uint64_t seed,
                     double slack_tol, bool full) {
  const auto prior =
      require_gaussian(parse_lambda(opts.lambda_text, /*allow_flat=*/false));
  const auto p_values = parse_p_list(p_text);
  const auto results = verify_lemma_random_suite(prior, trials, phi_dim,
                                                 p_values, d, seed,
                                                 opts.threads);

  double min_slack = std::numeric_limits<double>::infinity();
  const LemmaCheckResult* worst = nullptr;
  std::size_t failures = 0;
  for (const auto& r : results) {
    if (r.slack < min_slack) {
      min_slack = r.slack;
      worst = &r;
    }
    if (r.slack < -slack_tol) ++failures;
  }

  nlohmann::json payload = {
      {"num_checks", results.size()}, {"min_slack", min_slack},
      {"failures", failures},         {"slack_tol", slack_tol},
      {"pass", failures == 0},
  };
  if (worst != nullptr) payload["worst"] = to_json(*worst);
  if (full) {
    payload["results"] = nlohmann::json::array();
    for (const auto& r : results) payload["results"].push_back(to_json(r));
  }
  emit(make_report("verify-lemma",
                   {{"lambda", prior.lambda()},
                    {"trials", trials},
                    {"phi_dim", phi_dim},
                    {"d", d},
                    {"p", p_text},
                    {"seed", seed},
                    {"threads", opts.threads}},
                   payload),
       opts.out_path, opts.csv_path);
  if (failures > 0) {
    throw VerificationFailure("p-norm inequality slack below tolerance");
  }
  return kExitOk;
}

int run_verify_povm(const CommonOpts& opts, int d, int outcomes, int count,
                    std::uint64_t seed, const std::string& input_path,
                    const std::string& emit_path) {
  const auto prior =
      require_gaussian(parse_lambda(opts.lambda_text, /*allow_flat=*/false));
  const double bound = benchmark_bound(prior);

  std::vector<PovmEnsemble> povms;
  if (!input_path.empty()) {
    std::ifstream in(input_path);
    if (!in) throw UsageError("cannot open POVM file: " + input_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("POVM file: invalid JSON: ") + e.what());
    }
    povms.push_back(povm_from_json(j));
  } else {
    for (int k = 0; k < count; ++k) {
      povms.push_back(make_random_povm(d, outcomes, seed + k));
    }
  }
  if (!emit_path.empty()) {
    std::ofstream out(emit_path);
    if (!out) throw UsageError("cannot open emit path: " + emit_path);
    out << povm_to_json(povms.front(), prior.lambda()).dump(2) << "\n";
  }

  double max_value = 0.0;
  double max_one_norm_defect = 0.0;
  double max_completeness_defect = 0.0;
  std::string failure;
  for (std::size_t k = 0; k < povms.size() && failure.empty(); ++k) {
    const double defect = povms[k].completeness_defect();
    max_completeness_defect = std::max(max_completeness_defect, defect);
    if (defect > tol::povm_completeness) {
      failure = "POVM #" + std::to_string(k) + " incomplete: defect " +
                std::to_string(defect);
      break;
    }
    const auto result = classical_fidelity(povms[k], prior, 0, opts.threads);
    max_value = std::max(max_value, result.report.value);
    const double one_defect =
        std::abs(result.one_norm_sum - result.one_norm_expected);
    max_one_norm_defect = std::max(max_one_norm_defect, one_defect);
    if (result.report.value > bound + 1e-8) {
      failure = "POVM #" + std::to_string(k) +
                " exceeds the classical bound: value " +
                std::to_string(result.report.value);
    } else if (one_defect > 1e-8 + result.report.truncation_tail) {
      failure = "POVM #" + std::to_string(k) +
                " violates the one-norm completeness identity";
    }
  }

  emit(make_report("verify-povm",
                   {{"lambda", prior.lambda()},
                    {"d", d},
                    {"outcomes", outcomes},
                    {"count", povms.size()},
                    {"seed", seed},
                    {"input", input_path},
                    {"threads", opts.threads}},
                   {{"benchmark", bound},
                    {"max_value", max_value},
                    {"max_one_norm_defect", max_one_norm_defect},
                    {"max_completeness_defect", max_completeness_defect},
                    {"pass", failure.empty()}}),
       opts.out_path, opts.csv_path);
  if (!failure.empty()) throw VerificationFailure(failure);
  return kExitOk;
}

int run_trace_check(const CommonOpts& opts, int p, const std::string& phi_text,
                    int phi_dim, std::uint64_t n, std::uint64_t seed,
                    double sigmas) {
  const auto prior =
      require_gaussian(parse_lambda(opts.lambda_text, /*allow_flat=*/false));

  FockVector phi = FockVector::basis_state(0, 1);
  if (phi_text == "vacuum") {
    // keep the default
  } else if (phi_text.rfind("basis:", 0) == 0) {
    int k = -1;
    try {
      k = std::stoi(phi_text.substr(6));
    } catch (const std::exception&) {
    }
    if (k < 0) throw UsageError("--phi basis:<k> needs an integer k >= 0");
    phi = FockVector::basis_state(k, k + 1);
  } else if (phi_text == "random") {
    Eigen::VectorXcd c(phi_dim);
    for (int k = 0; k < phi_dim; ++k) {
      c(k) = standard_complex_gaussian(seed, 40, k);
    }
    phi = FockVector{c}.normalized();
  } else {
    throw UsageError("--phi expects vacuum, basis:<k>, or random");
  }

  const auto result = trace_identity_mc(phi, prior, p, n, seed);
  const double gap = std::abs(result.mc_estimate - result.matrix_value);
  const bool pass = gap <= sigmas * result.mc_stderr;
  nlohmann::json payload = to_json(result);
  payload["sigmas"] = sigmas;
  payload["pass"] = pass;
  emit(make_report("trace-check",
                   {{"lambda", prior.lambda()},
                    {"p", p},
                    {"phi", phi_text},
                    {"phi_dim", phi_dim},
                    {"n", n},
                    {"seed", seed}},
                   payload),
       opts.out_path, opts.csv_path);
  if (!pass) {
    throw VerificationFailure(
        "trace identity: matrix value and Monte Carlo estimate disagree "
        "beyond the sigma band");
  }
  return kExitOk;
}

int run_eval(const CommonOpts& opts, std::optional<double> fidelity,
             double fidelity_stderr, std::optional<double> gain,
             std::optional<double> noise) {
  const auto prior = parse_lambda(opts.lambda_text, /*allow_flat=*/true);
  if (fidelity.has_value() == (gain.has_value() || noise.has_value())) {
    throw UsageError("eval needs either --fidelity or --gain/--noise");
  }
  ClassificationResult result;
  nlohmann::json config = {{"lambda", lambda_config(prior)}};
  if (fidelity) {
    config["fidelity"] = *fidelity;
    config["stderr"] = fidelity_stderr;
    result = std::visit(
        [&](const auto& p) {
          return classify_fidelity(*fidelity, fidelity_stderr, p);
        },
        prior);
  } else {
    GaussianChannelParams params{gain.value_or(1.0), noise.value_or(0.0)};
    config["gain"] = params.gain;
    config["noise"] = params.added_noise;
    result = std::visit(
        [&](const auto& p) { return classify_channel(params, p); }, prior);
  }
  emit(make_report("eval", config, to_json(result)), opts.out_path,
       opts.csv_path);
  return kExitOk;
}

int run_fit(const CommonOpts& opts, const std::string& input_path,
            bool classify) {
  std::vector<ExperimentRecord> records;
  if (input_path == "-") {
    records = read_records_csv(std::cin);
  } else {
    std::ifstream in(input_path);
    if (!in) throw UsageError("cannot open records file: " + input_path);
    records = read_records_csv(in);
  }
  const auto fit = fit_channel(records);

  nlohmann::json payload = {{"fit", to_json(fit)}};
  if (!fit.noise_estimated) {
    payload["warnings"] = {
        "variance columns absent: added_noise defaulted to 0; "
        "noise-sensitive claims are not supported by this fit"};
  }
  nlohmann::json config = {{"input", input_path}};
  if (classify) {
    const auto prior = parse_lambda(opts.lambda_text, /*allow_flat=*/true);
    config["lambda"] = lambda_config(prior);
    const auto result = std::visit(
        [&](const auto& p) { return classify_channel(fit.params, p); }, prior);
    payload["classification"] = to_json(result);
  }
  emit(make_report("fit", config, payload), opts.out_path, opts.csv_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cvbench: classical-benchmark laboratory for coherent-state channels"};
  app.require_subcommand(1);

  CommonOpts bound_opts;
  auto* bound_cmd =
      app.add_subcommand("bound", "classical fidelity benchmark (1+l)/(2+l)");
  add_common(bound_cmd, bound_opts);

  CommonOpts het_opts;
  double het_gain = 0.0;
  auto* het_cmd = app.add_subcommand(
      "heterodyne", "closed-form heterodyne strategy fidelity");
  add_common(het_cmd, het_opts);
  auto* het_gain_opt = het_cmd->add_option(
      "--gain", het_gain, "repreparation gain (default 1/(1+lambda))");

  CommonOpts sim_opts;
  double sim_gain = 0.0;
  std::string sim_strategy;
  std::uint64_t sim_n = 200000, sim_seed = 1;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo run of a measure-and-prepare strategy");
  add_common(sim_cmd, sim_opts, /*with_threads=*/true);
  auto* sim_gain_opt = sim_cmd->add_option("--gain", sim_gain, "heterodyne gain");
  sim_cmd->add_option("--strategy", sim_strategy, "strategy JSON file");
  sim_cmd->add_option("--n", sim_n, "sample count");
  sim_cmd->add_option("--seed", sim_seed, "rng seed");

  CommonOpts lemma_opts;
  int lemma_trials = 500, lemma_phi_dim = 12, lemma_d = 48;
  std::string lemma_p = "1..8";
  std::uint64_t lemma_seed = 1;
  double lemma_tol = tol::lemma_slack;
  bool lemma_full = false;
  auto* lemma_cmd = app.add_subcommand(
      "verify-lemma", "randomized check of the p-norm inequality");
  add_common(lemma_cmd, lemma_opts, /*with_threads=*/true);
  lemma_cmd->add_option("--trials", lemma_trials, "random phi count");
  lemma_cmd->add_option("--phi-dim", lemma_phi_dim, "phi support dimension");
  lemma_cmd->add_option("--d", lemma_d, "operator cutoff dimension");
  lemma_cmd->add_option("--p", lemma_p, "p list: 'a..b' or '1,2,8,inf'");
  lemma_cmd->add_option("--seed", lemma_seed, "rng seed");
  lemma_cmd->add_option("--slack-tol", lemma_tol, "allowed negative slack");
  lemma_cmd->add_flag("--full", lemma_full,
                      "include every check in the report");

  CommonOpts povm_opts;
  int povm_d = 10, povm_outcomes = 16, povm_count = 20;
  std::uint64_t povm_seed = 1;
  std::string povm_input, povm_emit;
  auto* povm_cmd = app.add_subcommand(
      "verify-povm",
      "stress the classical bound and the one-norm identity on POVMs");
  add_common(povm_cmd, povm_opts, /*with_threads=*/true);
  povm_cmd->add_option("--d", povm_d, "POVM space dimension");
  povm_cmd->add_option("--outcomes", povm_outcomes, "outcomes per POVM");
  povm_cmd->add_option("--count", povm_count, "number of random POVMs");
  povm_cmd->add_option("--seed", povm_seed, "rng seed");
  povm_cmd->add_option("--input", povm_input, "POVM JSON file to verify");
  povm_cmd->add_option("--emit", povm_emit, "write the first POVM as JSON");

  CommonOpts trace_opts;
  int trace_p = 2, trace_phi_dim = 12;
  std::string trace_phi = "vacuum";
  std::uint64_t trace_n = 1000000, trace_seed = 1;
  double trace_sigmas = tol::mc_sigmas;
  auto* trace_cmd = app.add_subcommand(
      "trace-check", "tr(A^p) matrix value vs Monte Carlo multi-integral");
  add_common(trace_cmd, trace_opts);
  trace_cmd->add_option("--p", trace_p, "power (2 or 3)");
  trace_cmd->add_option("--phi", trace_phi, "vacuum | basis:<k> | random");
  trace_cmd->add_option("--phi-dim", trace_phi_dim,
                        "dimension for random phi");
  trace_cmd->add_option("--n", trace_n, "sample count");
  trace_cmd->add_option("--seed", trace_seed, "rng seed");
  trace_cmd->add_option("--sigmas", trace_sigmas, "agreement band");

  CommonOpts eval_opts;
  std::optional<double> eval_fidelity, eval_gain, eval_noise;
  double eval_stderr = 0.0;
  auto* eval_cmd = app.add_subcommand(
      "eval", "classify a measured fidelity or a Gaussian channel");
  add_common(eval_cmd, eval_opts);
  eval_cmd->add_option("--fidelity", eval_fidelity, "measured avg fidelity");
  eval_cmd->add_option("--stderr", eval_stderr, "stderr of --fidelity");
  eval_cmd->add_option("--gain", eval_gain, "channel amplitude gain");
  eval_cmd->add_option("--noise", eval_noise, "channel added thermal photons");

  CommonOpts fit_opts;
  std::string fit_input;
  bool fit_classify = false;
  auto* fit_cmd = app.add_subcommand(
      "fit", "fit (gain, noise) from calibration records CSV");
  add_common(fit_cmd, fit_opts);
  fit_cmd->add_option("--input", fit_input, "records CSV path or '-'")
      ->required();
  fit_cmd->add_flag("--classify", fit_classify,
                    "also classify the fitted channel against --lambda");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  }

  try {
    if (bound_cmd->parsed()) return run_bound(bound_opts);
    if (het_cmd->parsed()) {
      return run_heterodyne(het_opts, het_gain, het_gain_opt->count() > 0);
    }
    if (sim_cmd->parsed()) {
      return run_simulate(sim_opts, sim_gain, sim_gain_opt->count() > 0,
                          sim_strategy, sim_n, sim_seed);
    }
    if (lemma_cmd->parsed()) {
      return run_verify_lemma(lemma_opts, lemma_trials, lemma_phi_dim, lemma_d,
                              lemma_p, lemma_seed, lemma_tol, lemma_full);
    }
    if (povm_cmd->parsed()) {
      return run_verify_povm(povm_opts, povm_d, povm_outcomes, povm_count,
                             povm_seed, povm_input, povm_emit);
    }
    if (trace_cmd->parsed()) {
      return run_trace_check(trace_opts, trace_p, trace_phi, trace_phi_dim,
                             trace_n, trace_seed, trace_sigmas);
    }
    if (eval_cmd->parsed()) {
      return run_eval(eval_opts, eval_fidelity, eval_stderr, eval_gain,
                      eval_noise);
    }
    if (fit_cmd->parsed()) return run_fit(fit_opts, fit_input, fit_classify);
    std::cerr << "error: no command" << std::endl;
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << std::endl;
    return kExitVerificationFailed;
  } catch (const ContractViolation& e) {
    std::cerr << "verification failed: " << e.what() << std::endl;
    return kExitVerificationFailed;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  }
}
