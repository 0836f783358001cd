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

#include "cvbench/report.hpp"

#include <chrono>
#include <ctime>

#include "cvbench/rng.hpp"

namespace cvbench {

namespace {

nlohmann::json lambda_field(double lambda, bool flat) {
  if (flat) return "flat";
  return lambda;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json vector_to_json(const FockVector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (int n = 0; n < v.dim(); ++n) {
    arr.push_back({v.coeff(n).real(), v.coeff(n).imag()});
  }
  return arr;
}

FockVector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::runtime_error("state vector: expected a non-empty array");
  }
  Eigen::VectorXcd c(j.size());
  for (std::size_t n = 0; n < j.size(); ++n) {
    const auto& pair = j[n];
    if (!pair.is_array() || pair.size() != 2) {
      throw std::runtime_error("state vector: entries must be [re, im] pairs");
    }
    c(static_cast<Eigen::Index>(n)) =
        Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  return FockVector(std::move(c));
}

}  // namespace

nlohmann::json to_json(const FidelityReport& report) {
  return {
      {"value", report.value},
      {"stderr", report.stderr_},
      {"benchmark", report.benchmark},
      {"verdict", to_string(report.verdict)},
      {"lambda", lambda_field(report.lambda, report.flat)},
      {"d", report.dim},
      {"seed", report.seed},
      {"samples", report.samples},
      {"method", report.method},
      {"truncation_tail", report.truncation_tail},
  };
}

nlohmann::json to_json(const LemmaCheckResult& result) {
  return {
      {"phi_id", result.phi_id}, {"p", result.p},         {"lhs", result.lhs},
      {"rhs", result.rhs},       {"slack", result.slack},
  };
}

nlohmann::json to_json(const TraceIdentityResult& result) {
  return {
      {"p", result.p},
      {"matrix_value", result.matrix_value},
      {"mc_estimate", result.mc_estimate},
      {"mc_stderr", result.mc_stderr},
      {"mc_imag", result.mc_imag},
      {"mc_imag_stderr", result.mc_imag_stderr},
      {"samples", result.samples},
      {"seed", result.seed},
  };
}

nlohmann::json to_json(const ChannelFit& fit) {
  return {
      {"gain", fit.params.gain},
      {"added_noise", fit.params.added_noise},
      {"gain_stderr", fit.gain_stderr},
      {"mean_residual_rms", fit.mean_residual_rms},
      {"noise_estimated", fit.noise_estimated},
      {"records_used", fit.records_used},
  };
}

nlohmann::json to_json(const ClassificationResult& result) {
  nlohmann::json j = {{"report", to_json(result.report)}};
  if (result.security) {
    // Cloning-based security criteria, quoted for reference next to the
    // measure-and-prepare benchmark; they are stricter requirements.
    j["security_thresholds"] = {
        {"gaussian_cloning", result.security->gaussian_cloning},
        {"non_gaussian_cloning", result.security->non_gaussian_cloning},
        {"exceeds_gaussian_cloning", result.security->exceeds_gaussian_cloning},
        {"exceeds_non_gaussian_cloning",
         result.security->exceeds_non_gaussian_cloning},
        {"note", "cloning-based security criteria (informational)"},
    };
  }
  return j;
}

nlohmann::json make_report(const std::string& command,
                           const nlohmann::json& config,
                           const nlohmann::json& payload) {
  nlohmann::json report = {
      {"schema_version", kReportSchemaVersion},
      {"command", command},
      {"rng_algorithm", std::string(kRngAlgorithm)},
      {"generated_at", utc_timestamp()},
      {"config", config},
  };
  report.update(payload);
  return report;
}

nlohmann::json povm_to_json(const PovmEnsemble& povm, double lambda) {
  nlohmann::json j = {
      {"schema_version", kReportSchemaVersion},
      {"kind", "povm"},
      {"d", povm.dim},
      {"povm", nlohmann::json::array()},
  };
  if (lambda > 0.0) j["lambda"] = lambda;
  for (const auto& phi : povm.vectors) j["povm"].push_back(vector_to_json(phi));
  return j;
}

nlohmann::json strategy_to_json(const ClassicalStrategy& strategy,
                                double lambda) {
  nlohmann::json j = povm_to_json(strategy.povm, lambda);
  j["kind"] = "strategy";
  j["reconstructions"] = nlohmann::json::array();
  for (const auto& chi : strategy.reconstructions) {
    j["reconstructions"].push_back(vector_to_json(chi));
  }
  return j;
}

PovmEnsemble povm_from_json(const nlohmann::json& j) {
  if (!j.contains("d") || !j.contains("povm") || !j["povm"].is_array() ||
      j["povm"].empty()) {
    throw std::runtime_error("POVM file: need fields d and non-empty povm");
  }
  PovmEnsemble povm;
  povm.dim = j["d"].get<int>();
  for (const auto& vec : j["povm"]) {
    auto phi = vector_from_json(vec);
    if (phi.dim() != povm.dim) {
      throw std::runtime_error("POVM file: element dimension != d");
    }
    povm.vectors.push_back(std::move(phi));
  }
  return povm;
}

ClassicalStrategy strategy_from_json(const nlohmann::json& j) {
  ClassicalStrategy strategy;
  strategy.povm = povm_from_json(j);
  if (!j.contains("reconstructions") || !j["reconstructions"].is_array() ||
      j["reconstructions"].size() != strategy.povm.vectors.size()) {
    throw std::runtime_error(
        "strategy file: reconstructions must match the POVM outcome count");
  }
  for (const auto& vec : j["reconstructions"]) {
    auto chi = vector_from_json(vec);
    if (chi.dim() != strategy.povm.dim) {
      throw std::runtime_error("strategy file: reconstruction dimension != d");
    }
    strategy.reconstructions.push_back(std::move(chi));
  }
  return strategy;
}

}  // namespace cvbench
