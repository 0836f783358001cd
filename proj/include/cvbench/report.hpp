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

#ifndef CVBENCH_REPORT_HPP
#define CVBENCH_REPORT_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cvbench/channel_eval.hpp"
#include "cvbench/classical_channel.hpp"
#include "cvbench/lemma.hpp"

namespace cvbench {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json to_json(const FidelityReport& report);
nlohmann::json to_json(const LemmaCheckResult& result);
nlohmann::json to_json(const TraceIdentityResult& result);
nlohmann::json to_json(const ChannelFit& fit);
nlohmann::json to_json(const ClassificationResult& result);

/// Wraps a payload into the versioned report envelope:
/// {schema_version, command, rng_algorithm, generated_at, config, ...payload}.
/// generated_at is the only field allowed to differ between identical runs.
nlohmann::json make_report(const std::string& command,
                           const nlohmann::json& config,
                           const nlohmann::json& payload);

// --- strategy / POVM files ------------------------------------------------
//
// Schema (schema_version 1):
// {
//   "schema_version": 1,
//   "kind": "povm" | "strategy",
//   "d": <int>,
//   "lambda": <double, optional>,
//   "povm": [ [[re, im], ...d entries], ...one per outcome ],
//   "reconstructions": [ ...same shape, strategies only ]
// }

nlohmann::json povm_to_json(const PovmEnsemble& povm, double lambda = 0.0);
nlohmann::json strategy_to_json(const ClassicalStrategy& strategy,
                                double lambda = 0.0);

PovmEnsemble povm_from_json(const nlohmann::json& j);
ClassicalStrategy strategy_from_json(const nlohmann::json& j);

}  // namespace cvbench

#endif  // CVBENCH_REPORT_HPP
