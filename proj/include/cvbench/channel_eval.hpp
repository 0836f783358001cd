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

#ifndef CVBENCH_CHANNEL_EVAL_HPP
#define CVBENCH_CHANNEL_EVAL_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cvbench/classical_channel.hpp"
#include "cvbench/prior.hpp"

namespace cvbench {

/// Phase-insensitive Gaussian channel: amplitude gain g and added thermal
/// photons n_bar referred to the output. (1, 0) is the identity channel; the
/// heterodyne measure-and-prepare strategy with gain g realizes (g, g^2).
struct GaussianChannelParams {
  double gain = 1.0;
  double added_noise = 0.0;

  void validate() const;
};

/// Reference security thresholds quoted alongside flat-limit verdicts:
/// cloning-based criteria, stricter than the measure-and-prepare benchmark.
inline constexpr double kGaussianCloningThreshold = 2.0 / 3.0;
inline constexpr double kNonGaussianCloningThreshold = 0.6826;

/// Average fidelity of the Gaussian channel over the prior, closed form
///   F = lambda / (lambda (1 + n_bar) + (1 - g)^2),
/// validated against the truncated-Fock Monte Carlo oracle in the tests.
double gaussian_channel_fidelity(const GaussianChannelParams& params,
                                 const GaussianPrior& prior);

/// Flat-limit value: 1/(1 + n_bar) at g == 1 exactly, 0 otherwise (any gain
/// error is amplified without bound as the input spread grows).
double gaussian_channel_fidelity(const GaussianChannelParams& params,
                                 FlatPrior);

FidelityReport gaussian_channel_report(const GaussianChannelParams& params,
                                       const GaussianPrior& prior);

/// Monte Carlo oracle: draw alpha ~ prior, build the displaced thermal output
/// state in a d-dim Fock cutoff (ro = D(g alpha) ro_th(n_bar) D^dag), score
/// <alpha|ro|alpha>, average. Kept independent of the closed form.
FidelityReport gaussian_channel_fidelity_mc(const GaussianChannelParams& params,
                                            const GaussianPrior& prior, int d,
                                            std::uint64_t n,
                                            std::uint64_t seed);

/// One calibration record: a probe amplitude, the measured output mean and
/// the output quadrature variances (vacuum = 1/2 convention). Missing
/// variances allow gain fitting only.
struct ExperimentRecord {
  Complex alpha_in;
  Complex out_mean;
  std::optional<double> out_var_q;
  std::optional<double> out_var_p;
};

struct ChannelFit {
  GaussianChannelParams params;
  double gain_stderr = 0.0;
  double mean_residual_rms = 0.0;   // |out - g alpha| residual per record
  bool noise_estimated = false;     // false when variance columns were absent
  std::size_t records_used = 0;
};

/// Least-squares fit: real nonnegative gain through the origin from
/// out_mean vs alpha_in; n_bar = mean(var_q) + mean(var_p) - 1. Requires at
/// least 3 records with distinct alpha_in; variances below the vacuum floor
/// are rejected as unphysical.
ChannelFit fit_channel(const std::vector<ExperimentRecord>& records);

/// CSV records, header re_in,im_in,re_out,im_out,var_q,var_p (the two
/// variance columns may be absent). Throws std::runtime_error on malformed
/// input.
std::vector<ExperimentRecord> read_records_csv(std::istream& in);

struct SecurityThresholds {
  double gaussian_cloning = kGaussianCloningThreshold;
  double non_gaussian_cloning = kNonGaussianCloningThreshold;
  bool exceeds_gaussian_cloning = false;
  bool exceeds_non_gaussian_cloning = false;
};

/// A fidelity/benchmark verdict for a measured or modeled value. Flat-limit
/// classifications also carry the informational cloning-based thresholds.
struct ClassificationResult {
  FidelityReport report;
  std::optional<SecurityThresholds> security;
};

ClassificationResult classify_fidelity(double value, double stderr_,
                                       const GaussianPrior& prior);
ClassificationResult classify_fidelity(double value, double stderr_,
                                       FlatPrior);
ClassificationResult classify_channel(const GaussianChannelParams& params,
                                      const GaussianPrior& prior);
ClassificationResult classify_channel(const GaussianChannelParams& params,
                                      FlatPrior);

}  // namespace cvbench

#endif  // CVBENCH_CHANNEL_EVAL_HPP
