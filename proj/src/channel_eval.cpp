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

#include "cvbench/channel_eval.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include "cvbench/errors.hpp"
#include "cvbench/stats.hpp"

namespace cvbench {

namespace {
// Both quadrature variances sit at the vacuum level 1/2 for a noiseless
// channel; values below that (minus slack for measurement error) are
// unphysical.
constexpr double kVacuumVariance = 0.5;
constexpr double kPhysicalityTol = 1e-9;
}  // namespace

void GaussianChannelParams::validate() const {
  if (gain < 0.0 || !std::isfinite(gain)) {
    throw std::invalid_argument("GaussianChannelParams: gain >= 0 required");
  }
  if (added_noise < 0.0 || !std::isfinite(added_noise)) {
    throw std::invalid_argument(
        "GaussianChannelParams: added_noise >= 0 required");
  }
}

double gaussian_channel_fidelity(const GaussianChannelParams& params,
                                 const GaussianPrior& prior) {
  params.validate();
  const double lambda = prior.lambda();
  const double miss = (1.0 - params.gain) * (1.0 - params.gain);
  return lambda / (lambda * (1.0 + params.added_noise) + miss);
}

double gaussian_channel_fidelity(const GaussianChannelParams& params,
                                 FlatPrior) {
  params.validate();
  // Any gain offset is amplified without bound over the flat ensemble; only
  // g = 1 keeps a finite limit.
  if (params.gain == 1.0) return 1.0 / (1.0 + params.added_noise);
  return 0.0;
}

FidelityReport gaussian_channel_report(const GaussianChannelParams& params,
                                       const GaussianPrior& prior) {
  FidelityReport report;
  report.value = gaussian_channel_fidelity(params, prior);
  report.stderr_ = 0.0;
  report.benchmark = benchmark_bound(prior);
  report.verdict = classify_value(report.value, 0.0, report.benchmark);
  report.lambda = prior.lambda();
  report.method = "gaussian-channel/closed-form";
  return report;
}

FidelityReport gaussian_channel_fidelity_mc(const GaussianChannelParams& params,
                                            const GaussianPrior& prior, int d,
                                            std::uint64_t n,
                                            std::uint64_t seed) {
  params.validate();
  if (n < 1 || d < 2) {
    throw std::invalid_argument("gaussian_channel_fidelity_mc: bad sizes");
  }
  const double nbar = params.added_noise;

  // Thermal occupation cut to d levels; the neglected mass is the geometric
  // tail, kept as part of the reported truncation budget.
  Eigen::VectorXd thermal(d);
  for (int k = 0; k < d; ++k) {
    thermal(k) = nbar == 0.0
                     ? (k == 0 ? 1.0 : 0.0)
                     : std::pow(nbar / (1.0 + nbar), k) / (1.0 + nbar);
  }

  RunningMoments acc;
  double max_tail = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Complex alpha = prior.sample_at(seed, /*stream=*/0, i);
    const auto coh = coherent_vector(alpha, d);
    max_tail = std::max(max_tail, coh.tail_mass);

    // ro_out = D(g alpha) ro_th D^dag; fidelity = <alpha|ro_out|alpha>.
    const Eigen::MatrixXcd disp = displacement_operator(params.gain * alpha, d);
    const Eigen::VectorXcd back = disp.adjoint() * coh.state.coeffs();
    double fid = 0.0;
    for (int k = 0; k < d; ++k) {
      fid += thermal(k) * std::norm(back(k));
    }
    acc.add(fid);
  }

  FidelityReport report;
  report.value = acc.mean;
  report.stderr_ = acc.stderr_of_mean();
  report.benchmark = benchmark_bound(prior);
  report.verdict = classify_value(report.value, report.stderr_,
                                  report.benchmark);
  report.lambda = prior.lambda();
  report.dim = d;
  report.seed = seed;
  report.samples = n;
  report.method = "gaussian-channel/fock-mc";
  report.truncation_tail = max_tail;
  return report;
}

ChannelFit fit_channel(const std::vector<ExperimentRecord>& records) {
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j) {
      if (records[j].alpha_in == records[i].alpha_in) {
        seen = true;
        break;
      }
    }
    if (!seen) ++distinct;
  }
  if (distinct < 3) {
    throw std::invalid_argument(
        "fit_channel: need >= 3 records with distinct alpha_in");
  }

  // Real nonnegative gain through the origin (the channel model is
  // phase-insensitive): g = Re(sum conj(a) out) / sum |a|^2.
  double sxx = 0.0, sxy = 0.0;
  for (const auto& r : records) {
    sxx += std::norm(r.alpha_in);
    sxy += (std::conj(r.alpha_in) * r.out_mean).real();
  }
  if (sxx <= 0.0) {
    throw std::invalid_argument("fit_channel: all probe amplitudes are zero");
  }
  const double gain = std::max(0.0, sxy / sxx);

  double ss_res = 0.0;
  for (const auto& r : records) {
    ss_res += std::norm(r.out_mean - gain * r.alpha_in);
  }

  ChannelFit fit;
  fit.params.gain = gain;
  fit.records_used = records.size();
  fit.mean_residual_rms = std::sqrt(ss_res / records.size());
  // Scalar least squares: var(g) = residual variance / sum |a|^2, with 2N
  // real observations and one parameter.
  const std::size_t dof = 2 * records.size() - 1;
  fit.gain_stderr = dof > 0 ? std::sqrt(ss_res / dof / sxx) : 0.0;

  RunningMoments vq, vp;
  for (const auto& r : records) {
    if (r.out_var_q && r.out_var_p) {
      if (*r.out_var_q < kVacuumVariance - kPhysicalityTol ||
          *r.out_var_p < kVacuumVariance - kPhysicalityTol) {
        throw ContractViolation(
            "fit_channel: quadrature variance below the vacuum floor");
      }
      vq.add(*r.out_var_q);
      vp.add(*r.out_var_p);
    }
  }
  if (vq.count > 0) {
    // n_bar = mean(var_q) + mean(var_p) - 1 in vacuum-=1/2 units.
    fit.params.added_noise = std::max(0.0, vq.mean + vp.mean - 1.0);
    fit.noise_estimated = true;
  } else {
    fit.params.added_noise = 0.0;
    fit.noise_estimated = false;
  }
  return fit;
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("records CSV: empty input");
  }
  auto split = [](const std::string& s) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(s);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
  };

  const auto header = split(line);
  const bool with_variance = header.size() >= 6;
  if (header.size() < 4 || header[0] != "re_in" || header[1] != "im_in" ||
      header[2] != "re_out" || header[3] != "im_out" ||
      (with_variance && (header[4] != "var_q" || header[5] != "var_p"))) {
    throw std::runtime_error(
        "records CSV: expected header re_in,im_in,re_out,im_out[,var_q,var_p]");
  }

  std::vector<ExperimentRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() < (with_variance ? 6u : 4u)) {
      std::ostringstream msg;
      msg << "records CSV: line " << line_no << ": expected "
          << (with_variance ? 6 : 4) << " fields";
      throw std::runtime_error(msg.str());
    }
    try {
      ExperimentRecord r;
      r.alpha_in = {std::stod(fields[0]), std::stod(fields[1])};
      r.out_mean = {std::stod(fields[2]), std::stod(fields[3])};
      if (with_variance) {
        r.out_var_q = std::stod(fields[4]);
        r.out_var_p = std::stod(fields[5]);
      }
      records.push_back(r);
    } catch (const std::exception&) {
      std::ostringstream msg;
      msg << "records CSV: line " << line_no << ": malformed number";
      throw std::runtime_error(msg.str());
    }
  }
  return records;
}

namespace {

SecurityThresholds security_for(double value) {
  SecurityThresholds s;
  s.exceeds_gaussian_cloning = value > s.gaussian_cloning;
  s.exceeds_non_gaussian_cloning = value > s.non_gaussian_cloning;
  return s;
}

}  // namespace

ClassificationResult classify_fidelity(double value, double stderr_,
                                       const GaussianPrior& prior) {
  ClassificationResult out;
  out.report.value = value;
  out.report.stderr_ = stderr_;
  out.report.benchmark = benchmark_bound(prior);
  out.report.verdict = classify_value(value, stderr_, out.report.benchmark);
  out.report.lambda = prior.lambda();
  out.report.method = "classify/fidelity";
  return out;
}

ClassificationResult classify_fidelity(double value, double stderr_,
                                       FlatPrior flat) {
  ClassificationResult out;
  out.report.value = value;
  out.report.stderr_ = stderr_;
  out.report.benchmark = benchmark_bound(flat);
  out.report.verdict = classify_value(value, stderr_, out.report.benchmark);
  out.report.flat = true;
  out.report.method = "classify/fidelity";
  out.security = security_for(value);
  return out;
}

ClassificationResult classify_channel(const GaussianChannelParams& params,
                                      const GaussianPrior& prior) {
  auto out = classify_fidelity(gaussian_channel_fidelity(params, prior), 0.0,
                               prior);
  out.report.method = "classify/gaussian-channel";
  return out;
}

ClassificationResult classify_channel(const GaussianChannelParams& params,
                                      FlatPrior flat) {
  auto out = classify_fidelity(gaussian_channel_fidelity(params, flat), 0.0,
                               flat);
  out.report.method = "classify/gaussian-channel";
  return out;
}

}  // namespace cvbench
