// Copyright 2026 The mfsub Authors. All Rights Reserved.
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


#include "mfsub/melbank.h"

namespace mfsub::melbank {
namespace {

double triangle(double f, double lo, double center, double hi) {
  if (f < lo || f >= hi) return 0.0;
  if (f < center) return (f - lo) / (center - lo);
  return (f - hi) / (center - hi);
}

// Evaluates every triangle of `edges` on bins 0..n_bins-1 spaced bin_hz apart.
MatrixXd evaluate(const VectorXd& edges, Eigen::Index n_bins, double bin_hz) {
  const auto n_filters = edges.size() - 2;
  MatrixXd weights = MatrixXd::Zero(n_filters, n_bins);
  for (Eigen::Index m = 0; m < n_filters; ++m) {
    for (Eigen::Index k = 0; k < n_bins; ++k) {
      weights(m, k) = triangle(static_cast<double>(k) * bin_hz, edges[m],
                               edges[m + 1], edges[m + 2]);
    }
  }
  return weights;
}

void report_empty_rows(MelFilterBank& bank, int up_to) {
  for (int m = 0; m < up_to; ++m) {
    if (bank.weights.row(m).maxCoeff() == 0.0) {
      bank.warnings.push_back("filter " + std::to_string(m + 1) +
                              " covers no DFT bin (grid too coarse)");
    }
  }
}

}  // namespace

void validate(const MelBankSpec& spec) {
  if (spec.n_filters < 1) throw ConfigError("n_filters must be >= 1");
  if (spec.sample_rate <= 0) throw ConfigError("sample_rate must be positive");
  if (spec.frame_len < 2) throw ConfigError("frame_len must be >= 2");
  if (!(spec.f_min >= 0.0 && spec.f_min < spec.f_max)) {
    throw ConfigError("need 0 <= f_min < f_max");
  }
  if (spec.f_max > spec.sample_rate / 2.0) {
    throw ConfigError("f_max " + std::to_string(spec.f_max) +
                      " Hz exceeds the Nyquist frequency");
  }
}

VectorXd center_frequencies(const MelBankSpec& spec) {
  validate(spec);
  const double mel_lo = hz_to_mel(spec.f_min);
  const double mel_hi = hz_to_mel(spec.f_max);
  const double step = (mel_hi - mel_lo) / (spec.n_filters + 1);
  VectorXd edges(spec.n_filters + 2);
  for (int m = 0; m <= spec.n_filters + 1; ++m) {
    edges[m] = mel_to_hz(mel_lo + m * step);
  }
  edges[0] = spec.f_min;
  edges[spec.n_filters + 1] = spec.f_max;
  return edges;
}

MelFilterBank build_filterbank(const MelBankSpec& spec) {
  MelFilterBank bank;
  bank.edges_hz = center_frequencies(spec);
  bank.centers_hz = bank.edges_hz.segment(1, spec.n_filters);
  bank.sample_rate = spec.sample_rate;
  bank.bin_hz = spec.bin_hz();
  bank.weights = evaluate(bank.edges_hz, spec.n_bins(), bank.bin_hz);
  bank.active_count = spec.n_filters;
  report_empty_rows(bank, bank.active_count);
  return bank;
}

MelFilterBank build_modified_filterbank(const MelBankSpec& spec, int alpha) {
  if (alpha < 1) throw ConfigError("alpha must be >= 1");
  validate(spec);
  if (spec.frame_len % alpha != 0) {
    throw ConfigError("alpha " + std::to_string(alpha) +
                      " does not divide the frame length " +
                      std::to_string(spec.frame_len));
  }
  if (spec.sample_rate % alpha != 0) {
    throw ConfigError("alpha " + std::to_string(alpha) +
                      " does not divide the sample rate " +
                      std::to_string(spec.sample_rate));
  }
  const Eigen::Index sub_len = spec.frame_len / alpha;
  const Eigen::Index sub_bins = sub_len / 2 + 1;
  const double nyquist = spec.sample_rate / (2.0 * alpha);

  MelFilterBank bank;
  bank.edges_hz = center_frequencies(spec);
  bank.centers_hz = bank.edges_hz.segment(1, spec.n_filters);
  bank.sample_rate = spec.sample_rate / alpha;
  bank.bin_hz = spec.bin_hz();
  bank.weights = evaluate(bank.edges_hz, sub_bins, bank.bin_hz);

  bank.active_count = 0;
  while (bank.active_count < spec.n_filters &&
         bank.centers_hz[bank.active_count] < nyquist) {
    ++bank.active_count;
  }
  bank.weights.bottomRows(spec.n_filters - bank.active_count).setZero();
  for (Eigen::Index k = 0; k < sub_bins; ++k) {
    if (static_cast<double>(k) * bank.bin_hz > nyquist) bank.weights.col(k).setZero();
  }
  report_empty_rows(bank, bank.active_count);
  return bank;
}

}  // namespace mfsub::melbank
