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


#ifndef MFSUB_MELBANK_H_
#define MFSUB_MELBANK_H_

#include <cmath>
#include <string>
#include <vector>

#include "mfsub/error.h"
#include "mfsub/types.h"

namespace mfsub::melbank {

template <typename Scalar>
Scalar hz_to_mel(Scalar hz) {
  if (!(hz >= Scalar(0))) throw ConfigError("hz_to_mel: frequency must be >= 0");
  return Scalar(2595) * std::log10(Scalar(1) + hz / Scalar(700));
}

template <typename Scalar>
Scalar mel_to_hz(Scalar mel) {
  if (!(mel >= Scalar(0))) throw ConfigError("mel_to_hz: mel value must be >= 0");
  return Scalar(700) * (std::pow(Scalar(10), mel / Scalar(2595)) - Scalar(1));
}

// Geometry of a triangular bank on the one-sided grid of an N-point DFT.
struct MelBankSpec {
  int n_filters = 30;
  double f_min = 130.0;
  double f_max = 6800.0;
  int sample_rate = 16000;
  Eigen::Index frame_len = 512;

  Eigen::Index n_bins() const { return frame_len / 2 + 1; }
  double bin_hz() const { return static_cast<double>(sample_rate) / frame_len; }
};

void validate(const MelBankSpec& spec);

struct MelFilterBank {
  MatrixXd weights;     // F x K, rows indexed by filter
  VectorXd centers_hz;  // F entries
  VectorXd edges_hz;    // F + 2 entries; edges_hz[0] = f_min, edges_hz[F+1] = f_max
  int active_count = 0; // rows at or beyond this index are zero
  int sample_rate = 0;  // rate of the spectra this bank multiplies
  double bin_hz = 0.0;
  std::vector<std::string> warnings;

  int num_filters() const { return static_cast<int>(weights.rows()); }
  Eigen::Index num_bins() const { return weights.cols(); }
};

// Band edges equally spaced on the mel axis from f_min to f_max, i.e.
// mel(f_min) + m * (mel(f_max) - mel(f_min)) / (F + 1) for m = 0..F+1.
VectorXd center_frequencies(const MelBankSpec& spec);

// Triangular filters with peaks at the centres and feet at the neighbouring
// centres. Filters that land between two bins are kept (all zero) and
// reported in `warnings`.
MelFilterBank build_filterbank(const MelBankSpec& spec);

// Bank for the same geometry applied to a signal decimated by `alpha` and
// analysed with frames of N / alpha samples. The bin spacing is unchanged, so
// every filter keeps its centre and bandwidth in Hz; filters centred at or
// above the reduced Nyquist sample_rate / (2 alpha) are zeroed and
// active_count counts the ones strictly below it.
MelFilterBank build_modified_filterbank(const MelBankSpec& spec, int alpha);

}  // namespace mfsub::melbank

#endif  // MFSUB_MELBANK_H_
