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


#ifndef MFSUB_CEPSTRUM_H_
#define MFSUB_CEPSTRUM_H_

#include <cmath>
#include <numbers>

#include "mfsub/audio_io.h"
#include "mfsub/dsp.h"
#include "mfsub/melbank.h"
#include "mfsub/resample.h"
#include "mfsub/types.h"

namespace mfsub::cepstrum {

// Natural-log filter bank energies, F x P.
struct MelLogSpectrum {
  MatrixXd values;
};

// Cepstral coefficients, F x P; row r - 1 holds coefficient r.
struct MfccMatrix {
  MatrixXd coeffs;

  Eigen::Index num_coeffs() const { return coeffs.rows(); }
  Eigen::Index num_frames() const { return coeffs.cols(); }
};

enum class HopKind {
  kFraction,      // hop = hop_fraction * N
  kPaperLiteral,  // hop = N/2 - 1
};

struct PipelineConfig {
  int n_filters = 30;
  double f_min = 130.0;
  double f_max = 6800.0;
  double frame_duration_ms = 32.0;
  double hop_fraction = 0.5;
  HopKind hop_kind = HopKind::kFraction;
  dsp::WindowKind window = dsp::WindowKind::kStandard;
  double log_floor = 1e-10;
  int alpha = 2;
  double fill_decay = 0.95;
  resample::PreFilter prefilter = resample::PreFilter::kNone;
};

// Checks the config against a full-rate sample rate; throws ConfigError
// naming the offending field.
void validate(const PipelineConfig& config, int sample_rate);

// N = frame_duration_ms * sample_rate / 1000, required to be an integer.
Eigen::Index frame_length(const PipelineConfig& config, int sample_rate);
Eigen::Index hop_length(const PipelineConfig& config, Eigen::Index frame_len);

melbank::MelBankSpec bank_spec(const PipelineConfig& config, int sample_rate);

// ln(max(bank * spectrogram, log_floor)); magnitudes, not powers.
MelLogSpectrum log_mel_energies(const melbank::MelFilterBank& bank,
                                const dsp::MagnitudeSpectrogram& spectrogram,
                                double log_floor);

// Replaces rows active_count+1..F (1-based) with
// fill_decay^(m - active_count) * row active_count, frame by frame. The
// scaling acts on the log values themselves.
MelLogSpectrum fill_inactive_bands(const MelLogSpectrum& log_spectrum,
                                   int active_count, double fill_decay);

// F x F matrix with entry (r-1, m-1) = cos(r (2m - 1) pi / (2F)).
template <typename Scalar = double>
Matrix<Scalar> dct_matrix(Eigen::Index n_filters) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Matrix<Scalar> basis(n_filters, n_filters);
  for (Eigen::Index r = 1; r <= n_filters; ++r) {
    for (Eigen::Index m = 1; m <= n_filters; ++m) {
      basis(r - 1, m - 1) = std::cos(Scalar(r) * Scalar(2 * m - 1) * pi /
                                     (Scalar(2) * Scalar(n_filters)));
    }
  }
  return basis;
}

// Unscaled cosine transform, coefficients r = 1..F.
MfccMatrix dct_mfcc(const MelLogSpectrum& log_spectrum);

// Intermediate products of one pipeline run.
struct PipelineTrace {
  melbank::MelFilterBank bank;
  dsp::MagnitudeSpectrogram spectrogram;
  MelLogSpectrum log_energies;  // after fill-in for the subsampled pipeline
  MfccMatrix mfcc;
};

// Full-rate path: frame, window, |DFT|, standard bank, log, cosine transform.
PipelineTrace analyze(const AudioSignal& signal, const PipelineConfig& config);

// Path for a signal already decimated by config.alpha: frames of N / alpha
// samples (same duration), the modified bank, fill-in of the bands above the
// reduced Nyquist, then the cosine transform.
PipelineTrace analyze_subsampled(const AudioSignal& decimated,
                                 const PipelineConfig& config);

MfccMatrix mfcc_pipeline(const AudioSignal& signal, const PipelineConfig& config);
MfccMatrix mfcc_subsampled_pipeline(const AudioSignal& decimated,
                                    const PipelineConfig& config);

}  // namespace mfsub::cepstrum

#endif  // MFSUB_CEPSTRUM_H_
