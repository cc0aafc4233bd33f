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


#include "mfsub/cepstrum.h"

#include <cmath>
#include <string>

#include "mfsub/error.h"

namespace mfsub::cepstrum {

void validate(const PipelineConfig& config, int sample_rate) {
  if (sample_rate <= 0) throw ConfigError("sample_rate must be positive");
  if (config.n_filters < 1) throw ConfigError("n_filters must be >= 1");
  if (config.alpha < 1) throw ConfigError("alpha must be an integer >= 1");
  if (!(config.frame_duration_ms > 0.0)) {
    throw ConfigError("frame_duration_ms must be positive");
  }
  if (!(config.log_floor > 0.0)) throw ConfigError("log_floor must be positive");
  if (!(config.fill_decay > 0.0 && config.fill_decay <= 1.0)) {
    throw ConfigError("fill_decay must lie in (0, 1]");
  }
  if (config.hop_kind == HopKind::kFraction &&
      !(config.hop_fraction > 0.0 && config.hop_fraction <= 1.0)) {
    throw ConfigError("hop_fraction must lie in (0, 1]");
  }
  if (!(config.f_min >= 0.0 && config.f_min < config.f_max)) {
    throw ConfigError("f_min/f_max: need 0 <= f_min < f_max");
  }
  if (config.f_max > sample_rate / 2.0) {
    throw ConfigError("f_max: " + std::to_string(config.f_max) +
                      " Hz exceeds the Nyquist frequency of " +
                      std::to_string(sample_rate) + " Hz audio");
  }
  const Eigen::Index n = frame_length(config, sample_rate);
  if (n % 2 != 0) {
    throw ConfigError("frame_duration_ms: frame of " + std::to_string(n) +
                      " samples is not even");
  }
  if (n % config.alpha != 0) {
    throw ConfigError("alpha: " + std::to_string(config.alpha) +
                      " does not divide the frame length " + std::to_string(n));
  }
  if (sample_rate % config.alpha != 0) {
    throw ConfigError("alpha: " + std::to_string(config.alpha) +
                      " does not divide the sample rate " + std::to_string(sample_rate));
  }
  hop_length(config, n / config.alpha);
}

Eigen::Index frame_length(const PipelineConfig& config, int sample_rate) {
  const double exact = config.frame_duration_ms * sample_rate / 1000.0;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-6 || rounded < 2) {
    throw ConfigError("frame_duration_ms: " + std::to_string(config.frame_duration_ms) +
                      " ms is not a whole number (>= 2) of samples at " +
                      std::to_string(sample_rate) + " Hz");
  }
  return static_cast<Eigen::Index>(rounded);
}

Eigen::Index hop_length(const PipelineConfig& config, Eigen::Index frame_len) {
  const Eigen::Index hop =
      config.hop_kind == HopKind::kPaperLiteral
          ? frame_len / 2 - 1
          : static_cast<Eigen::Index>(std::llround(config.hop_fraction * frame_len));
  if (hop < 1 || hop > frame_len) {
    throw ConfigError("hop: " + std::to_string(hop) + " samples is outside [1, " +
                      std::to_string(frame_len) + "]");
  }
  return hop;
}

melbank::MelBankSpec bank_spec(const PipelineConfig& config, int sample_rate) {
  melbank::MelBankSpec spec;
  spec.n_filters = config.n_filters;
  spec.f_min = config.f_min;
  spec.f_max = config.f_max;
  spec.sample_rate = sample_rate;
  spec.frame_len = frame_length(config, sample_rate);
  return spec;
}

MelLogSpectrum log_mel_energies(const melbank::MelFilterBank& bank,
                                const dsp::MagnitudeSpectrogram& spectrogram,
                                double log_floor) {
  if (bank.num_bins() != spectrogram.num_bins()) {
    throw ConfigError("filter bank has " + std::to_string(bank.num_bins()) +
                      " bins, spectrogram has " +
                      std::to_string(spectrogram.num_bins()));
  }
  if (!(log_floor > 0.0)) throw ConfigError("log_floor must be positive");
  MelLogSpectrum out;
  out.values = (bank.weights * spectrogram.mags).cwiseMax(log_floor).array().log();
  return out;
}

MelLogSpectrum fill_inactive_bands(const MelLogSpectrum& log_spectrum,
                                   int active_count, double fill_decay) {
  const auto n_filters = log_spectrum.values.rows();
  if (active_count < 1 || active_count > n_filters) {
    throw ConfigError("active filter count " + std::to_string(active_count) +
                      " outside [1, " + std::to_string(n_filters) + "]");
  }
  MelLogSpectrum out = log_spectrum;
  const auto last_active = log_spectrum.values.row(active_count - 1);
  double gain = 1.0;
  for (Eigen::Index m = active_count; m < n_filters; ++m) {
    gain *= fill_decay;
    out.values.row(m) = gain * last_active;
  }
  return out;
}

MfccMatrix dct_mfcc(const MelLogSpectrum& log_spectrum) {
  MfccMatrix out;
  out.coeffs = dct_matrix<double>(log_spectrum.values.rows()) * log_spectrum.values;
  return out;
}

PipelineTrace analyze(const AudioSignal& signal, const PipelineConfig& config) {
  validate(signal);
  validate(config, signal.sample_rate);
  const auto spec = bank_spec(config, signal.sample_rate);
  const auto frames =
      dsp::frame_signal(signal, spec.frame_len, hop_length(config, spec.frame_len));

  PipelineTrace trace;
  trace.bank = melbank::build_filterbank(spec);
  trace.spectrogram = dsp::magnitude_spectrum(
      frames, dsp::hamming_window(spec.frame_len, config.window), signal.sample_rate);
  trace.log_energies = log_mel_energies(trace.bank, trace.spectrogram, config.log_floor);
  trace.mfcc = dct_mfcc(trace.log_energies);
  return trace;
}

PipelineTrace analyze_subsampled(const AudioSignal& decimated,
                                 const PipelineConfig& config) {
  validate(decimated);
  if (config.alpha < 1) throw ConfigError("alpha must be an integer >= 1");
  const int full_rate = decimated.sample_rate * config.alpha;
  validate(config, full_rate);
  const auto spec = bank_spec(config, full_rate);
  const Eigen::Index sub_len = spec.frame_len / config.alpha;
  const auto frames =
      dsp::frame_signal(decimated, sub_len, hop_length(config, sub_len));

  PipelineTrace trace;
  trace.bank = melbank::build_modified_filterbank(spec, config.alpha);
  trace.spectrogram = dsp::magnitude_spectrum(
      frames, dsp::hamming_window(sub_len, config.window), decimated.sample_rate);
  const auto raw = log_mel_energies(trace.bank, trace.spectrogram, config.log_floor);
  trace.log_energies =
      fill_inactive_bands(raw, trace.bank.active_count, config.fill_decay);
  trace.mfcc = dct_mfcc(trace.log_energies);
  return trace;
}

MfccMatrix mfcc_pipeline(const AudioSignal& signal, const PipelineConfig& config) {
  return analyze(signal, config).mfcc;
}

MfccMatrix mfcc_subsampled_pipeline(const AudioSignal& decimated,
                                    const PipelineConfig& config) {
  return analyze_subsampled(decimated, config).mfcc;
}

}  // namespace mfsub::cepstrum
