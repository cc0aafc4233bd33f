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


#include "mfsub/resample.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mfsub/dsp.h"
#include "mfsub/error.h"

namespace mfsub::resample {
namespace {

void check_alpha(int alpha) {
  if (alpha < 1) {
    throw ConfigError("decimation factor must be an integer >= 1, got " +
                      std::to_string(alpha));
  }
}

VectorXd convolve_same(const VectorXd& x, const VectorXd& taps) {
  const Eigen::Index half = taps.size() / 2;
  const Eigen::Index n = x.size();
  VectorXd y = VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, i - half);
    const Eigen::Index hi = std::min<Eigen::Index>(n - 1, i + half);
    double acc = 0.0;
    for (Eigen::Index j = lo; j <= hi; ++j) acc += x[j] * taps[half + i - j];
    y[i] = acc;
  }
  return y;
}

}  // namespace

VectorXd lowpass_taps(double cutoff, Eigen::Index half_width) {
  if (!(cutoff > 0.0 && cutoff <= 0.5)) throw ConfigError("cutoff must lie in (0, 0.5]");
  const Eigen::Index len = 2 * half_width + 1;
  const VectorXd window = dsp::hamming_window(len);
  VectorXd taps(len);
  for (Eigen::Index i = 0; i < len; ++i) {
    const double t = static_cast<double>(i - half_width);
    const double sinc = t == 0.0 ? 1.0
                                 : std::sin(2.0 * std::numbers::pi * cutoff * t) /
                                       (2.0 * std::numbers::pi * cutoff * t);
    taps[i] = 2.0 * cutoff * sinc * window[i];
  }
  return taps / taps.sum();
}

AudioSignal decimate(const AudioSignal& signal, int alpha, PreFilter prefilter) {
  check_alpha(alpha);
  validate(signal);
  if (signal.sample_rate % alpha != 0) {
    throw ConfigError("decimation factor " + std::to_string(alpha) +
                      " does not divide the sample rate " +
                      std::to_string(signal.sample_rate));
  }
  if (alpha == 1) return signal;

  const VectorXd source = prefilter == PreFilter::kLowPass
                              ? convolve_same(signal.samples,
                                              lowpass_taps(0.5 / alpha, 16 * alpha))
                              : signal.samples;
  AudioSignal out;
  out.sample_rate = signal.sample_rate / alpha;
  const Eigen::Index n = (source.size() + alpha - 1) / alpha;
  out.samples = Eigen::Map<const VectorXd, 0, Eigen::InnerStride<>>(
      source.data(), n, Eigen::InnerStride<>(alpha));
  return out;
}

ComplexSpectrum aliased_spectrum(const ComplexSpectrum& spectrum, int alpha) {
  check_alpha(alpha);
  const Eigen::Index n = spectrum.size();
  if (n == 0 || n % alpha != 0) {
    throw ConfigError("decimation factor " + std::to_string(alpha) +
                      " does not divide the spectrum length " + std::to_string(n));
  }
  const Eigen::Index s = n / alpha;
  ComplexSpectrum folded = ComplexSpectrum::Zero(s);
  for (int l = 0; l < alpha; ++l) folded += spectrum.segment(l * s, s);
  return folded / static_cast<double>(alpha);
}

}  // namespace mfsub::resample
