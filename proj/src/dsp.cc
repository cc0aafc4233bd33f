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


#include "mfsub/dsp.h"

#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace mfsub::dsp {

FrameMatrix frame_signal(const AudioSignal& signal, Eigen::Index frame_len,
                         Eigen::Index hop) {
  if (frame_len <= 0) throw ConfigError("frame_len must be positive");
  if (hop < 1 || hop > frame_len) {
    throw ConfigError("hop must lie in [1, frame_len], got " + std::to_string(hop));
  }
  if (signal.size() < frame_len) {
    throw ConfigError("signal has " + std::to_string(signal.size()) +
                      " samples, shorter than one frame of " +
                      std::to_string(frame_len));
  }
  const Eigen::Index num_frames = (signal.size() - frame_len) / hop + 1;
  FrameMatrix out;
  out.hop = hop;
  out.frames.resize(frame_len, num_frames);
  for (Eigen::Index p = 0; p < num_frames; ++p) {
    out.frames.col(p) = signal.samples.segment(p * hop, frame_len);
  }
  return out;
}

VectorXcd fft(const Eigen::Ref<const VectorXd>& x) {
  Eigen::FFT<double> engine;
  const std::vector<double> in(x.data(), x.data() + x.size());
  std::vector<std::complex<double>> spec;
  engine.fwd(spec, in);
  return Eigen::Map<const VectorXcd>(spec.data(), static_cast<Eigen::Index>(spec.size()));
}

MagnitudeSpectrogram magnitude_spectrum(const FrameMatrix& frames,
                                        const Eigen::Ref<const VectorXd>& window,
                                        int sample_rate) {
  const Eigen::Index n = frames.frame_len();
  if (window.size() != n) {
    throw ConfigError("window length " + std::to_string(window.size()) +
                      " does not match frame length " + std::to_string(n));
  }
  if (sample_rate <= 0) throw ConfigError("sample_rate must be positive");

  const Eigen::Index bins = n / 2 + 1;
  MagnitudeSpectrogram out;
  out.bin_hz = static_cast<double>(sample_rate) / static_cast<double>(n);
  out.mags.resize(bins, frames.num_frames());

  Eigen::FFT<double> engine;
  engine.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> buf(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> spec;
  for (Eigen::Index p = 0; p < frames.num_frames(); ++p) {
    Eigen::Map<VectorXd>(buf.data(), n) = frames.frames.col(p).cwiseProduct(window);
    engine.fwd(spec, buf);
    for (Eigen::Index k = 0; k < bins; ++k) {
      out.mags(k, p) = std::abs(spec[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

}  // namespace mfsub::dsp
