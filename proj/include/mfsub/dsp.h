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


#ifndef MFSUB_DSP_H_
#define MFSUB_DSP_H_

#include <cmath>
#include <numbers>

#include "mfsub/audio_io.h"
#include "mfsub/error.h"
#include "mfsub/types.h"

namespace mfsub::dsp {

// N x P matrix; column p is the slice signal[p*hop, p*hop + N).
struct FrameMatrix {
  MatrixXd frames;
  Eigen::Index hop = 0;

  Eigen::Index frame_len() const { return frames.rows(); }
  Eigen::Index num_frames() const { return frames.cols(); }
};

// One-sided |DFT|: K = N/2 + 1 rows, bin k sits at k * bin_hz.
struct MagnitudeSpectrogram {
  MatrixXd mags;
  double bin_hz = 0.0;

  Eigen::Index num_bins() const { return mags.rows(); }
  Eigen::Index num_frames() const { return mags.cols(); }
};

// Full frames only; a trailing partial frame is dropped.
FrameMatrix frame_signal(const AudioSignal& signal, Eigen::Index frame_len,
                         Eigen::Index hop);

enum class WindowKind {
  kStandard,       // symmetric Hamming, 0.54 - 0.46 cos(2 pi n / (N - 1))
  kPaperLiteral,   // 0.54 - 0.46 cos(pi n / N), a half-period taper
  kRectangular,
};

template <typename Scalar = double>
Vector<Scalar> hamming_window(Eigen::Index n, WindowKind kind = WindowKind::kStandard) {
  if (n < 2) throw ConfigError("window length must be at least 2");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Vector<Scalar> w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar t = static_cast<Scalar>(i);
    switch (kind) {
      case WindowKind::kStandard:
        w[i] = Scalar(0.54) - Scalar(0.46) * std::cos(Scalar(2) * pi * t / Scalar(n - 1));
        break;
      case WindowKind::kPaperLiteral:
        w[i] = Scalar(0.54) - Scalar(0.46) * std::cos(pi * t / Scalar(n));
        break;
      case WindowKind::kRectangular:
        w[i] = Scalar(1);
        break;
    }
  }
  return w;
}

// Full two-sided DFT of a real sequence (unnormalised forward transform).
VectorXcd fft(const Eigen::Ref<const VectorXd>& x);

// Column p is |DFT_N(frame_p .* window)| for bins 0..N/2.
MagnitudeSpectrogram magnitude_spectrum(const FrameMatrix& frames,
                                        const Eigen::Ref<const VectorXd>& window,
                                        int sample_rate);

}  // namespace mfsub::dsp

#endif  // MFSUB_DSP_H_
