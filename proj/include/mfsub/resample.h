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


#ifndef MFSUB_RESAMPLE_H_
#define MFSUB_RESAMPLE_H_

#include "mfsub/audio_io.h"
#include "mfsub/types.h"

namespace mfsub::resample {

// Full two-sided DFT of one frame.
using ComplexSpectrum = VectorXcd;

enum class PreFilter { kNone, kLowPass };

// y[s] = x[alpha * s]; the output rate is sample_rate / alpha. With kNone the
// content above the new Nyquist folds back (no anti-alias filter). kLowPass
// runs a Hamming-windowed sinc low-pass at the new Nyquist first; it exists
// for comparison runs only.
AudioSignal decimate(const AudioSignal& signal, int alpha,
                     PreFilter prefilter = PreFilter::kNone);

// Y(k') = (1/alpha) * sum_{l=0}^{alpha-1} X(k' + l*S), S = N / alpha.
// For a real frame x this equals DFT_S(x decimated by alpha).
ComplexSpectrum aliased_spectrum(const ComplexSpectrum& spectrum, int alpha);

// Odd-length windowed-sinc low-pass; `cutoff` in cycles per sample (0, 0.5].
VectorXd lowpass_taps(double cutoff, Eigen::Index half_width);

}  // namespace mfsub::resample

#endif  // MFSUB_RESAMPLE_H_
