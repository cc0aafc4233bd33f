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


#ifndef MFSUB_AUDIO_IO_H_
#define MFSUB_AUDIO_IO_H_

#include <filesystem>
#include <string>

#include "mfsub/error.h"
#include "mfsub/types.h"

namespace mfsub {

// Mono waveform with amplitudes in [-1, 1].
struct AudioSignal {
  VectorXd samples;
  int sample_rate = 0;

  Eigen::Index size() const { return samples.size(); }
  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

// Throws ConfigError unless sample_rate > 0 and every sample is finite.
void validate(const AudioSignal& signal);

class WavError : public IoError {
 public:
  enum class Kind {
    kMissingFile,
    kUnsupportedEncoding,
    kEmptyData,
    kMalformedHeader,
  };

  WavError(Kind kind, const std::string& what) : IoError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Reads a RIFF/WAVE file holding 8/16/24/32-bit integer PCM or 32-bit float
// samples (WAVE_FORMAT_EXTENSIBLE is accepted with either subformat). Signed
// n-bit codes are divided by 2^(n-1); 8-bit unsigned codes are re-centred
// first. Only channel 0 of multi-channel files is kept.
AudioSignal read_wav(const std::filesystem::path& path);

enum class WavEncoding { kPcm16, kFloat32 };

// Mono writer, mainly for fixtures. kPcm16 clips to [-1, 1) and rounds.
void write_wav(const AudioSignal& signal, const std::filesystem::path& path,
               WavEncoding encoding = WavEncoding::kPcm16);

enum class MatrixFormat { kCsv, kJson };

// Picks kJson for a ".json" extension, kCsv otherwise.
MatrixFormat matrix_format_for(const std::filesystem::path& path);

// Row-major text dump with 17 significant digits. CSV has one matrix row per
// line; JSON is an array of row arrays. Throws ConfigError on an empty matrix
// and IoError on an unwritable path.
void write_matrix(const MatrixXd& matrix, const std::filesystem::path& path,
                  MatrixFormat format);
void write_matrix(const MatrixXd& matrix, std::ostream& out,
                  MatrixFormat format);

MatrixXd read_matrix(const std::filesystem::path& path, MatrixFormat format);
MatrixXd parse_matrix_csv(const std::string& text);

}  // namespace mfsub

#endif  // MFSUB_AUDIO_IO_H_
