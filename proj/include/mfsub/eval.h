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


#ifndef MFSUB_EVAL_H_
#define MFSUB_EVAL_H_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfsub/cepstrum.h"
#include "mfsub/error.h"
#include "mfsub/types.h"

namespace mfsub::eval {

// MFCC frames whose population standard deviation falls at or below this are
// treated as constant. A constant log spectrum produces rounding noise around
// 1e-15 after the cosine transform, which must not count as a real frame.
inline constexpr double kDegenerateSpread = 1e-9;

// Pearson r with population normalisation, clamped to [-1, 1]. Throws
// NumericError when either input's standard deviation is <= degenerate_spread.
template <typename DerivedX, typename DerivedY>
double pearson(const Eigen::MatrixBase<DerivedX>& x,
               const Eigen::MatrixBase<DerivedY>& y,
               double degenerate_spread = 0.0) {
  if (x.size() != y.size()) throw ConfigError("pearson: length mismatch");
  if (x.size() < 2) throw ConfigError("pearson: need at least two samples");
  const auto n = static_cast<double>(x.size());
  const auto xa = x.reshaped().array().template cast<double>();
  const auto ya = y.reshaped().array().template cast<double>();
  const auto dx = (xa - xa.mean()).eval();
  const auto dy = (ya - ya.mean()).eval();
  const double sxx = dx.square().sum();
  const double syy = dy.square().sum();
  const double floor = degenerate_spread * degenerate_spread * n;
  if (sxx <= floor || syy <= floor) {
    throw NumericError("pearson: zero variance, correlation undefined");
  }
  return std::clamp((dx * dy).sum() / std::sqrt(sxx * syy), -1.0, 1.0);
}

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;  // population
};

MeanVariance mean_variance(std::span<const double> values);

// Whole-utterance comparison: both matrices truncated to the shorter frame
// count and flattened frame by frame.
double compare_case1(const cepstrum::MfccMatrix& orig,
                     const cepstrum::MfccMatrix& sub);

struct FrameCorrelations {
  std::vector<double> r;       // one entry per non-degenerate frame
  std::vector<Eigen::Index> frame_index;
  int skipped_frames = 0;
  MeanVariance stats;
};

// Per-frame comparison. Constant frames are skipped and counted; throws
// NumericError when every frame is constant.
FrameCorrelations compare_case2(const cepstrum::MfccMatrix& orig,
                                const cepstrum::MfccMatrix& sub);

enum class Case { kI, kII };

struct FileScore {
  std::string id;
  double r = 0.0;  // Case II: mean over the file's frames
};

struct SkippedFile {
  std::string id;
  std::string reason;
};

struct CorrelationReport {
  Case which = Case::kI;
  int alpha = 1;
  std::vector<FileScore> per_file;
  MeanVariance aggregate;
  std::vector<SkippedFile> skipped;
  // Case II only: statistics over all frames of all files pooled together.
  MeanVariance pooled;
  long pooled_frames = 0;
  long skipped_frames = 0;
};

struct CorpusReports {
  CorrelationReport case1;
  CorrelationReport case2;
};

// Both MFCC streams for one full-rate file.
struct FilePair {
  cepstrum::MfccMatrix original;
  cepstrum::MfccMatrix subsampled;
};

FilePair extract_pair(const AudioSignal& signal, const cepstrum::PipelineConfig& config);

// Reads, decimates and scores each file. Unreadable or degenerate files land
// in `skipped`; throws IoError when no file survives. Per-file work runs on
// up to `jobs` threads; output order follows `files`.
CorpusReports corpus_reports(const std::vector<std::filesystem::path>& files,
                             const cepstrum::PipelineConfig& config, int jobs = 1);

CorrelationReport corpus_report(const std::vector<std::filesystem::path>& files,
                                const cepstrum::PipelineConfig& config, Case which,
                                int jobs = 1);

std::string case_name(Case which);
nlohmann::json to_json(const CorrelationReport& report);

}  // namespace mfsub::eval

#endif  // MFSUB_EVAL_H_
