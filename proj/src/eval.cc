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


#include "mfsub/eval.h"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <thread>

#include "mfsub/audio_io.h"
#include "mfsub/resample.h"

namespace mfsub::eval {
namespace {

std::pair<MatrixXd, MatrixXd> aligned(const cepstrum::MfccMatrix& orig,
                                      const cepstrum::MfccMatrix& sub) {
  if (orig.num_coeffs() != sub.num_coeffs()) {
    throw ConfigError("MFCC matrices disagree on the coefficient count: " +
                      std::to_string(orig.num_coeffs()) + " vs " +
                      std::to_string(sub.num_coeffs()));
  }
  const Eigen::Index frames = std::min(orig.num_frames(), sub.num_frames());
  if (frames < 1) throw ConfigError("MFCC matrices have no frames");
  return {orig.coeffs.leftCols(frames), sub.coeffs.leftCols(frames)};
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& body) {
  const auto workers =
      static_cast<std::size_t>(std::clamp<long>(jobs, 1, static_cast<long>(std::max<std::size_t>(count, 1))));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
}

struct FileOutcome {
  std::optional<double> case1;
  std::optional<FrameCorrelations> case2;
  std::string case1_error;
  std::string case2_error;
};

FileOutcome score_file(const std::filesystem::path& path,
                       const cepstrum::PipelineConfig& config) {
  FileOutcome outcome;
  FilePair pair;
  try {
    pair = extract_pair(read_wav(path), config);
  } catch (const std::exception& e) {
    outcome.case1_error = outcome.case2_error = e.what();
    return outcome;
  }
  try {
    outcome.case1 = compare_case1(pair.original, pair.subsampled);
  } catch (const Error& e) {
    outcome.case1_error = e.what();
  }
  try {
    outcome.case2 = compare_case2(pair.original, pair.subsampled);
  } catch (const Error& e) {
    outcome.case2_error = e.what();
  }
  return outcome;
}

}  // namespace

MeanVariance mean_variance(std::span<const double> values) {
  MeanVariance out;
  if (values.empty()) return out;
  const Eigen::Map<const VectorXd> v(values.data(), static_cast<Eigen::Index>(values.size()));
  out.mean = v.mean();
  out.variance = (v.array() - out.mean).square().mean();
  return out;
}

double compare_case1(const cepstrum::MfccMatrix& orig,
                     const cepstrum::MfccMatrix& sub) {
  const auto [a, b] = aligned(orig, sub);
  // Column-major storage is already frame-major concatenation.
  return pearson(a.reshaped(), b.reshaped(), kDegenerateSpread);
}

FrameCorrelations compare_case2(const cepstrum::MfccMatrix& orig,
                                const cepstrum::MfccMatrix& sub) {
  const auto [a, b] = aligned(orig, sub);
  FrameCorrelations out;
  for (Eigen::Index p = 0; p < a.cols(); ++p) {
    try {
      out.r.push_back(pearson(a.col(p), b.col(p), kDegenerateSpread));
      out.frame_index.push_back(p);
    } catch (const NumericError&) {
      ++out.skipped_frames;
    }
  }
  if (out.r.empty()) {
    throw NumericError("every frame has constant MFCCs; per-frame correlation undefined");
  }
  out.stats = mean_variance(out.r);
  return out;
}

FilePair extract_pair(const AudioSignal& signal, const cepstrum::PipelineConfig& config) {
  FilePair pair;
  pair.original = cepstrum::mfcc_pipeline(signal, config);
  pair.subsampled = cepstrum::mfcc_subsampled_pipeline(
      resample::decimate(signal, config.alpha, config.prefilter), config);
  return pair;
}

CorpusReports corpus_reports(const std::vector<std::filesystem::path>& files,
                             const cepstrum::PipelineConfig& config, int jobs) {
  if (files.empty()) throw ConfigError("no input files");
  std::vector<FileOutcome> outcomes(files.size());
  parallel_for(files.size(), jobs,
               [&](std::size_t i) { outcomes[i] = score_file(files[i], config); });

  CorpusReports reports;
  reports.case1.which = Case::kI;
  reports.case2.which = Case::kII;
  reports.case1.alpha = reports.case2.alpha = config.alpha;
  std::vector<double> scores1;
  std::vector<double> scores2;
  std::vector<double> pooled;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string id = files[i].generic_string();
    const auto& o = outcomes[i];
    if (o.case1) {
      reports.case1.per_file.push_back({id, *o.case1});
      scores1.push_back(*o.case1);
    } else {
      reports.case1.skipped.push_back({id, o.case1_error});
    }
    if (o.case2) {
      reports.case2.per_file.push_back({id, o.case2->stats.mean});
      scores2.push_back(o.case2->stats.mean);
      pooled.insert(pooled.end(), o.case2->r.begin(), o.case2->r.end());
      reports.case2.skipped_frames += o.case2->skipped_frames;
    } else {
      reports.case2.skipped.push_back({id, o.case2_error});
    }
  }
  if (scores1.empty() && scores2.empty()) {
    throw IoError("all " + std::to_string(files.size()) + " input files failed; first error: " +
                  outcomes.front().case1_error);
  }
  reports.case1.aggregate = mean_variance(scores1);
  reports.case2.aggregate = mean_variance(scores2);
  reports.case2.pooled = mean_variance(pooled);
  reports.case2.pooled_frames = static_cast<long>(pooled.size());
  return reports;
}

CorrelationReport corpus_report(const std::vector<std::filesystem::path>& files,
                                const cepstrum::PipelineConfig& config, Case which,
                                int jobs) {
  auto reports = corpus_reports(files, config, jobs);
  return which == Case::kI ? std::move(reports.case1) : std::move(reports.case2);
}

std::string case_name(Case which) { return which == Case::kI ? "I" : "II"; }

nlohmann::json to_json(const CorrelationReport& report) {
  nlohmann::json j;
  j["case"] = case_name(report.which);
  j["alpha"] = report.alpha;
  j["n"] = report.per_file.size();
  j["mean"] = report.aggregate.mean;
  j["variance"] = report.aggregate.variance;
  j["per_file"] = nlohmann::json::array();
  for (const auto& f : report.per_file) j["per_file"].push_back({{"id", f.id}, {"r", f.r}});
  j["skipped"] = nlohmann::json::array();
  for (const auto& s : report.skipped) {
    j["skipped"].push_back({{"id", s.id}, {"reason", s.reason}});
  }
  if (report.which == Case::kII) {
    j["pooled"] = {{"mean", report.pooled.mean},
                   {"variance", report.pooled.variance},
                   {"frames", report.pooled_frames}};
    j["skipped_frames"] = report.skipped_frames;
  }
  return j;
}

}  // namespace mfsub::eval
