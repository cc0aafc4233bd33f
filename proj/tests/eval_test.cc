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

#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"

namespace mfsub::eval {
namespace {

using cepstrum::MfccMatrix;

MfccMatrix random_mfcc(Eigen::Index f, Eigen::Index p, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 4.0);
  MfccMatrix m{MatrixXd(f, p)};
  for (auto& v : m.coeffs.reshaped()) v = n(rng);
  return m;
}

TEST(Pearson, Basics) {
  const VectorXd x = (VectorXd(5) << 1.0, -2.0, 3.5, 0.25, 8.0).finished();
  EXPECT_DOUBLE_EQ(pearson(x, x), 1.0);
  EXPECT_DOUBLE_EQ(pearson(x, (-x).eval()), -1.0);
  EXPECT_THROW(pearson(Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(2, 2, 2)), NumericError);
  EXPECT_THROW(pearson(VectorXd::Ones(3), VectorXd::Ones(2)), ConfigError);
  EXPECT_THROW(pearson(VectorXd::Ones(1), VectorXd::Ones(1)), ConfigError);
}

TEST(Pearson, KnownValue) {
  // x = {1,2,3,4}, y = {2,1,4,3}: cov = 0.75, var = 1.25 each, r = 0.6.
  EXPECT_NEAR(pearson(Eigen::Vector4d(1, 2, 3, 4), Eigen::Vector4d(2, 1, 4, 3)), 0.6, 1e-15);
}

TEST(Pearson, SymmetryAndBoundsProperty) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + rng() % 100;
    const auto x = random_mfcc(n, 1, 2 * trial).coeffs.col(0).eval();
    const auto y = random_mfcc(n, 1, 2 * trial + 1).coeffs.col(0).eval();
    const double r = pearson(x, y);
    EXPECT_DOUBLE_EQ(r, pearson(y, x));
    EXPECT_GE(r, -1.0);
    EXPECT_LE(r, 1.0);
    EXPECT_NEAR(pearson(x, (3.0 * x.array() - 7.0).matrix().eval()), 1.0, 1e-12);
  }
}

TEST(MeanVariance, PopulationConvention) {
  const std::vector<double> r = {0.9, 1.0};
  const auto mv = mean_variance(r);
  EXPECT_NEAR(mv.mean, 0.95, 1e-15);
  EXPECT_NEAR(mv.variance, 0.0025, 1e-15);
}

TEST(CompareCase1, AffineInvariance) {
  const auto a = random_mfcc(30, 40, 1);
  EXPECT_DOUBLE_EQ(compare_case1(a, a), 1.0);
  EXPECT_NEAR(compare_case1(a, MfccMatrix{(2.0 * a.coeffs.array() + 5.0).matrix()}), 1.0, 1e-12);
  EXPECT_THROW(compare_case1(a, random_mfcc(29, 40, 2)), ConfigError);
}

TEST(CompareCase1, TruncatesToShorter) {
  const auto a = random_mfcc(13, 20, 5);
  MfccMatrix b{MatrixXd(13, 21)};
  b.coeffs.leftCols(20) = a.coeffs;
  b.coeffs.col(20).setConstant(1e6);
  EXPECT_DOUBLE_EQ(compare_case1(a, b), 1.0);
}

TEST(CompareCase2, PerFrame) {
  const auto a = random_mfcc(30, 10, 7);
  const auto same = compare_case2(a, a);
  ASSERT_EQ(same.r.size(), 10U);
  for (const double r : same.r) EXPECT_DOUBLE_EQ(r, 1.0);
  EXPECT_DOUBLE_EQ(same.stats.mean, 1.0);
  EXPECT_DOUBLE_EQ(same.stats.variance, 0.0);

  auto b = a;
  b.coeffs.col(3) *= -1.0;
  const auto flipped = compare_case2(a, b);
  for (std::size_t p = 0; p < flipped.r.size(); ++p) {
    EXPECT_DOUBLE_EQ(flipped.r[p], p == 3 ? -1.0 : 1.0);
  }
}

TEST(CompareCase2, ConstantFramesSkipped) {
  auto a = random_mfcc(30, 6, 9);
  a.coeffs.col(2).setConstant(1e-15);
  const auto out = compare_case2(a, a);
  EXPECT_EQ(out.skipped_frames, 1);
  EXPECT_EQ(out.r.size(), 5U);
  EXPECT_EQ(out.frame_index, (std::vector<Eigen::Index>{0, 1, 3, 4, 5}));

  const MfccMatrix flat{MatrixXd::Zero(30, 4)};
  EXPECT_THROW(compare_case2(flat, flat), NumericError);
}

class CorpusTest : public ::testing::Test {
 protected:
  testing::TempDir dir{"corpus"};

  std::filesystem::path write_signal(const std::string& name, std::uint32_t seed,
                                     double gain = 1.0) {
    auto s = testing::band_limited_signal(3500.0, 16000, 12000, -40.0, seed);
    s.samples *= gain;
    const auto path = dir / name;
    write_wav(s, path, WavEncoding::kFloat32);
    return path;
  }
};

TEST_F(CorpusTest, SingleFileAgainstItself) {
  cepstrum::PipelineConfig config;
  config.alpha = 1;
  const auto reports = corpus_reports({write_signal("a.wav", 1)}, config);
  EXPECT_DOUBLE_EQ(reports.case1.aggregate.mean, 1.0);
  EXPECT_DOUBLE_EQ(reports.case1.aggregate.variance, 0.0);
  EXPECT_DOUBLE_EQ(reports.case2.aggregate.mean, 1.0);
  EXPECT_DOUBLE_EQ(reports.case2.aggregate.variance, 0.0);
}

TEST_F(CorpusTest, CorruptFileIsSkipped) {
  const auto good1 = write_signal("a.wav", 1);
  const auto bad = dir / "b.wav";
  std::ofstream(bad) << "not audio";
  const auto good2 = write_signal("c.wav", 2);
  const auto report = corpus_report({good1, bad, good2}, {}, Case::kI, 2);
  ASSERT_EQ(report.per_file.size(), 2U);
  ASSERT_EQ(report.skipped.size(), 1U);
  EXPECT_EQ(report.skipped.front().id, bad.generic_string());
  EXPECT_EQ(report.per_file[0].id, good1.generic_string());
  EXPECT_EQ(report.per_file[1].id, good2.generic_string());

  const auto json = to_json(report);
  EXPECT_EQ(json.at("case"), "I");
  EXPECT_EQ(json.at("skipped").size(), 1U);
}

TEST_F(CorpusTest, AllFailedIsAnError) {
  const auto bad = dir / "b.wav";
  std::ofstream(bad) << "nope";
  EXPECT_THROW(corpus_reports({bad, dir / "missing.wav"}, {}), IoError);
  EXPECT_THROW(corpus_reports({}, {}), ConfigError);
}

TEST_F(CorpusTest, ParallelMatchesSerial) {
  std::vector<std::filesystem::path> files;
  for (std::uint32_t i = 0; i < 6; ++i) {
    files.push_back(write_signal("f" + std::to_string(i) + ".wav", 10 + i));
  }
  const auto serial = corpus_reports(files, {}, 1);
  const auto parallel = corpus_reports(files, {}, 4);
  EXPECT_EQ(to_json(serial.case1).dump(), to_json(parallel.case1).dump());
  EXPECT_EQ(to_json(serial.case2).dump(), to_json(parallel.case2).dump());
  EXPECT_EQ(serial.case2.pooled_frames, serial.case2.pooled_frames);
  EXPECT_GT(serial.case2.pooled_frames, 0);
}

TEST_F(CorpusTest, GainInvariance) {
  // A gain shifts every log band by ln(g). The decayed fill-in rows scale that
  // shift by fill_decay^k, so exact invariance needs fill_decay = 1.
  cepstrum::PipelineConfig config;
  config.fill_decay = 1.0;
  const auto loud = corpus_reports({write_signal("loud.wav", 3, 1.0)}, config);
  const auto quiet = corpus_reports({write_signal("quiet.wav", 3, 0.25)}, config);
  EXPECT_NEAR(loud.case1.per_file[0].r, quiet.case1.per_file[0].r, 1e-9);
  EXPECT_NEAR(loud.case2.per_file[0].r, quiet.case2.per_file[0].r, 1e-9);
}

}  // namespace
}  // namespace mfsub::eval
