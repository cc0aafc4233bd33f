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

#include <random>

#include <gtest/gtest.h>

#include "mfsub/dsp.h"
#include "test_util.h"

namespace mfsub::resample {
namespace {

AudioSignal counting(int n) {
  AudioSignal s;
  s.sample_rate = 576000;
  s.samples = VectorXd::LinSpaced(n, 0.0, n - 1.0);
  return s;
}

TEST(Decimate, IndexArithmetic) {
  EXPECT_TRUE(decimate(counting(6), 1).samples == counting(6).samples);
  const auto by2 = decimate(counting(6), 2);
  EXPECT_EQ(by2.samples, (VectorXd(3) << 0, 2, 4).finished());
  EXPECT_EQ(by2.sample_rate, 288000);
  const auto by3 = decimate(counting(7), 3);
  EXPECT_EQ(by3.samples, (VectorXd(3) << 0, 3, 6).finished());
  EXPECT_EQ(by3.sample_rate, 192000);
}

TEST(Decimate, RejectsBadFactor) {
  EXPECT_THROW(decimate(counting(6), 0), ConfigError);
  EXPECT_THROW(decimate(counting(6), -2), ConfigError);
  AudioSignal odd_rate = counting(6);
  odd_rate.sample_rate = 11025;
  EXPECT_THROW(decimate(odd_rate, 2), ConfigError);
}

TEST(Decimate, CompositionProperty) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int a = 1 + static_cast<int>(rng() % 4);
    const int b = 1 + static_cast<int>(rng() % 4);
    AudioSignal x = testing::random_signal(1 + rng() % 300, 576000, trial);
    const auto twice = decimate(decimate(x, a), b);
    const auto once = decimate(x, a * b);
    EXPECT_EQ(twice.sample_rate, once.sample_rate);
    EXPECT_TRUE(twice.samples == once.samples) << "a=" << a << " b=" << b;
  }
}

TEST(Decimate, LowPassOptionSuppressesAliases) {
  // 7 kHz at 16 kHz folds to 1 kHz after plain decimation by 2.
  const auto tone = testing::tone_mixture({{7000.0, 0.5}}, 16000, 4096, -200.0, 1);
  const auto plain = decimate(tone, 2);
  const auto filtered = decimate(tone, 2, PreFilter::kLowPass);
  const auto middle = [](const AudioSignal& s) { return s.samples.segment(256, 1024).norm(); };
  EXPECT_GT(middle(plain), 10.0);
  EXPECT_LT(middle(filtered), 0.01 * middle(plain));
  EXPECT_NEAR(lowpass_taps(0.25, 32).sum(), 1.0, 1e-12);
}

TEST(AliasedSpectrum, Degenerate) {
  const auto x = testing::random_signal(24, 8000, 2).samples;
  const VectorXcd spectrum = dsp::fft(x);
  EXPECT_TRUE(aliased_spectrum(spectrum, 1) == spectrum);

  const VectorXcd impulse = VectorXcd::Ones(24);
  for (const int alpha : {2, 3, 4, 6}) {
    const auto folded = aliased_spectrum(impulse, alpha);
    ASSERT_EQ(folded.size(), 24 / alpha);
    EXPECT_LT((folded - VectorXcd::Ones(24 / alpha)).cwiseAbs().maxCoeff(), 1e-15);
  }
  EXPECT_THROW(aliased_spectrum(impulse, 5), ConfigError);
}

TEST(AliasedSpectrum, FoldingIdentityProperty) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int alpha = 2 + trial % 3;
    const Eigen::Index n = alpha * (4 + static_cast<Eigen::Index>(rng() % 60));
    const auto x = testing::random_signal(n, 48000, 100 + trial);
    const VectorXcd folded = aliased_spectrum(testing::direct_dft(x.samples), alpha);
    const VectorXcd want = testing::direct_dft(decimate(x, alpha).samples);
    EXPECT_LT(testing::max_relative_error(folded, want), 1e-9) << "n=" << n;
  }
}

TEST(AliasedSpectrum, EnergyBound) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int alpha = 2 + trial % 3;
    const Eigen::Index n = 12 * (2 + static_cast<Eigen::Index>(rng() % 20));
    const VectorXcd x = dsp::fft(testing::random_signal(n, 48000, trial).samples);
    const VectorXcd y = aliased_spectrum(x, alpha);
    const Eigen::Index s = n / alpha;
    for (Eigen::Index k = 0; k < s; ++k) {
      double bound = 0.0;
      for (int l = 0; l < alpha; ++l) bound = std::max(bound, std::abs(x[k + l * s]));
      EXPECT_LE(std::abs(y[k]), bound * (1 + 1e-12));
    }
  }
}

}  // namespace
}  // namespace mfsub::resample
