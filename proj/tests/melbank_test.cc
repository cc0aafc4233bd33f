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


#include "mfsub/melbank.h"

#include <random>

#include <gtest/gtest.h>

namespace mfsub::melbank {
namespace {

MelBankSpec default_spec() { return MelBankSpec{30, 130.0, 6800.0, 16000, 512}; }

// F = 1 bank whose single centre sits at 1000 Hz on a 125 Hz grid.
MelBankSpec one_filter_at_1khz() {
  return MelBankSpec{1, 0.0, mel_to_hz(2.0 * hz_to_mel(1000.0)), 8000, 64};
}

TEST(MelScale, ForwardValues) {
  EXPECT_EQ(hz_to_mel(0.0), 0.0);
  EXPECT_NEAR(hz_to_mel(700.0), 781.17, 0.01);
  EXPECT_NEAR(hz_to_mel(1000.0), 999.99, 0.01);
  EXPECT_THROW(hz_to_mel(-1.0), ConfigError);
  EXPECT_NEAR(hz_to_mel(700.0f), 781.17f, 0.01f);
}

TEST(MelScale, InverseValues) {
  EXPECT_EQ(mel_to_hz(0.0), 0.0);
  for (const double f : {130.0, 4000.0, 6800.0}) {
    EXPECT_NEAR(mel_to_hz(hz_to_mel(f)) / f, 1.0, 1e-9);
  }
  EXPECT_NEAR(mel_to_hz(781.17), 700.0, 0.01);
  EXPECT_THROW(mel_to_hz(-0.5), ConfigError);
}

TEST(CenterFrequencies, DefaultConfig) {
  const auto spec = default_spec();
  const VectorXd edges = center_frequencies(spec);
  ASSERT_EQ(edges.size(), 32);
  EXPECT_NEAR(edges[0], 130.0, 1e-6);
  EXPECT_NEAR(edges[31], 6800.0, 1e-6);
  const double step = hz_to_mel(edges[1]) - hz_to_mel(edges[0]);
  EXPECT_NEAR(step, 80.02, 0.01);
  for (Eigen::Index m = 1; m < edges.size(); ++m) {
    EXPECT_GT(edges[m], edges[m - 1]);
    EXPECT_NEAR(hz_to_mel(edges[m]) - hz_to_mel(edges[m - 1]), step, 1e-9);
  }
}

TEST(CenterFrequencies, SingleFilter) {
  const VectorXd edges = center_frequencies(MelBankSpec{1, 130.0, 800.0, 16000, 512});
  ASSERT_EQ(edges.size(), 3);
  EXPECT_EQ(edges[0], 130.0);
  EXPECT_EQ(edges[2], 800.0);
  EXPECT_GT(edges[1], 130.0);
  EXPECT_LT(edges[1], 800.0);

  const double delta = 500.0;
  const VectorXd sym = center_frequencies(MelBankSpec{1, 0.0, mel_to_hz(2 * delta), 16000, 512});
  EXPECT_NEAR(sym[1], mel_to_hz(delta), 1e-9);
}

TEST(CenterFrequencies, InvalidSpecs) {
  EXPECT_THROW(center_frequencies(MelBankSpec{0, 130.0, 6800.0, 16000, 512}), ConfigError);
  EXPECT_THROW(center_frequencies(MelBankSpec{30, 7000.0, 6800.0, 16000, 512}), ConfigError);
  EXPECT_THROW(center_frequencies(MelBankSpec{30, 130.0, 9000.0, 16000, 512}), ConfigError);
}

TEST(BuildFilterbank, PeakAndMidpoint) {
  const auto bank = build_filterbank(one_filter_at_1khz());
  ASSERT_EQ(bank.num_bins(), 33);
  EXPECT_DOUBLE_EQ(bank.bin_hz, 125.0);
  EXPECT_NEAR(bank.weights(0, 8), 1.0, 1e-12);  // 1000 Hz
  EXPECT_NEAR(bank.weights(0, 4), 0.5, 1e-12);  // 500 Hz, midway up the rising slope
  EXPECT_EQ(bank.active_count, 1);
}

TEST(BuildFilterbank, CoarseGridWarns) {
  // 30 filters squeezed under 400 Hz on a 500 Hz grid cannot all hit a bin.
  const auto bank = build_filterbank(MelBankSpec{30, 0.0, 400.0, 8000, 16});
  EXPECT_FALSE(bank.warnings.empty());
  EXPECT_TRUE(build_filterbank(default_spec()).warnings.empty());
}

// Geometry checks shared by the standard and modified banks.
void expect_geometry(const MelFilterBank& bank) {
  ASSERT_EQ(bank.centers_hz.size(), bank.num_filters());
  EXPECT_GE(bank.weights.minCoeff(), 0.0);
  EXPECT_LE(bank.weights.maxCoeff(), 1.0);
  for (int m = 0; m < bank.num_filters(); ++m) {
    if (m > 0) EXPECT_GT(bank.centers_hz[m], bank.centers_hz[m - 1]);
    const double lo = bank.edges_hz[m];
    const double hi = bank.edges_hz[m + 2];
    bool falling = false;
    for (Eigen::Index k = 0; k < bank.num_bins(); ++k) {
      const double f = static_cast<double>(k) * bank.bin_hz;
      const double w = bank.weights(m, k);
      if (f < lo || f >= hi) EXPECT_EQ(w, 0.0) << "row " << m << " bin " << k;
      if (k > 0) {
        const double prev = bank.weights(m, k - 1);
        if (w < prev) falling = true;
        if (falling) EXPECT_LE(w, prev) << "row " << m << " not unimodal at bin " << k;
      }
    }
  }
  // Neighbouring triangles share the segment between their centres.
  for (int m = 0; m + 1 < bank.active_count; ++m) {
    for (Eigen::Index k = 0; k < bank.num_bins(); ++k) {
      const double f = static_cast<double>(k) * bank.bin_hz;
      if (f > bank.centers_hz[m] && f < bank.centers_hz[m + 1] &&
          f <= bank.sample_rate / 2.0) {
        EXPECT_NEAR(bank.weights(m, k) + bank.weights(m + 1, k), 1.0, 1e-12);
      }
    }
  }
  for (int m = bank.active_count; m < bank.num_filters(); ++m) {
    EXPECT_EQ(bank.weights.row(m).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(BuildFilterbank, GeometryProperty) {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> filters(1, 40);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int rates[] = {8000, 16000, 22050, 44100};
  for (int trial = 0; trial < 40; ++trial) {
    MelBankSpec spec;
    spec.n_filters = filters(rng);
    spec.sample_rate = rates[trial % 4];
    spec.frame_len = 2 * (64 + static_cast<Eigen::Index>(rng() % 512));
    spec.f_max = spec.sample_rate / 2.0 * (0.5 + 0.5 * unit(rng));
    spec.f_min = spec.f_max * 0.2 * unit(rng);
    expect_geometry(build_filterbank(spec));
    for (const int alpha : {2, 4}) {
      if (spec.frame_len % alpha == 0 && spec.sample_rate % alpha == 0) {
        expect_geometry(build_modified_filterbank(spec, alpha));
      }
    }
  }
}

TEST(ModifiedFilterbank, AlphaOneIsStandard) {
  const auto spec = default_spec();
  const auto standard = build_filterbank(spec);
  const auto modified = build_modified_filterbank(spec, 1);
  EXPECT_EQ(modified.active_count, 30);
  EXPECT_EQ(modified.sample_rate, standard.sample_rate);
  EXPECT_TRUE(modified.weights == standard.weights);
  EXPECT_TRUE(modified.centers_hz == standard.centers_hz);
}

TEST(ModifiedFilterbank, DefaultConfigKeeps24Filters) {
  const auto spec = default_spec();
  const auto standard = build_filterbank(spec);
  const auto modified = build_modified_filterbank(spec, 2);
  EXPECT_EQ(modified.active_count, 24);
  EXPECT_EQ(modified.num_filters(), 30);
  EXPECT_EQ(modified.num_bins(), 129);
  EXPECT_EQ(modified.sample_rate, 8000);
  EXPECT_DOUBLE_EQ(modified.bin_hz, standard.bin_hz);
  EXPECT_LT(modified.centers_hz[23], 4000.0);
  EXPECT_GE(modified.centers_hz[24], 4000.0);
  EXPECT_TRUE(modified.centers_hz == standard.centers_hz);
  const MatrixXd shared = standard.weights.topLeftCorner(24, 129);
  EXPECT_LE((modified.weights.topRows(24) - shared).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(modified.weights.bottomRows(6).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ModifiedFilterbank, Nesting) {
  const auto spec = default_spec();
  int previous = build_modified_filterbank(spec, 1).active_count;
  for (const int alpha : {2, 4, 8, 16}) {
    const int active = build_modified_filterbank(spec, alpha).active_count;
    EXPECT_LE(active, previous);
    previous = active;
  }
}

TEST(ModifiedFilterbank, AlphaMustDivideFrame) {
  EXPECT_THROW(build_modified_filterbank(default_spec(), 3), ConfigError);
  EXPECT_THROW(build_modified_filterbank(default_spec(), 0), ConfigError);
}

}  // namespace
}  // namespace mfsub::melbank
