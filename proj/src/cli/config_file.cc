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


#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mfsub/cli.h"
#include "mfsub/error.h"

namespace mfsub::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0') {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (value.empty() || *end != '\0') {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return static_cast<int>(v);
}

std::string window_name(dsp::WindowKind kind) {
  switch (kind) {
    case dsp::WindowKind::kStandard: return "standard";
    case dsp::WindowKind::kPaperLiteral: return "paper-literal";
    case dsp::WindowKind::kRectangular: return "rectangular";
  }
  return "standard";
}

}  // namespace

void apply_config_setting(const std::string& key, const std::string& value,
                          cepstrum::PipelineConfig& config) {
  if (key == "n_filters") {
    config.n_filters = parse_int(key, value);
  } else if (key == "f_min") {
    config.f_min = parse_double(key, value);
  } else if (key == "f_max") {
    config.f_max = parse_double(key, value);
  } else if (key == "frame_duration_ms" || key == "frame_duration") {
    config.frame_duration_ms = parse_double(key, value);
  } else if (key == "hop_fraction") {
    config.hop_fraction = parse_double(key, value);
    config.hop_kind = cepstrum::HopKind::kFraction;
  } else if (key == "hop") {
    if (value == "half") {
      config.hop_kind = cepstrum::HopKind::kFraction;
      config.hop_fraction = 0.5;
    } else if (value == "fraction") {
      config.hop_kind = cepstrum::HopKind::kFraction;
    } else if (value == "paper-literal") {
      config.hop_kind = cepstrum::HopKind::kPaperLiteral;
    } else {
      throw ConfigError("hop: expected half, fraction or paper-literal, got '" + value + "'");
    }
  } else if (key == "window") {
    if (value == "standard") {
      config.window = dsp::WindowKind::kStandard;
    } else if (value == "paper-literal") {
      config.window = dsp::WindowKind::kPaperLiteral;
    } else if (value == "rectangular") {
      config.window = dsp::WindowKind::kRectangular;
    } else {
      throw ConfigError("window: expected standard, paper-literal or rectangular, got '" +
                        value + "'");
    }
  } else if (key == "log_floor") {
    config.log_floor = parse_double(key, value);
  } else if (key == "alpha") {
    config.alpha = parse_int(key, value);
  } else if (key == "fill_decay") {
    config.fill_decay = parse_double(key, value);
  } else if (key == "prefilter") {
    if (value == "none") {
      config.prefilter = resample::PreFilter::kNone;
    } else if (value == "lowpass") {
      config.prefilter = resample::PreFilter::kLowPass;
    } else {
      throw ConfigError("prefilter: expected none or lowpass, got '" + value + "'");
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void apply_config_text(const std::string& text, cepstrum::PipelineConfig& config) {
  std::istringstream lines(text);
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) +
                        ": expected key = value");
    }
    apply_config_setting(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), config);
  }
}

void apply_config_file(const std::filesystem::path& path,
                       cepstrum::PipelineConfig& config) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    apply_config_text(buf.str(), config);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

nlohmann::json config_to_json(const cepstrum::PipelineConfig& config) {
  return {
      {"n_filters", config.n_filters},
      {"f_min", config.f_min},
      {"f_max", config.f_max},
      {"frame_duration_ms", config.frame_duration_ms},
      {"hop", config.hop_kind == cepstrum::HopKind::kPaperLiteral ? "paper-literal"
                                                                   : "fraction"},
      {"hop_fraction", config.hop_fraction},
      {"window", window_name(config.window)},
      {"log_floor", config.log_floor},
      {"alpha", config.alpha},
      {"fill_decay", config.fill_decay},
      {"prefilter", config.prefilter == resample::PreFilter::kLowPass ? "lowpass" : "none"},
  };
}

cepstrum::PipelineConfig config_from_json(const nlohmann::json& j) {
  cepstrum::PipelineConfig config;
  config.n_filters = j.at("n_filters").get<int>();
  config.f_min = j.at("f_min").get<double>();
  config.f_max = j.at("f_max").get<double>();
  config.frame_duration_ms = j.at("frame_duration_ms").get<double>();
  config.hop_fraction = j.at("hop_fraction").get<double>();
  apply_config_setting("hop", j.at("hop").get<std::string>(), config);
  apply_config_setting("window", j.at("window").get<std::string>(), config);
  config.log_floor = j.at("log_floor").get<double>();
  config.alpha = j.at("alpha").get<int>();
  config.fill_decay = j.at("fill_decay").get<double>();
  apply_config_setting("prefilter", j.at("prefilter").get<std::string>(), config);
  return config;
}

}  // namespace mfsub::cli
