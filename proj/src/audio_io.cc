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


#include "mfsub/audio_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace mfsub {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

[[noreturn]] void fail(WavError::Kind kind, const std::filesystem::path& path,
                       const std::string& msg) {
  throw WavError(kind, path.string() + ": " + msg);
}

struct WavFormat {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

double decode_sample(const std::uint8_t* p, const WavFormat& fmt) {
  if (fmt.tag == kFormatFloat) {
    float f;
    std::uint32_t bits = read_u32(p);
    std::memcpy(&f, &bits, sizeof f);
    return static_cast<double>(f);
  }
  switch (fmt.bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16:
      return static_cast<std::int16_t>(read_u16(p)) / 32768.0;
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    default:
      return static_cast<std::int32_t>(read_u32(p)) / 2147483648.0;
  }
}

}  // namespace

void validate(const AudioSignal& signal) {
  if (signal.sample_rate <= 0) {
    throw ConfigError("sample_rate must be positive, got " +
                      std::to_string(signal.sample_rate));
  }
  if (!signal.samples.allFinite()) {
    throw ConfigError("audio signal contains non-finite samples");
  }
}

AudioSignal read_wav(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    fail(WavError::Kind::kMissingFile, path, "no such file");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(WavError::Kind::kMissingFile, path, "cannot open file");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  if (bytes.empty()) {
    fail(WavError::Kind::kEmptyData, path, "empty data chunk (file is 0 bytes)");
  }
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    fail(WavError::Kind::kMalformedHeader, path, "not a RIFF/WAVE file");
  }

  WavFormat fmt;
  bool have_fmt = false;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || size > available) {
        fail(WavError::Kind::kMalformedHeader, path, "truncated fmt chunk");
      }
      const std::uint8_t* f = bytes.data() + body;
      fmt.tag = read_u16(f);
      fmt.channels = read_u16(f + 2);
      fmt.sample_rate = read_u32(f + 4);
      fmt.block_align = read_u16(f + 12);
      fmt.bits = read_u16(f + 14);
      if (fmt.tag == kFormatExtensible) {
        if (size < 40) {
          fail(WavError::Kind::kMalformedHeader, path,
               "truncated WAVE_FORMAT_EXTENSIBLE header");
        }
        // First two bytes of the subformat GUID carry the real format tag.
        fmt.tag = read_u16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) {
        fail(WavError::Kind::kMalformedHeader, path, "data chunk before fmt chunk");
      }
      data = bytes.data() + body;
      // Streaming writers leave the size at 0xFFFFFFFF; clamp to the file.
      data_size = std::min<std::size_t>(size, available);
      have_data = true;
      break;
    }
    pos = body + size + (size & 1U);
  }

  if (!have_fmt) fail(WavError::Kind::kMalformedHeader, path, "missing fmt chunk");
  if (fmt.tag != kFormatPcm && fmt.tag != kFormatFloat) {
    fail(WavError::Kind::kUnsupportedEncoding, path,
         "unsupported (compressed) format tag " + std::to_string(fmt.tag));
  }
  const bool pcm_ok = fmt.tag == kFormatPcm &&
                      (fmt.bits == 8 || fmt.bits == 16 || fmt.bits == 24 ||
                       fmt.bits == 32);
  const bool float_ok = fmt.tag == kFormatFloat && fmt.bits == 32;
  if (!pcm_ok && !float_ok) {
    fail(WavError::Kind::kUnsupportedEncoding, path,
         "unsupported sample width " + std::to_string(fmt.bits) + " bits");
  }
  if (fmt.channels == 0 || fmt.sample_rate == 0 ||
      fmt.sample_rate > static_cast<std::uint32_t>(INT32_MAX)) {
    fail(WavError::Kind::kMalformedHeader, path, "invalid channel count or sample rate");
  }
  const std::size_t sample_bytes = fmt.bits / 8;
  if (fmt.block_align != sample_bytes * fmt.channels) {
    fail(WavError::Kind::kMalformedHeader, path, "block_align inconsistent with format");
  }
  if (!have_data) fail(WavError::Kind::kMalformedHeader, path, "missing data chunk");

  const std::size_t frames = data_size / fmt.block_align;
  if (frames == 0) fail(WavError::Kind::kEmptyData, path, "empty data chunk");

  AudioSignal signal;
  signal.sample_rate = static_cast<int>(fmt.sample_rate);
  signal.samples.resize(static_cast<Eigen::Index>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    const double v = decode_sample(data + i * fmt.block_align, fmt);
    if (!std::isfinite(v)) {
      fail(WavError::Kind::kUnsupportedEncoding, path,
           "non-finite float sample at frame " + std::to_string(i));
    }
    signal.samples[static_cast<Eigen::Index>(i)] = std::clamp(v, -1.0, 1.0);
  }
  return signal;
}

void write_wav(const AudioSignal& signal, const std::filesystem::path& path,
               WavEncoding encoding) {
  validate(signal);
  const bool is_float = encoding == WavEncoding::kFloat32;
  const std::uint16_t bits = is_float ? 32 : 16;
  const std::uint16_t block_align = bits / 8;
  const auto data_bytes =
      static_cast<std::uint32_t>(signal.samples.size() * block_align);

  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  put_u32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, is_float ? kFormatFloat : kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate) * block_align);
  put_u16(out, block_align);
  put_u16(out, bits);
  out += "data";
  put_u32(out, data_bytes);
  for (const double s : signal.samples) {
    if (is_float) {
      const float f = static_cast<float>(s);
      std::uint32_t u;
      std::memcpy(&u, &f, sizeof u);
      put_u32(out, u);
    } else {
      const double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
      const auto code = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
      put_u16(out, static_cast<std::uint16_t>(code));
    }
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("write failed: " + path.string());
}

MatrixFormat matrix_format_for(const std::filesystem::path& path) {
  return path.extension() == ".json" ? MatrixFormat::kJson : MatrixFormat::kCsv;
}

void write_matrix(const MatrixXd& matrix, std::ostream& out,
                  MatrixFormat format) {
  if (matrix.size() == 0) throw ConfigError("refusing to write an empty matrix");
  if (format == MatrixFormat::kJson) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < matrix.cols(); ++c) row.push_back(matrix(r, c));
      rows.push_back(std::move(row));
    }
    out << rows.dump() << '\n';
    return;
  }
  const auto old_precision = out.precision(17);
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
      if (c > 0) out << ',';
      out << matrix(r, c);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

void write_matrix(const MatrixXd& matrix, const std::filesystem::path& path,
                  MatrixFormat format) {
  if (matrix.size() == 0) throw ConfigError("refusing to write an empty matrix");
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  write_matrix(matrix, file, format);
  if (!file) throw IoError("write failed: " + path.string());
}

MatrixXd parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw IoError("bad CSV cell '" + cell + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError("ragged CSV rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("empty CSV matrix");
  MatrixXd m(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

MatrixXd read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (format == MatrixFormat::kCsv) return parse_matrix_csv(buf.str());

  const auto rows = nlohmann::json::parse(buf.str());
  if (!rows.is_array() || rows.empty() || !rows.front().is_array()) {
    throw IoError(path.string() + ": expected a JSON array of rows");
  }
  MatrixXd m(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) throw IoError("ragged JSON rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c].get<double>();
    }
  }
  return m;
}

}  // namespace mfsub
