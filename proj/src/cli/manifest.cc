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


#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "mfsub/cli.h"
#include "mfsub/error.h"

namespace mfsub::cli {
namespace {

std::string bank_name(Bank bank) {
  return bank == Bank::kModified ? "modified" : "standard";
}

std::string cases_name(CaseSelection cases) {
  switch (cases) {
    case CaseSelection::kI: return "1";
    case CaseSelection::kII: return "2";
    case CaseSelection::kBoth: return "both";
  }
  return "both";
}

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw IoError("SHA-256 initialisation failed");
  }
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

nlohmann::json command_to_json(const Command& command) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& p : command.inputs) inputs.push_back(p.generic_string());
  return {
      {"name", command.name},
      {"config", config_to_json(command.config)},
      {"inputs", inputs},
      {"out", command.out.generic_string()},
      {"bank", bank_name(command.bank)},
      {"case", cases_name(command.cases)},
      {"jobs", command.jobs},
      {"sample_rate", command.sample_rate},
  };
}

Command command_from_json(const nlohmann::json& j) {
  Command command;
  command.name = j.at("name").get<std::string>();
  command.config = config_from_json(j.at("config"));
  for (const auto& p : j.at("inputs")) command.inputs.emplace_back(p.get<std::string>());
  command.out = j.at("out").get<std::string>();
  command.bank = j.at("bank").get<std::string>() == "modified" ? Bank::kModified
                                                               : Bank::kStandard;
  const auto cases = j.at("case").get<std::string>();
  command.cases = cases == "1"   ? CaseSelection::kI
                  : cases == "2" ? CaseSelection::kII
                                 : CaseSelection::kBoth;
  command.jobs = j.at("jobs").get<int>();
  command.sample_rate = j.at("sample_rate").get<int>();
  return command;
}

nlohmann::json make_manifest(const Command& command,
                             const std::vector<std::string>& argv) {
  nlohmann::json digests = nlohmann::json::array();
  for (const auto& p : command.inputs) {
    digests.push_back({{"path", p.generic_string()}, {"sha256", sha256_file(p)}});
  }
  return {
      {"tool", "mfsub"},
      {"version", kToolVersion},
      {"argv", argv},
      {"command", command_to_json(command)},
      {"inputs", digests},
  };
}

std::filesystem::path manifest_path_for(const std::filesystem::path& out) {
  return std::filesystem::path(out.string() + ".manifest.json");
}

std::vector<std::filesystem::path> expand_inputs(
    const std::vector<std::filesystem::path>& specs) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& spec : specs) {
    if (fs::is_directory(spec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(spec)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (ext == ".wav") found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (spec.extension() == ".txt" || spec.extension() == ".lst") {
      std::ifstream in(spec);
      if (!in) throw IoError("cannot open file list " + spec.string());
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const fs::path entry(line);
        files.push_back(entry.is_absolute() ? entry : spec.parent_path() / entry);
      }
    } else {
      files.push_back(spec);
    }
  }
  return files;
}

}  // namespace mfsub::cli
