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


#ifndef MFSUB_CLI_H_
#define MFSUB_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfsub/cepstrum.h"
#include "mfsub/eval.h"

namespace mfsub::cli {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumeric = 4;

// Flat "key = value" text; '#' starts a comment. Keys are the PipelineConfig
// field names plus `hop` (half | fraction | paper-literal), `window`
// (standard | paper-literal | rectangular) and `prefilter` (none | lowpass).
void apply_config_text(const std::string& text, cepstrum::PipelineConfig& config);
void apply_config_file(const std::filesystem::path& path,
                       cepstrum::PipelineConfig& config);
void apply_config_setting(const std::string& key, const std::string& value,
                          cepstrum::PipelineConfig& config);

nlohmann::json config_to_json(const cepstrum::PipelineConfig& config);
cepstrum::PipelineConfig config_from_json(const nlohmann::json& j);

enum class Bank { kStandard, kModified };
enum class CaseSelection { kI, kII, kBoth };

// Fully resolved invocation. A manifest stores one of these, so replaying it
// does not depend on config files or defaults that may have changed since.
struct Command {
  std::string name;  // extract | compare | report | fbdump
  cepstrum::PipelineConfig config;
  std::vector<std::filesystem::path> inputs;  // already expanded
  std::filesystem::path out;
  Bank bank = Bank::kStandard;
  CaseSelection cases = CaseSelection::kBoth;
  int jobs = 1;
  int sample_rate = 16000;  // fbdump without an input file
};

nlohmann::json command_to_json(const Command& command);
Command command_from_json(const nlohmann::json& j);

std::string sha256_file(const std::filesystem::path& path);

// Manifest: tool version, argv, resolved command and SHA-256 of each input.
nlohmann::json make_manifest(const Command& command,
                             const std::vector<std::string>& argv);
std::filesystem::path manifest_path_for(const std::filesystem::path& out);

// Expands directories (recursively, *.wav, sorted) and list files (.txt or
// .lst, one path per line relative to the list) into an ordered file list.
std::vector<std::filesystem::path> expand_inputs(
    const std::vector<std::filesystem::path>& specs);

// Runs a resolved command; returns the exit code. Library errors propagate.
int execute(const Command& command, std::ostream& out);

// Parses argv, runs, maps exceptions to exit codes and messages on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mfsub::cli

#endif  // MFSUB_CLI_H_
