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


#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "mfsub/audio_io.h"
#include "mfsub/cli.h"
#include "mfsub/error.h"
#include "mfsub/resample.h"

namespace mfsub::cli {
namespace {

namespace fs = std::filesystem;

void write_json(const nlohmann::json& j, const fs::path& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << j.dump(2) << '\n';
  if (!file) throw IoError("write failed: " + path.string());
}

fs::path with_suffix(const fs::path& prefix, const std::string& suffix) {
  return fs::path(prefix.string() + suffix);
}

nlohmann::json bank_sidecar(const melbank::MelFilterBank& bank) {
  return {
      {"n_filters", bank.num_filters()},
      {"n_bins", bank.num_bins()},
      {"sample_rate", bank.sample_rate},
      {"bin_hz", bank.bin_hz},
      {"active_count", bank.active_count},
      {"centers_hz", std::vector<double>(bank.centers_hz.begin(), bank.centers_hz.end())},
      {"edges_hz", std::vector<double>(bank.edges_hz.begin(), bank.edges_hz.end())},
      {"warnings", bank.warnings},
  };
}

const fs::path& single_input(const Command& command) {
  if (command.inputs.size() != 1) {
    throw ConfigError(command.name + " takes exactly one input file");
  }
  return command.inputs.front();
}

nlohmann::json selected_reports(const eval::CorpusReports& reports, CaseSelection cases) {
  nlohmann::json j = nlohmann::json::object();
  if (cases != CaseSelection::kII) j["case_I"] = eval::to_json(reports.case1);
  if (cases != CaseSelection::kI) j["case_II"] = eval::to_json(reports.case2);
  return j;
}

void summarize(const eval::CorrelationReport& report, std::ostream& out) {
  out << "case " << eval::case_name(report.which) << ": mean=" << report.aggregate.mean
      << " variance=" << report.aggregate.variance << " n=" << report.per_file.size()
      << " skipped=" << report.skipped.size() << '\n';
}

int run_extract(const Command& command, std::ostream& out) {
  const auto signal = read_wav(single_input(command));
  const auto trace = [&] {
    if (command.bank == Bank::kModified) {
      return cepstrum::analyze_subsampled(signal, command.config);
    }
    auto config = command.config;
    config.alpha = 1;
    return cepstrum::analyze(signal, config);
  }();
  write_matrix(trace.mfcc.coeffs, command.out, matrix_format_for(command.out));
  out << "wrote " << trace.mfcc.num_coeffs() << "x" << trace.mfcc.num_frames()
      << " MFCC matrix to " << command.out.string() << '\n';
  return kExitOk;
}

int run_compare(const Command& command, std::ostream& out) {
  const auto reports = eval::corpus_reports({single_input(command)}, command.config, 1);
  const auto j = selected_reports(reports, command.cases);
  if (command.out.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_json(j, command.out);
  }
  return kExitOk;
}

int run_report(const Command& command, std::ostream& out) {
  const auto reports =
      eval::corpus_reports(command.inputs, command.config, command.jobs);
  write_json(selected_reports(reports, command.cases), command.out);
  if (command.cases != CaseSelection::kII) summarize(reports.case1, out);
  if (command.cases != CaseSelection::kI) summarize(reports.case2, out);
  return kExitOk;
}

int run_fbdump(const Command& command, std::ostream& out) {
  std::optional<AudioSignal> signal;
  if (!command.inputs.empty()) signal = read_wav(single_input(command));
  const int rate = signal ? signal->sample_rate : command.sample_rate;
  cepstrum::validate(command.config, rate);

  const auto spec = cepstrum::bank_spec(command.config, rate);
  const auto standard = melbank::build_filterbank(spec);
  const auto modified = melbank::build_modified_filterbank(spec, command.config.alpha);
  write_matrix(standard.weights, with_suffix(command.out, "_standard.csv"), MatrixFormat::kCsv);
  write_json(bank_sidecar(standard), with_suffix(command.out, "_standard.json"));
  write_matrix(modified.weights, with_suffix(command.out, "_modified.csv"), MatrixFormat::kCsv);
  write_json(bank_sidecar(modified), with_suffix(command.out, "_modified.json"));

  if (signal) {
    const auto original = cepstrum::analyze(*signal, command.config);
    const auto subsampled = cepstrum::analyze_subsampled(
        resample::decimate(*signal, command.config.alpha, command.config.prefilter),
        command.config);
    write_matrix(original.log_energies.values,
                 with_suffix(command.out, "_energies_original.csv"), MatrixFormat::kCsv);
    write_matrix(subsampled.log_energies.values,
                 with_suffix(command.out, "_energies_modified.csv"), MatrixFormat::kCsv);
  }
  out << "filter banks: " << standard.num_filters() << " filters, "
      << modified.active_count << " active at alpha=" << command.config.alpha << '\n';
  return kExitOk;
}

int exit_code_for(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::kConfig: return kExitConfig;
    case ErrorClass::kIo: return kExitIo;
    case ErrorClass::kNumeric: return kExitNumeric;
  }
  return kExitInternal;
}

}  // namespace

int execute(const Command& command, std::ostream& out) {
  if (command.name == "extract") return run_extract(command, out);
  if (command.name == "compare") return run_compare(command, out);
  if (command.name == "report") return run_report(command, out);
  if (command.name == "fbdump") return run_fbdump(command, out);
  throw ConfigError("unknown command '" + command.name + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"MFCCs of full-rate and subsampled speech, and their agreement"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string config_path;
  std::optional<int> alpha;
  std::string window;
  std::string hop;
  bool antialias = false;
  std::string bank = "standard";
  std::string cases = "both";
  std::string out_path;
  std::vector<std::string> inputs;
  int jobs = 1;
  int sample_rate = 16000;
  std::string manifest;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value pipeline config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--alpha", alpha, "integer subsampling factor");
    sub->add_option("--window", window, "analysis window")
        ->check(CLI::IsMember({"standard", "paper-literal"}));
    sub->add_option("--hop", hop, "frame hop")->check(CLI::IsMember({"half", "paper-literal"}));
    sub->add_flag("--antialias", antialias, "low-pass before decimating");
  };

  auto* extract = app.add_subcommand("extract", "MFCC matrix of one WAV file");
  extract->add_option("input", inputs, "input WAV")->required()->expected(1);
  extract->add_option("--out,-o", out_path, "output .csv or .json")->required();
  extract->add_option("--bank", bank, "standard for full-rate audio, modified for "
                                      "audio already decimated by --alpha")
      ->check(CLI::IsMember({"standard", "modified"}));
  add_common(extract);

  auto* compare = app.add_subcommand("compare", "Pearson agreement for one WAV file");
  compare->add_option("input", inputs, "full-rate input WAV")->required()->expected(1);
  compare->add_option("--case", cases, "1, 2 or both")->check(CLI::IsMember({"1", "2", "both"}));
  compare->add_option("--out,-o", out_path, "write the JSON here instead of stdout");
  add_common(compare);

  auto* report = app.add_subcommand("report", "corpus-level Pearson report");
  report->add_option("inputs", inputs, "WAV files, directories or .txt/.lst lists")
      ->required();
  report->add_option("--case", cases, "1, 2 or both")->check(CLI::IsMember({"1", "2", "both"}));
  report->add_option("--out,-o", out_path, "report JSON path")->required();
  report->add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
  add_common(report);

  auto* fbdump = app.add_subcommand("fbdump", "dump standard and modified filter banks");
  fbdump->add_option("--out,-o", out_path, "output path prefix")->required();
  fbdump->add_option("--input", inputs, "optional WAV for per-band log energies")
      ->expected(0, 1);
  fbdump->add_option("--sample-rate", sample_rate, "full rate when no --input is given")
      ->check(CLI::PositiveNumber);
  add_common(fbdump);

  auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("manifest", manifest, "manifest JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (replay->parsed()) {
      std::ifstream in(manifest);
      const auto recorded = nlohmann::json::parse(in);
      const auto command = command_from_json(recorded.at("command"));
      for (const auto& entry : recorded.at("inputs")) {
        const fs::path path = entry.at("path").get<std::string>();
        if (sha256_file(path) != entry.at("sha256").get<std::string>()) {
          throw IoError("input changed since the manifest was written: " + path.string());
        }
      }
      return execute(command, out);
    }

    Command command;
    command.name = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) apply_config_file(config_path, command.config);
    if (alpha) apply_config_setting("alpha", std::to_string(*alpha), command.config);
    if (!window.empty()) apply_config_setting("window", window, command.config);
    if (!hop.empty()) apply_config_setting("hop", hop, command.config);
    if (antialias) command.config.prefilter = resample::PreFilter::kLowPass;
    command.bank = bank == "modified" ? Bank::kModified : Bank::kStandard;
    command.cases = cases == "1"   ? CaseSelection::kI
                    : cases == "2" ? CaseSelection::kII
                                   : CaseSelection::kBoth;
    command.out = out_path;
    command.jobs = jobs;
    command.sample_rate = sample_rate;
    if (command.name == "extract" && command.bank == Bank::kStandard && alpha &&
        *alpha != 1) {
      throw ConfigError("alpha: --bank standard analyses full-rate audio and needs "
                        "--alpha 1; use --bank modified for decimated audio");
    }
    std::vector<fs::path> specs(inputs.begin(), inputs.end());
    command.inputs = command.name == "report" ? expand_inputs(specs) : specs;
    if (command.name == "report" && command.inputs.empty()) {
      throw IoError("no WAV files found in the given inputs");
    }

    const int code = execute(command, out);
    if (!command.out.empty()) {
      write_json(make_manifest(command, std::vector<std::string>(argv, argv + argc)),
                 manifest_path_for(command.out));
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.error_class());
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed manifest: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace mfsub::cli
