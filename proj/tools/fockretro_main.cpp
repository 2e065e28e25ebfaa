// Copyright 2026 The fockretro Authors
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

// fockretro run <file> | run --builtin <name>
//   [--observe d1=1,...] [--sweep param:lo:hi:steps[:log]] [--oracle]
//   [--format table|tsv] [--out path]
//
// Exit codes: 0 success, 1 usage or parse error, 2 impossible observation,
// 3 numerical validation failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fockretro/errors.hpp"
#include "fockretro/report.hpp"
#include "fockretro/scenario.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kImpossible = 2, kNumerical = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fockretro::SemanticError("file", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(const std::string& file, const std::string& builtin, const std::string& observe,
        const std::string& sweep_spec, bool oracle, const std::string& format,
        const std::string& out_path) {
  using namespace fockretro;
  if (file.empty() == builtin.empty()) {
    std::cerr << "error: give exactly one of <file> or --builtin\n";
    return kUsage;
  }
  Scenario scenario =
      builtin.empty() ? parse_scenario(read_file(file)) : builtin_scenario(builtin);
  if (!observe.empty()) scenario = with_observations(std::move(scenario), observe);

  const RunOptions options{oracle};
  std::optional<SweepSpec> spec = scenario.sweep;
  if (!sweep_spec.empty()) spec = parse_sweep_spec(sweep_spec);

  std::string text;
  if (spec) {
    const auto points = sweep(scenario, *spec, options);
    text = format == "tsv" ? format_tsv(points) : format_table(points);
  } else {
    const Report report = run_scenario(scenario, options);
    text = format == "tsv" ? format_tsv(report) : format_table(report);
  }

  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw SemanticError("out", "cannot write '" + out_path + "'");
    out << text;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-number linear optics: forward evolution, detection histories and "
               "retrodiction"};
  app.require_subcommand(1);

  std::string file;
  std::string builtin;
  std::string observe;
  std::string sweep_spec;
  bool oracle = false;
  std::string format = "table";
  std::string out_path;

  auto* run_cmd = app.add_subcommand("run", "Run a scenario file or a builtin scenario");
  run_cmd->add_option("file", file, "Scenario file");
  run_cmd->add_option("--builtin", builtin, "Builtin scenario")
      ->check(CLI::IsMember(fockretro::builtin_names()));
  run_cmd->add_option("--observe", observe, "Detection record, e.g. d1=1,d4=1");
  run_cmd->add_option("--sweep", sweep_spec, "Parameter sweep <param>:<lo>:<hi>:<steps>[:log]");
  run_cmd->add_flag("--oracle", oracle, "Cross-check against the dense permanent oracle");
  run_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "tsv"}));
  run_cmd->add_option("--out", out_path, "Write the report to this path");

  auto* list_cmd = app.add_subcommand("builtins", "List builtin scenarios");
  std::string show;
  auto* show_cmd = app.add_subcommand("show", "Print the source text of a builtin scenario");
  show_cmd->add_option("name", show, "Builtin scenario")
      ->required()
      ->check(CLI::IsMember(fockretro::builtin_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*list_cmd) {
      for (const auto& name : fockretro::builtin_names()) std::cout << name << '\n';
      return kOk;
    }
    if (*show_cmd) {
      std::cout << fockretro::builtin_scenario_text(show);
      return kOk;
    }
    return run(file, builtin, observe, sweep_spec, oracle, format, out_path);
  } catch (const fockretro::ImpossibleObservation& e) {
    std::cerr << "impossible observation: " << e.what() << '\n';
    return kImpossible;
  } catch (const fockretro::InvalidElement& e) {
    std::cerr << "invalid element: " << e.what() << '\n';
    return kNumerical;
  } catch (const fockretro::ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return kNumerical;
  } catch (const fockretro::DegenerateState& e) {
    std::cerr << "degenerate state: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
