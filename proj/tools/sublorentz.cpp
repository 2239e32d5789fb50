// Copyright 2026 The Sublorentz Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// sublorentz <solve|check-structure|check-timeform|reach|verify> --config <path> [--seed k] [--out dir]
//
// Exit status: 0 success, 1 failed check or unsolved problem, 2 usage or
// config error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sublorentz/config.hpp"
#include "sublorentz/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Sub-Lorentzian longest paths on Lie groups"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  for (const char* name : {"solve", "check-structure", "check-timeform", "reach", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "problem config (YAML)")->required();
    sub->add_option("--seed", seed, "overrides the config seed");
    sub->add_option("--out", out_dir, "output directory");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const auto cmd = sublorentz::parse_subcommand(app.get_subcommands().front()->get_name());

  try {
    auto cfg = sublorentz::load_config(config_path);
    if (seed) {
      cfg.seed = *seed;
      cfg.solver.seed = *seed;
    }
    const auto report = sublorentz::run_config(cfg, *cmd);
    sublorentz::emit_report(report, out_dir);
    std::cout << report.text;
    return report.exit_code;
  } catch (const sublorentz::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
