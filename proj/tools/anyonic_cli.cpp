// Copyright 2026 The Anyonic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// anyonic <subcommand> [--config FILE] [--set key=value ...] [key=value ...]

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "anyonic/cli.hpp"

namespace {

struct SubcommandArgs {
  std::string config_file;
  std::vector<std::string> assignments;
  std::string seed;
  std::string output;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace anyonic::cli;
  CLI::App app{"Anyonic interferometry simulator"};
  app.require_subcommand(1);

  const char* descriptions[][2] = {
      {"braid", "Run a braiding program and print alpha and the fringe"},
      {"memory", "Swap and teleported-rotation checks on a surface-code memory"},
      {"diffuse", "Monte Carlo fringe contrast under stochastic fields"},
      {"budget", "Photon-loss, QND and memory error budgets"},
      {"zd", "Z_d charge-flux braiding phases"},
      {"oracle", "Cross-engine and closed-form consistency suite"},
  };
  std::vector<SubcommandArgs> args(std::size(descriptions));
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(descriptions); ++i) {
    CLI::App* sub = app.add_subcommand(descriptions[i][0], descriptions[i][1]);
    sub->add_option("-c,--config", args[i].config_file, "key=value config file");
    sub->add_option("--set", args[i].assignments, "override key=value (repeatable)");
    sub->add_option("assignments", args[i].assignments, "key=value overrides");
    if (RunConfig{descriptions[i][0], schema_for(descriptions[i][0])}.has("seed")) {
      sub->add_option("--seed", args[i].seed, "64-bit seed (default: $" + std::string(kSeedEnv) + " or 0)");
    }
    sub->add_option("-o,--output", args[i].output, "output path ('-' for stdout)");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  std::size_t which = 0;
  while (!subs[which]->parsed()) ++which;
  const SubcommandArgs& a = args[which];
  RunConfig cfg;
  try {
    std::vector<std::pair<std::string, std::string>> file, overrides;
    if (!a.config_file.empty()) file = read_config_file(a.config_file);
    for (const auto& s : a.assignments) overrides.push_back(split_assignment(s));
    if (!a.seed.empty()) overrides.emplace_back("seed", a.seed);
    if (!a.output.empty()) overrides.emplace_back("output", a.output);
    cfg = resolve_config(descriptions[which][0], file, overrides);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }

  const std::string& path = cfg.get("output");
  if (path == "-") return run_guarded(cfg, std::cout, std::cerr);
  std::ofstream out(path);
  if (!out) {
    std::cerr << "input error: cannot open output file '" << path << "'\n";
    return kInputError;
  }
  return run_guarded(cfg, out, std::cerr);
}
