/*
   Copyright 2026 The rsf authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <CLI11.hpp>

#include "rsf/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "rsf: root subgroup coordinates, triangular factorization and block "
      "Toeplitz determinants for SL(2,C) loops"};

  rsf::cli::RunConfig cfg;
  app.add_option("command", cfg.command,
                 "one of: build-g1, build-g2, build-full, recover-zeta, "
                 "recover-full, factor, det-table, verify")
      ->required();
  app.add_option("--input", cfg.input_path, "input JSON file");
  app.add_option("--output", cfg.output_path,
                 "output file (default: stdout)");
  app.add_option("--N", cfg.N, "section / series order")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-exceptional", cfg.tol_exceptional,
                 "exceptional-set tolerance")
      ->check(CLI::Range(1e-14, 1e-2));
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--suite", cfg.suite,
                 "verify suite: roundtrip, oracle, determinants, fixtures "
                 "(alias: paper-fixtures)");

  CLI11_PARSE(app, argc, argv);
  return rsf::cli::run(cfg);
}
