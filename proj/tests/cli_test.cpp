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

#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "rsf/cli.hpp"

using namespace rsf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("rsf_cli_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name) const {
    return (dir / name).string();
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("build-g2 writes the expected loop", "[cli]") {
  TempDir tmp;
  write_file(tmp.file("in.json"), R"({"kind":"zeta","pairs":[[0,0,0.3,0]]})");
  cli::RunConfig cfg;
  cfg.command = "build-g2";
  cfg.input_path = tmp.file("in.json");
  cfg.output_path = tmp.file("out.json");
  REQUIRE(cli::run(cfg) == 0);

  const MatrixLoop g =
      matrix_loop_from_json(json::parse(read_file(tmp.file("out.json"))));
  MatrixLoop expect = MatrixLoop::identity();
  expect.c = LaurentPoly::monomial(1, 0.3);
  REQUIRE(max_coeff_dist(g, expect) < 1e-15);
}

TEST_CASE("recover-zeta reports the exceptional set as exit code 2", "[cli]") {
  TempDir tmp;
  write_file(tmp.file("loop.json"),
             to_json(rsf_test::no_root_subgroup_loop()).dump());
  cli::RunConfig cfg;
  cfg.command = "recover-zeta";
  cfg.input_path = tmp.file("loop.json");
  cfg.output_path = tmp.file("err.json");
  cfg.N = 3;
  REQUIRE(cli::run(cfg) == 2);

  const json err = json::parse(read_file(tmp.file("err.json")));
  REQUIRE(err.at("error") == "ExceptionalSet");
  REQUIRE(err.at("step") == 1);
}

TEST_CASE("round trip through build-full and recover-full files", "[cli]") {
  TempDir tmp;
  FullLoopParams p;
  p.etas = ParamSeq{SeqKind::eta, {{Complex(0.2, 0.1), Complex(-0.1, 0.3)}}};
  p.zetas = ParamSeq{SeqKind::zeta, {{Complex(0.1, -0.2), Complex(0.3, 0.1)}}};
  p.chi.set(1, Complex(0.2, -0.1));
  p.chi.set(-1, Complex(0.05, 0.15));
  p.chi.set(0, Complex(-0.1, 0.2));
  write_file(tmp.file("params.json"), to_json(p).dump());

  cli::RunConfig build;
  build.command = "build-full";
  build.input_path = tmp.file("params.json");
  build.output_path = tmp.file("loop.json");
  REQUIRE(cli::run(build) == 0);

  cli::RunConfig rec;
  rec.command = "recover-full";
  rec.input_path = tmp.file("loop.json");
  rec.output_path = tmp.file("rec.json");
  rec.N = 24;
  REQUIRE(cli::run(rec) == 0);

  const json out = json::parse(read_file(tmp.file("rec.json")));
  const FullLoopParams q = full_params_from_json(out.at("params"));
  REQUIRE(rsf_test::pair_dist(p.etas, q.etas) < 1e-8);
  REQUIRE(rsf_test::pair_dist(p.zetas, q.zetas) < 1e-8);
  REQUIRE((p.chi - q.chi).norm_inf() < 1e-8);
  REQUIRE(out.at("consistency_residual").get<double>() < 1e-8);
}

TEST_CASE("factor command emits the triangular factors", "[cli]") {
  TempDir tmp;
  write_file(tmp.file("loop.json"),
             to_json(rsf_test::no_root_subgroup_loop()).dump());
  cli::RunConfig cfg;
  cfg.command = "factor";
  cfg.input_path = tmp.file("loop.json");
  cfg.output_path = tmp.file("tf.json");
  cfg.N = 8;
  REQUIRE(cli::run(cfg) == 0);
  const json tf = json::parse(read_file(tmp.file("tf.json")));
  REQUIRE(tf.contains("l"));
  REQUIRE(tf.contains("u"));
  REQUIRE(std::abs(tf.at("a0").get<double>() - 1.0) < 1e-10);
}

TEST_CASE("det-table emits a converging CSV", "[cli]") {
  TempDir tmp;
  write_file(tmp.file("in.json"), R"({"kind":"zeta","pairs":[[0.3,0,0.4,0]]})");
  cli::RunConfig cfg;
  cfg.command = "det-table";
  cfg.input_path = tmp.file("in.json");
  cfg.output_path = tmp.file("table.csv");
  cfg.N = 32;
  REQUIRE(cli::run(cfg) == 0);

  const std::string csv = read_file(tmp.file("table.csv"));
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  REQUIRE(line == "N,re_det,im_det,abs_err");
  std::vector<std::string> rows;
  while (std::getline(lines, line))
    if (!line.empty()) rows.push_back(line);
  REQUIRE(rows.size() == 4);  // N = 4, 8, 16, 32
  const std::string last = rows.back();
  const double err = std::stod(last.substr(last.rfind(',') + 1));
  REQUIRE(err < 1e-7);
  REQUIRE(last.substr(0, 3) == "32,");
}

TEST_CASE("verify suites pass and are deterministic", "[cli]") {
  TempDir tmp;
  cli::RunConfig cfg;
  cfg.command = "verify";
  cfg.suite = "fixtures";
  cfg.output_path = tmp.file("a.json");
  REQUIRE(cli::run(cfg) == 0);
  const json rep = json::parse(read_file(tmp.file("a.json")));
  REQUIRE(rep.at("passed").get<bool>());

  cfg.suite = "oracle";
  cfg.output_path = tmp.file("b1.json");
  REQUIRE(cli::run(cfg) == 0);
  cfg.output_path = tmp.file("b2.json");
  REQUIRE(cli::run(cfg) == 0);
  REQUIRE(json::parse(read_file(tmp.file("b1.json"))).at("passed").get<bool>());
  REQUIRE(read_file(tmp.file("b1.json")) == read_file(tmp.file("b2.json")));
}

TEST_CASE("malformed input is an exit-1 schema failure", "[cli]") {
  TempDir tmp;
  write_file(tmp.file("bad.json"), "{ not json");
  cli::RunConfig cfg;
  cfg.command = "build-g2";
  cfg.input_path = tmp.file("bad.json");
  cfg.output_path = tmp.file("err.json");
  REQUIRE(cli::run(cfg) == 1);
  REQUIRE(json::parse(read_file(tmp.file("err.json"))).at("error") ==
          "InvalidInput");

  cfg.input_path = tmp.file("missing.json");
  REQUIRE(cli::run(cfg) == 1);
}
