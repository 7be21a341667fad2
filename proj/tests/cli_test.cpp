// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fixtures.hpp"
#include "synthvid/json_io.hpp"
#include "synthvid/scene_config.hpp"

using namespace synthvid;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "synthvid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  explicit Scratch(const std::string& name) : root_(fs::temp_directory_path() / ("synthvid_cli_" + name)) {
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  ~Scratch() { fs::remove_all(root_); }
  std::string operator/(const std::string& rel) const { return (root_ / rel).string(); }

 private:
  fs::path root_;
};

}  // namespace

TEST_CASE("usage errors exit 2, help exits 0") {
  const Result none = run_cli({});
  CHECK(none.code == cli::kExitUsage);
  CHECK(none.err.find("Usage") != std::string::npos);
  CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run_cli({"render", "--bogus"}).code == cli::kExitUsage);
  CHECK(run_cli({"build-manifest", "--syn", ".", "--real", ".", "--ratio", "1.5", "--steps", "3", "--out", "x"}).code ==
        cli::kExitUsage);
  CHECK(run_cli({"evaluate"}).code == cli::kExitUsage);
  const Result help = run_cli({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("sample-simdrop") != std::string::npos);
}

TEST_CASE("operation errors exit 1 with a message") {
  Scratch dir("operation");
  json_io::write_file(dir / "bad.json", "{\"schema\": 1");
  const Result r = run_cli({"render", "--config", dir / "bad.json", "--out", dir / "frames"});
  CHECK(r.code == cli::kExitFailure);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("sample-configs is byte-identical under a fixed seed") {
  Scratch dir("sample");
  REQUIRE(run_cli({"sample-configs", "--seed", "4", "--count", "3", "--out", dir / "a"}).code == 0);
  REQUIRE(run_cli({"sample-configs", "--seed", "4", "--count", "3", "--out", dir / "b"}).code == 0);
  for (const char* name : {"config_00000.json", "config_00001.json", "config_00002.json"}) {
    CHECK(json_io::read_file(dir / (std::string("a/") + name)) == json_io::read_file(dir / (std::string("b/") + name)));
  }
  CHECK_NOTHROW(load_config(dir / "a/config_00001.json"));
}

TEST_CASE("trajectory, render and caption on one config") {
  Scratch dir("stages");
  save_config(testing::spin_config(), dir / "spin.json");
  CHECK(run_cli({"trajectory", "--config", dir / "spin.json", "--out", dir / "traj.json"}).code == 0);
  CHECK(json_io::parse(json_io::read_file(dir / "traj.json"))["frames"].size() == 73);
  CHECK(run_cli({"render", "--config", dir / "spin.json", "--out", dir / "frames"}).code == 0);
  CHECK(fs::exists(dir / "frames/frame_00072.ppm"));
  const Result cap = run_cli({"caption", "--config", dir / "spin.json", "--tags", "tags+np"});
  REQUIRE(cap.code == 0);
  const auto j = json_io::parse(cap.out);
  CHECK(j["negative_text"] == "animated rendered");
  CHECK(run_cli({"caption", "--config", dir / "spin.json", "--tags", "all"}).code == cli::kExitUsage);
}

TEST_CASE("evaluate reports zero error on noiseless tracks") {
  Scratch dir("evaluate");
  save_config(testing::spin_config(), dir / "spin.json");
  const Result r = run_cli({"evaluate", "--config", dir / "spin.json", "--noise", "0", "--tracks-out",
                            dir / "tracks.json", "--report", dir / "report.json"});
  REQUIRE(r.code == 0);
  const auto report = json_io::parse(json_io::read_file(dir / "report.json"));
  CHECK(report["eps_proj"].get<double>() < 1e-6);
  CHECK(report["N"].get<int>() > 0);
  const Result again = run_cli({"evaluate", "--tracks", dir / "tracks.json"});
  REQUIRE(again.code == 0);
  CHECK(json_io::parse(again.out) == report);
  CHECK(run_cli({"evaluate", "--tracks", dir / "tracks.json", "--config", dir / "spin.json"}).code ==
        cli::kExitUsage);

  json_io::json grid = json_io::json::array();
  grid.push_back(std::vector<double>(17, 0.5));
  json_io::write_file(dir / "pose.json", grid.dump());
  const Result pose = run_cli({"evaluate", "--pose", dir / "pose.json"});
  REQUIRE(pose.code == 0);
  CHECK(json_io::parse(pose.out)["eps_conf"] == 0.5);
}

TEST_CASE("build-manifest mixes caption folders deterministically") {
  Scratch dir("manifest");
  save_config(testing::spin_config(), dir / "spin.json");
  for (const char* clip : {"syn/a", "syn/b"}) {
    REQUIRE(run_cli({"caption", "--config", dir / "spin.json", "--out", dir / (std::string(clip) + "/caption.json")})
                .code == 0);
  }
  fs::create_directories(dir / "real/r0");
  json_io::write_file(dir / "real/r0/caption.json",
                      R"({"domain": "Real", "text": "A dog runs.", "tags": [], "negative_text": ""})");
  const std::vector<std::string> args{"build-manifest", "--syn", dir / "syn", "--real", dir / "real", "--ratio", "0.5",
                                      "--steps", "200", "--seed", "3", "--out"};
  auto a = args, b = args;
  a.push_back(dir / "m1.ndjson");
  b.push_back(dir / "m2.ndjson");
  REQUIRE(run_cli(a).code == 0);
  REQUIRE(run_cli(b).code == 0);
  CHECK(json_io::read_file(dir / "m1.ndjson") == json_io::read_file(dir / "m2.ndjson"));
}

TEST_CASE("train-toy and sample-simdrop report the alpha sweep side by side") {
  Scratch dir("toy");
  REQUIRE(run_cli({"train-toy", "--dataset", "mixed", "--steps", "30", "--size", "500", "--seed", "1", "--out",
                   dir / "gen.ckpt"})
              .code == 0);
  REQUIRE(run_cli({"train-toy", "--dataset", "reference", "--steps", "30", "--size", "500", "--seed", "2", "--init",
                   dir / "gen.ckpt", "--dropout", "0", "--out", dir / "ref.ckpt"})
              .code == 0);
  const Result r = run_cli({"sample-simdrop", "--gen", dir / "gen.ckpt", "--ref", dir / "ref.ckpt", "--alpha",
                            "0.1,0.2", "--n", "50", "--steps", "10", "--report", dir / "report.json"});
  REQUIRE(r.code == 0);
  const auto report = json_io::parse(json_io::read_file(dir / "report.json"));
  REQUIRE(report["runs"].size() == 2);
  CHECK(report["runs"][0]["alpha"] == 0.1);
  CHECK(report["runs"][1]["alpha"] == 0.2);
  CHECK(report["beta"] == 0.3);
  CHECK(run_cli({"sample-simdrop", "--gen", dir / "gen.ckpt", "--ref", dir / "missing.ckpt", "--report",
                 dir / "r.json"})
            .code == cli::kExitUsage);
}
