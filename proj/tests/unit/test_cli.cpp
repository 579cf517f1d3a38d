#include <doctest.h>

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "pixelneat/cli/cli.hpp"
#include "pixelneat/harness/evolution.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace pixelneat;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pixelneat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

// Small run config with outputs under dir.
fs::path write_config(const testing::TempDir& dir, const std::string& extra = "") {
  const fs::path p = dir / "run.cfg";
  std::ofstream(p) << "seed = 3\npopulation_size = 6\nmax_generations = 2\ntrial_tick_limit = 600\n"
                   << "asset_dir = " << testing::kAssetDir.string() << "\noutput_dir = out\n"
                   << extra;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == cli::kExitConfig);
  CHECK(invoke({"fly"}).code == cli::kExitConfig);
  CHECK(invoke({"train", "--seed", "abc"}).code == cli::kExitConfig);
  const Outcome missing = invoke({"train", "--config", "/nonexistent/x.cfg"});
  CHECK(missing.code == cli::kExitConfig);
  CHECK(missing.err.find("x.cfg") != std::string::npos);
  CHECK(invoke({"--help"}).code == cli::kExitOk);
}

TEST_CASE("train needs calibration, then runs reproducibly") {
  const testing::TempDir dir("cli_train");
  const fs::path cfg = write_config(dir);
  const Outcome uncal = invoke({"train", "--config", cfg.string()});
  CHECK(uncal.code == cli::kExitConfig);
  CHECK(uncal.err.find("calibrate-vision") != std::string::npos);

  const Outcome cal = invoke({"calibrate-vision", "--config", cfg.string()});
  REQUIRE(cal.code == cli::kExitOk);
  CHECK(fs::exists(dir / "out" / "calibration.txt"));

  REQUIRE(invoke({"train", "--config", cfg.string()}).code == cli::kExitOk);
  const std::string first = slurp(dir / "out" / "stats.csv");
  REQUIRE(invoke({"train", "--config", cfg.string()}).code == cli::kExitOk);
  CHECK(slurp(dir / "out" / "stats.csv") == first);
  CHECK(harness::load_stats(dir / "out" / "stats.csv").size() == 2);

  SUBCASE("export-stats prints the csv") {
    const Outcome e = invoke({"export-stats", "--config", cfg.string()});
    CHECK(e.code == cli::kExitOk);
    CHECK(e.out == first);
  }
  SUBCASE("replay reproduces the recorded best fitness") {
    const auto rows = harness::load_stats(dir / "out" / "stats.csv");
    const Outcome r = invoke({"replay", "--config", cfg.string(), "--resume"});
    REQUIRE(r.code == cli::kExitOk);
    std::smatch m;
    REQUIRE(std::regex_search(r.out, m, std::regex("fitness ([0-9.]+)")));
    // Stats rows print six decimals, as does the replay summary.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", rows.back().max_fitness);
    CHECK(m[1].str() == buf);
  }
  SUBCASE("dump-every") {
    const testing::TempDir out("cli_frames");
    CHECK(invoke({"replay", "--config", cfg.string(), "--resume", "--out", out.path().string(), "--dump-every",
                  "0"})
              .code == cli::kExitConfig);  // no calibration under the new output dir
    fs::copy_file(dir / "out" / "calibration.txt", out / "calibration.txt");
    const std::string ckpt = (dir / "out" / "checkpoints" / "gen_0002.ckpt").string();
    REQUIRE(invoke({"replay", "--config", cfg.string(), "--resume", ckpt, "--out", out.path().string(),
                    "--dump-every", "0"})
                .code == cli::kExitOk);
    CHECK_FALSE(fs::exists(out / "frames"));
    REQUIRE(invoke({"replay", "--config", cfg.string(), "--resume", ckpt, "--out", out.path().string(),
                    "--dump-every", "10", "--genome", "1"})
                .code == cli::kExitOk);
    int frames = 0;
    for (const auto& e : fs::directory_iterator(out / "frames")) {
      CHECK(std::regex_match(e.path().filename().string(), std::regex("trial1_tick[0-9]+\\.ppm")));
      ++frames;
    }
    CHECK(frames >= 1);
    CHECK(invoke({"replay", "--config", cfg.string(), "--resume", ckpt, "--genome", "99"}).code ==
          cli::kExitConfig);
  }
  SUBCASE("eval reports held-out win rates") {
    const Outcome e = invoke({"eval", "--config", cfg.string(), "--resume", "--trials", "2"});
    CHECK(e.code == cli::kExitOk);
    CHECK(e.out.find("win_rate") != std::string::npos);
  }
  SUBCASE("bare --resume on a fresh output dir finds nothing") {
    const testing::TempDir again("cli_resume");
    const fs::path cfg4 = write_config(again);
    fs::create_directories(again / "out");
    fs::copy_file(dir / "out" / "calibration.txt", again / "out" / "calibration.txt");
    const Outcome r = invoke({"train", "--config", cfg4.string(), "--resume"});
    CHECK(r.code == cli::kExitConfig);
    CHECK(r.err.find("no checkpoint") != std::string::npos);
  }
}

TEST_CASE("calibrate-vision names a missing template") {
  const testing::TempDir dir("cli_cal");
  fs::create_directories(dir / "art");
  fs::copy_file(testing::kAssetDir / "victory.ppm", dir / "art" / "victory.ppm");
  const fs::path cfg = dir / "c.cfg";
  std::ofstream(cfg) << "asset_dir = art\noutput_dir = out\n";
  const Outcome o = invoke({"calibrate-vision", "--config", cfg.string()});
  CHECK(o.code == cli::kExitConfig);
  CHECK(o.err.find("defeat.ppm") != std::string::npos);
}

TEST_CASE("calibrate-vision rejects a misplaced bar") {
  const testing::TempDir dir("cli_badbar");
  const fs::path cfg = write_config(dir, "player_bar = 80,100,300,12\n");
  const Outcome o = invoke({"calibrate-vision", "--config", cfg.string()});
  CHECK(o.code == cli::kExitConfig);
  CHECK(o.err.find("player") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out" / "calibration.txt"));
}

TEST_CASE("bench-xor") {
  const Outcome o = invoke({"bench-xor", "--seeds", "2"});
  CHECK(o.code == cli::kExitOk);
  CHECK(o.out.find("solved 2/2") != std::string::npos);
  const Outcome tiny = invoke({"bench-xor", "--seeds", "1", "--population", "2", "--generations", "3"});
  CHECK(tiny.code == cli::kExitOk);
  CHECK(invoke({"bench-xor", "--population", "0"}).code == cli::kExitConfig);
}
