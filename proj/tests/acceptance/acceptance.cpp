// Runs the eight acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "pixelneat/arena/environment.hpp"
#include "pixelneat/arena/render.hpp"
#include "pixelneat/arena/scripted_policy.hpp"
#include "pixelneat/arena/sim.hpp"
#include "pixelneat/harness/evolution.hpp"
#include "pixelneat/harness/fitness.hpp"
#include "pixelneat/harness/policy.hpp"
#include "pixelneat/harness/trial.hpp"
#include "pixelneat/neat/xor.hpp"
#include "pixelneat/vision/vision.hpp"

namespace fs = std::filesystem;
using namespace pixelneat;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

vision::VisionSystem calibrated_vision() {
  auto v = vision::VisionSystem::from_assets({}, PIXELNEAT_ASSET_DIR);
  v.set_calibration(v.measure(arena::render(arena::reset(0))));
  return v;
}

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("pixelneat_accept_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 1 -------------------------------------------------------------------------

Verdict fitness_exactness() {
  bool ok = harness::fitness(100, 0, false) == 200.0 && harness::fitness(0, 100, true) == 0.0 &&
            harness::fitness(50, 60, false) == 90.0;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng), b = u(rng);
    if (harness::fitness(p, b, false) != p + (100.0 - b)) ++mismatches;
  }
  ok = ok && mismatches == 0;
  return {ok, "named cases ok, " + std::to_string(mismatches) + "/1000 random mismatches"};
}

// 2 -------------------------------------------------------------------------

Verdict vision_oracles() {
  const auto vis = calibrated_vision();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    arena::SimState s = arena::reset(static_cast<std::uint64_t>(i));
    s.player.body.health = u(rng);
    s.boss.body.health = u(rng);
    const Framebuffer f = arena::render(s);
    worst = std::max(worst, std::abs(vis.player_health(f) - s.player.body.health));
    worst = std::max(worst, std::abs(vis.boss_health(f) - s.boss.body.health));
  }

  // Ongoing renders from random play at scattered ticks; terminal renders
  // from wherever those fights end plus synthetic end states.
  int ongoing = 0, false_pos = 0, terminal = 0, false_neg = 0;
  for (std::uint64_t seed = 1; ongoing < 1000; ++seed) {
    arena::SimState s = arena::reset(seed);
    std::mt19937_64 pick(seed);
    while (s.phase == arena::Phase::ongoing && s.tick < 5400) {
      if (s.tick % 6 == 0) arena::submit_action(s, arena::action_at(static_cast<int>(pick() % arena::kActionCount)));
      arena::step(s);
      if (s.phase == arena::Phase::ongoing && pick() % 40 == 0 && ongoing < 1000) {
        ++ongoing;
        if (vis.detect_terminal(arena::render(s)) != vision::TerminalBanner::none) ++false_pos;
      }
    }
    if (s.phase != arena::Phase::ongoing) {
      ++terminal;
      const auto want = s.phase == arena::Phase::boss_dead ? vision::TerminalBanner::victory
                                                           : vision::TerminalBanner::defeat;
      if (vis.detect_terminal(arena::render(s)) != want) ++false_neg;
    }
  }
  for (int i = 0; i < 200; ++i) {
    arena::SimState s = arena::reset(static_cast<std::uint64_t>(i));
    const bool won = i % 2 == 0;
    s.player.body.health = won ? u(rng) : 0.0;
    s.boss.body.health = won ? 0.0 : u(rng);
    s.phase = won ? arena::Phase::boss_dead : arena::Phase::player_dead;
    ++terminal;
    const auto want = won ? vision::TerminalBanner::victory : vision::TerminalBanner::defeat;
    if (vis.detect_terminal(arena::render(s)) != want) ++false_neg;
  }
  const bool ok = worst <= 2.0 && false_pos == 0 && false_neg == 0;
  return {ok, "max health error " + fmt("%.3f", worst) + " pts, false positives " + std::to_string(false_pos) + "/" +
                  std::to_string(ongoing) + ", false negatives " + std::to_string(false_neg) + "/" +
                  std::to_string(terminal)};
}

// 3 -------------------------------------------------------------------------

std::vector<double> naive_downscale(const Framebuffer& f) {
  std::vector<double> out(3600);
  for (int c = 0; c < 3; ++c)
    for (int gy = 0; gy < 30; ++gy)
      for (int gx = 0; gx < 40; ++gx) {
        long sum = 0;
        for (int y = 0; y < 20; ++y)
          for (int x = 0; x < 20; ++x) sum += f.row(gy * 20 + y)[(gx * 20 + x) * 3 + c];
        out[static_cast<std::size_t>(c * 1200 + gy * 40 + gx)] = static_cast<double>(sum) / (400.0 * 255.0);
      }
  return out;
}

// Default red window in integer form: red is the top channel, saturation at
// least one half, value at least 0.3, hue within 10 degrees of 0.
bool naive_red(Rgb p) {
  const int mx = std::max({p.r, p.g, p.b}), mn = std::min({p.r, p.g, p.b}), d = mx - mn;
  return 10 * mx >= 765 && d > 0 && 2 * d >= mx && mx == p.r && 6 * std::abs(p.g - p.b) <= d;
}

Verdict pipeline_oracles() {
  int bad_down = 0, bad_mask = 0, bad_dilate = 0;
  const PixelRect whole{0, 0, kFrameWidth, kFrameHeight};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 rng(seed + 100);
    Framebuffer f;
    for (auto& b : f.bytes()) b = static_cast<std::uint8_t>(rng() & 0xff);
    // Seeded bar-red patches so masks are not nearly empty.
    for (int k = 0; k < 30; ++k) {
      const int x0 = static_cast<int>(rng() % 780), y0 = static_cast<int>(rng() % 590);
      for (int y = y0; y < y0 + 10; ++y)
        for (int x = x0; x < x0 + 20; ++x) f.set_pixel(x, y, {200, 20, 20});
    }
    if (vision::downscale(f) != naive_downscale(f)) ++bad_down;

    const vision::Mask m = vision::apply_mask(f, whole, {});
    vision::Mask ref(kFrameWidth, kFrameHeight);
    for (int y = 0; y < kFrameHeight; ++y)
      for (int x = 0; x < kFrameWidth; ++x) ref.set(x, y, naive_red(f.pixel(x, y)) ? 1 : 0);
    if (m != ref) ++bad_mask;

    vision::Mask dref(kFrameWidth, kFrameHeight);
    for (int y = 0; y < kFrameHeight; ++y)
      for (int x = 0; x < kFrameWidth; ++x) {
        std::uint8_t v = 0;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int xx = x + dx, yy = y + dy;
            if (xx >= 0 && yy >= 0 && xx < kFrameWidth && yy < kFrameHeight) v |= ref.at(xx, yy);
          }
        dref.set(x, y, v);
      }
    if (vision::dilate(ref) != dref) ++bad_dilate;
  }
  const bool ok = bad_down == 0 && bad_mask == 0 && bad_dilate == 0;
  return {ok, "mismatching frames: downscale " + std::to_string(bad_down) + ", mask " + std::to_string(bad_mask) +
                  ", dilate " + std::to_string(bad_dilate) + " (of 50)"};
}

// 4 -------------------------------------------------------------------------

Verdict xor_sanity() {
  neat::XorParams params;
  params.reproduction.population_size = 150;
  params.max_generations = 300;
  int solved = 0, worst_gen = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = neat::run_xor(seed, params);
    if (r.solved && r.best_fitness >= 3.9) {
      ++solved;
      worst_gen = std::max(worst_gen, r.generations);
    }
  }
  return {solved >= 8, std::to_string(solved) + "/10 seeds solved, slowest in " + std::to_string(worst_gen) +
                           " generations"};
}

// 5 -------------------------------------------------------------------------

Verdict scripted_floor() {
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed)
    wins += arena::run_scripted(seed).final_state.phase == arena::Phase::boss_dead ? 1 : 0;
  return {wins >= 40, std::to_string(wins) + "/50 wins (" + fmt("%.0f", 2.0 * wins) + "%)"};
}

// 6 and 7 -------------------------------------------------------------------

harness::EvolutionConfig run_config(const fs::path& out) {
  harness::EvolutionConfig c;
  c.seed = 1;
  c.reproduction.population_size = 50;
  c.max_generations = 30;
  c.asset_dir = PIXELNEAT_ASSET_DIR;
  c.output_dir = out;
  return c;
}

struct Progress {
  Verdict verdict;
  fs::path out;
};

Progress evolution_progress(const vision::VisionSystem& vis) {
  const fs::path out = scratch("run_a");
  const auto res = harness::evolve(run_config(out), vis);
  const auto& rows = res.stats;
  if (rows.size() != 30) return {{false, "expected 30 stats rows, got " + std::to_string(rows.size())}, out};
  const double gain = rows.back().mean_fitness - rows.front().mean_fitness;

  const auto& champ = res.population[harness::champion_index(res.population)];
  int champ_wins = 0, random_wins = 0;
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t seed = harness::holdout_seed(1, i);
    champ_wins += harness::run_genome_trial(champ, vis, seed).won ? 1 : 0;
    harness::RandomPolicy random(seed);
    arena::ArenaEnvironment env;
    random_wins += harness::run_trial(random, env, vis, seed).won ? 1 : 0;
  }
  const double champ_rate = champ_wins / 20.0, random_rate = random_wins / 20.0;
  const bool ok = gain >= 20.0 && champ_rate >= 0.10 && random_rate <= 0.02;
  return {{ok, "mean fitness " + fmt("%.2f", rows.front().mean_fitness) + " -> " + fmt("%.2f", rows.back().mean_fitness) +
                   " (+" + fmt("%.2f", gain) + "), champion held-out wins " + std::to_string(champ_wins) +
                   "/20, random baseline " + std::to_string(random_wins) + "/20"},
          out};
}

Verdict determinism(const vision::VisionSystem& vis, const fs::path& first) {
  const fs::path second = scratch("run_b");
  harness::evolve(run_config(second), vis);
  const bool same_full = slurp(first / "stats.csv") == slurp(second / "stats.csv");

  // Resume in a fresh directory holding only the generation-15 checkpoint.
  const fs::path resumed = scratch("run_c");
  fs::create_directories(resumed / "checkpoints");
  const fs::path ck = harness::checkpoint_file(resumed / "checkpoints", 15);
  fs::copy_file(harness::checkpoint_file(first / "checkpoints", 15), ck);
  const auto tail = harness::evolve(run_config(resumed), vis, ck);
  const auto full = harness::load_stats(first / "stats.csv");
  bool same_tail = tail.stats.size() == 15 && full.size() == 30;
  std::string first_row = "-";
  for (std::size_t i = 0; same_tail && i < 15; ++i) {
    if (harness::format_stats_row(tail.stats[i]) != harness::format_stats_row(full[15 + i])) {
      same_tail = false;
      first_row = std::to_string(tail.stats[i].generation);
    }
  }
  fs::remove_all(second);
  fs::remove_all(resumed);
  return {same_full && same_tail, std::string("second run stats ") + (same_full ? "byte-identical" : "DIFFER") +
                                      ", resume from 15: rows 16-30 " +
                                      (same_tail ? "identical" : "differ at generation " + first_row)};
}

// 8 -------------------------------------------------------------------------

Verdict anti_passivity(const vision::VisionSystem& vis) {
  const auto g = harness::constant_action_genome(arena::ActionCommand::move_north);
  int nonzero = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) nonzero += harness::run_genome_trial(g, vis, seed).fitness == 0.0 ? 0 : 1;
  return {nonzero == 0, std::to_string(nonzero) + "/5 seeds with nonzero fitness"};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, double limit_s, const std::function<Verdict()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < limit_s;
    const bool pass = v.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("criterion %d %-22s %s  %s; %.1f s (limit %.0f s%s)\n", id, name, pass ? "PASS" : "FAIL",
                v.detail.c_str(), secs, limit_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  };

  report(1, "fitness-exactness", 1, fitness_exactness);
  report(2, "vision-oracles", 120, vision_oracles);
  report(3, "pipeline-oracles", 60, pipeline_oracles);
  report(4, "neat-xor", 300, xor_sanity);
  report(5, "scripted-floor", 120, scripted_floor);

  const auto vis = calibrated_vision();
  fs::path first;
  report(6, "evolution-progress", 1800, [&] {
    auto p = evolution_progress(vis);
    first = p.out;
    return p.verdict;
  });
  report(7, "determinism", 3600, [&] {
    if (first.empty() || !fs::exists(first / "stats.csv")) return Verdict{false, "criterion 6 run missing"};
    return determinism(vis, first);
  });
  report(8, "anti-passivity", 60, [&] { return anti_passivity(vis); });
  if (!first.empty()) fs::remove_all(first);

  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
