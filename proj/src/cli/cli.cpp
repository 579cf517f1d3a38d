#include "pixelneat/cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pixelneat/arena/render.hpp"
#include "pixelneat/arena/sim.hpp"
#include "pixelneat/errors.hpp"
#include "pixelneat/harness/config.hpp"
#include "pixelneat/harness/evolution.hpp"
#include "pixelneat/harness/trial.hpp"
#include "pixelneat/neat/checkpoint.hpp"
#include "pixelneat/neat/xor.hpp"
#include "pixelneat/ppm.hpp"

namespace pixelneat::cli {

namespace fs = std::filesystem;

namespace {

// Usage problems detected after parsing; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> resume;
  bool resume_latest = false;
  std::optional<long> genome;
  std::optional<std::string> out;
  int dump_every = 0;
  int trials = 20;
  int seeds = 10;
  int population = 150;
  int generations = 300;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

harness::EvolutionConfig load(const Options& o) {
  if (o.config.empty()) throw UsageError("--config is required");
  harness::EvolutionConfig c = harness::load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.output_dir = *o.out;
  c.validate();
  return c;
}

vision::VisionSystem load_vision(const harness::EvolutionConfig& c) {
  const vision::Calibration cal = harness::load_calibration(c.calibration_path());
  vision::VisionSystem vs = vision::VisionSystem::from_assets(c.vision, c.asset_dir);
  vs.set_calibration(cal);
  return vs;
}

// --resume names a checkpoint file or a directory holding some; a bare
// --resume means the configured checkpoint directory.
fs::path resolve_checkpoint(const Options& o, const harness::EvolutionConfig& c) {
  fs::path where = o.resume && !o.resume->empty() ? fs::path(*o.resume) : c.checkpoint_path();
  std::error_code ec;
  if (fs::is_regular_file(where, ec)) return where;
  if (auto latest = harness::latest_checkpoint(where)) return *latest;
  throw UsageError("no checkpoint found at " + where.string());
}

std::size_t pick_genome(const Options& o, const neat::Checkpoint& ck) {
  if (ck.population.empty()) throw FormatError("checkpoint holds no genomes");
  if (!o.genome) return harness::champion_index(ck.population);
  if (*o.genome < 0 || static_cast<std::size_t>(*o.genome) >= ck.population.size())
    throw UsageError("genome index " + std::to_string(*o.genome) + " out of range (checkpoint has " +
                     std::to_string(ck.population.size()) + ")");
  return static_cast<std::size_t>(*o.genome);
}

void print_histogram(std::ostream& out, const harness::TrialResult& r) {
  out << "actions:";
  for (int i = 0; i < arena::kActionCount; ++i)
    out << ' ' << arena::to_string(arena::action_at(i)) << '=' << r.histogram[static_cast<std::size_t>(i)];
  out << '\n';
}

void print_trial(std::ostream& out, const harness::TrialResult& r) {
  out << "outcome " << harness::to_string(r.end) << " fitness " << fmt("%.6f", r.fitness) << " P "
      << fmt("%.2f", r.player_pct) << " B " << fmt("%.2f", r.boss_pct) << " ticks " << r.ticks << " submissions "
      << r.submissions << " accepted " << r.accepted << (r.damageless_death ? " damageless" : "") << '\n';
}

int cmd_train(const Options& o, std::ostream& out) {
  const harness::EvolutionConfig c = load(o);
  std::optional<fs::path> resume;
  if (o.resume || o.resume_latest) resume = resolve_checkpoint(o, c);
  const vision::VisionSystem vs = load_vision(c);
  if (resume) out << "resuming from " << resume->string() << '\n';
  harness::evolve(c, vs, resume, [&](const harness::GenerationStats& s) {
    out << "generation " << s.generation << " mean " << fmt("%.2f", s.mean_fitness) << " max "
        << fmt("%.2f", s.max_fitness) << " win_rate " << fmt("%.3f", s.win_rate) << " species " << s.species
        << " genome_size " << fmt("%.1f", s.mean_genome_size) << std::endl;
  });
  out << "stats: " << c.stats_path().string() << "\ncheckpoints: " << c.checkpoint_path().string() << '\n';
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const harness::EvolutionConfig c = load(o);
  if (o.trials < 1) throw UsageError("--trials must be positive");
  const fs::path path = resolve_checkpoint(o, c);
  const vision::VisionSystem vs = load_vision(c);
  const neat::Checkpoint ck = neat::load_checkpoint(path);
  const std::size_t index = pick_genome(o, ck);
  const harness::TrialSettings settings{c.trial_tick_limit, c.poll_interval};
  int wins = 0;
  int random_wins = 0;
  double total = 0.0;
  out << "genome " << index << " from " << path.string() << " on " << o.trials << " held-out seeds\n";
  for (int i = 0; i < o.trials; ++i) {
    const std::uint64_t seed = harness::holdout_seed(c.seed, i);
    const harness::TrialResult r = harness::run_genome_trial(ck.population[index], vs, seed, settings);
    harness::RandomPolicy random(seed);
    arena::ArenaEnvironment env;
    random_wins += harness::run_trial(random, env, vs, seed, settings).won ? 1 : 0;
    wins += r.won ? 1 : 0;
    total += r.fitness;
    out << "seed " << seed << ": ";
    print_trial(out, r);
  }
  out << "win_rate " << fmt("%.3f", static_cast<double>(wins) / o.trials) << " mean_fitness "
      << fmt("%.3f", total / o.trials) << " random_baseline_win_rate "
      << fmt("%.3f", static_cast<double>(random_wins) / o.trials) << '\n';
  return kExitOk;
}

int cmd_replay(const Options& o, std::ostream& out) {
  const harness::EvolutionConfig c = load(o);
  if (o.dump_every < 0) throw UsageError("--dump-every must not be negative");
  const fs::path path = resolve_checkpoint(o, c);
  const vision::VisionSystem vs = load_vision(c);
  const neat::Checkpoint ck = neat::load_checkpoint(path);
  const std::size_t index = pick_genome(o, ck);
  // Default seed: the one the checkpointed generation was scored on.
  const std::uint64_t seed = o.seed ? *o.seed : harness::generation_seed(c.seed, ck.run_state.generation);

  const fs::path frames = c.output_dir / "frames";
  int dumped = 0;
  harness::FrameObserver observer;
  if (o.dump_every > 0) {
    fs::create_directories(frames);
    observer = [&](int poll, long tick, const Framebuffer& frame) {
      if (poll % o.dump_every != 0) return;
      write_ppm(frames / ("trial" + std::to_string(index) + "_tick" + std::to_string(tick) + ".ppm"), frame);
      ++dumped;
    };
  }
  const harness::TrialResult r = harness::run_genome_trial(
      ck.population[index], vs, seed, {c.trial_tick_limit, c.poll_interval}, observer);
  out << "genome " << index << " generation " << ck.run_state.generation << " seed " << seed << '\n';
  print_trial(out, r);
  print_histogram(out, r);
  if (dumped > 0) out << "frames " << dumped << " in " << frames.string() << '\n';
  return kExitOk;
}

int cmd_bench_xor(const Options& o, std::ostream& out) {
  neat::XorParams params;
  if (!o.config.empty()) {
    const harness::EvolutionConfig c = load(o);
    params.reproduction = c.reproduction;
    params.compatibility = c.compatibility;
    params.compat_threshold = c.compat_threshold;
    params.compat_threshold_step = c.compat_threshold_step;
    params.compat_threshold_floor = c.compat_threshold_floor;
    params.target_species = c.target_species;
  }
  if (o.population < 1 || o.generations < 1 || o.seeds < 1)
    throw UsageError("--population, --generations and --seeds must be positive");
  params.reproduction.population_size = o.population;
  params.max_generations = o.generations;
  const std::uint64_t first = o.seed.value_or(1);
  int solved = 0;
  for (int i = 0; i < o.seeds; ++i) {
    const neat::XorRun r = neat::run_xor(first + static_cast<std::uint64_t>(i), params);
    out << "seed " << r.seed << ": ";
    if (r.solved) {
      ++solved;
      out << "solved in " << r.generations << " generations";
    } else {
      out << "unsolved after " << r.generations << " generations";
    }
    out << " (best fitness " << fmt("%.4f", r.best_fitness) << ", " << r.champion.enabled_connection_count()
        << " enabled connections)\n";
  }
  out << "solved " << solved << "/" << o.seeds << '\n';
  return kExitOk;
}

int cmd_calibrate(const Options& o, std::ostream& out, std::ostream& err) {
  const harness::EvolutionConfig c = load(o);
  const vision::VisionSystem vs = vision::VisionSystem::from_assets(c.vision, c.asset_dir);

  arena::SimState full = arena::reset(0);
  const Framebuffer full_frame = arena::render(full);
  arena::SimState dead = full;
  dead.player.body.health = 0.0;
  dead.phase = arena::Phase::player_dead;
  arena::SimState won = full;
  won.boss.body.health = 0.0;
  won.phase = arena::Phase::boss_dead;

  const vision::Calibration cal = vs.measure(full_frame);
  std::vector<std::string> failed;
  auto near_area = [](int count, const PixelRect& r) {
    return std::abs(count - r.area()) <= 0.05 * r.area();
  };
  if (!near_area(cal.player_full_pixels, c.vision.player_bar))
    failed.push_back("player bar: " + std::to_string(cal.player_full_pixels) + " mask pixels, region area " +
                     std::to_string(c.vision.player_bar.area()));
  if (!near_area(cal.boss_full_pixels, c.vision.boss_bar))
    failed.push_back("boss bar: " + std::to_string(cal.boss_full_pixels) + " mask pixels, region area " +
                     std::to_string(c.vision.boss_bar.area()));
  if (vs.detect_terminal(arena::render(dead)) != vision::TerminalBanner::defeat)
    failed.push_back("defeat template does not match the defeat render");
  if (vs.detect_terminal(arena::render(won)) != vision::TerminalBanner::victory)
    failed.push_back("victory template does not match the victory render");
  if (vs.detect_terminal(full_frame) != vision::TerminalBanner::none)
    failed.push_back("a banner template matches an ongoing frame");
  if (!failed.empty()) {
    err << "calibration failed:\n";
    for (const auto& f : failed) err << "  " << f << '\n';
    return kExitConfig;
  }
  harness::save_calibration(c.calibration_path(), cal);
  out << "player_full_pixels " << cal.player_full_pixels << "\nboss_full_pixels " << cal.boss_full_pixels
      << "\nwrote " << c.calibration_path().string() << '\n';
  return kExitOk;
}

int cmd_export_stats(const Options& o, std::ostream& out) {
  const harness::EvolutionConfig c = load(o);
  const auto rows = harness::load_stats(c.stats_path());
  for (const auto& r : rows)
    if (!(0.0 <= r.mean_fitness && r.mean_fitness <= r.max_fitness && r.max_fitness <= 200.0 && r.win_rate >= 0.0 &&
          r.win_rate <= 1.0))
      throw FormatError("stats row for generation " + std::to_string(r.generation) + " is out of range");
  harness::write_stats(out, rows);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pixel-input NEAT agents against a simulated boss fight", "pixelneat"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "key = value configuration file");
    sub->add_option("--seed", o.seed, "seed override");
    sub->add_option("--out", o.out, "output directory override");
  };
  auto add_checkpoint = [&](CLI::App* sub) {
    sub->add_option("--resume", o.resume, "checkpoint file, or directory to take the latest from")
        ->expected(0, 1);
    sub->add_option("--genome", o.genome, "genome index within the checkpoint (default: fittest)");
  };

  CLI::App* train = app.add_subcommand("train", "run evolution, writing stats and checkpoints");
  add_common(train);
  add_checkpoint(train);
  CLI::App* eval = app.add_subcommand("eval", "score a checkpointed genome on held-out seeds");
  add_common(eval);
  add_checkpoint(eval);
  eval->add_option("--trials", o.trials, "number of held-out seeds");
  CLI::App* replay = app.add_subcommand("replay", "re-run one trial, optionally dumping frames");
  add_common(replay);
  add_checkpoint(replay);
  replay->add_option("--dump-every", o.dump_every, "write every Nth polled frame as PPM (0: none)");
  CLI::App* xor_cmd = app.add_subcommand("bench-xor", "NEAT sanity check on XOR");
  add_common(xor_cmd);
  xor_cmd->add_option("--seeds", o.seeds, "number of consecutive seeds");
  xor_cmd->add_option("--population", o.population, "population size");
  xor_cmd->add_option("--generations", o.generations, "generation cap");
  CLI::App* calibrate = app.add_subcommand("calibrate-vision", "measure health bars and check templates");
  add_common(calibrate);
  CLI::App* export_stats = app.add_subcommand("export-stats", "print the validated stats CSV");
  add_common(export_stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink_out, sink_err;
    const int code = app.exit(e, sink_out, sink_err);
    out << sink_out.str();
    err << sink_err.str();
    return code == 0 ? kExitOk : kExitConfig;
  }
  // A bare --resume parses to an empty value.
  if (o.resume && o.resume->empty()) o.resume_latest = true;

  try {
    if (train->parsed()) return cmd_train(o, out);
    if (eval->parsed()) return cmd_eval(o, out);
    if (replay->parsed()) return cmd_replay(o, out);
    if (xor_cmd->parsed()) return cmd_bench_xor(o, out);
    if (calibrate->parsed()) return cmd_calibrate(o, out, err);
    if (export_stats->parsed()) return cmd_export_stats(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const StructuralError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace pixelneat::cli
