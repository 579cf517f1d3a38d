#include "pixelneat/harness/trial.hpp"

#include <algorithm>

#include "pixelneat/errors.hpp"
#include "pixelneat/harness/fitness.hpp"

namespace pixelneat::harness {

const char* to_string(TrialEnd end) {
  switch (end) {
    case TrialEnd::victory: return "victory";
    case TrialEnd::defeat: return "defeat";
    case TrialEnd::timeout: return "timeout";
  }
  return "?";
}

TrialResult run_trial(Policy& policy, arena::Environment& env, const vision::VisionSystem& vision,
                      std::uint64_t seed, const TrialSettings& settings, const FrameObserver& observer) {
  if (settings.poll_interval <= 0 || settings.tick_limit <= 0)
    throw ContractViolation("trial needs a positive poll interval and tick limit");
  if (!vision.calibrated()) throw InvalidTrial("vision has no health bar calibration");

  env.reset(seed);
  policy.begin_trial();
  TrialResult r;
  long tick = 0;
  for (int poll = 0;; ++poll) {
    const Framebuffer& frame = env.render();
    if (observer) observer(poll, tick, frame);

    const vision::TerminalBanner banner = vision.detect_terminal(frame);
    try {
      r.player_pct = vision.player_health(frame);
      r.boss_pct = vision.boss_health(frame);
    } catch (const CalibrationError& e) {
      throw InvalidTrial(e.what());
    }
    r.min_boss_pct = std::min(r.min_boss_pct, r.boss_pct);

    if (banner == vision::TerminalBanner::victory) {
      r.end = TrialEnd::victory;
      break;
    }
    if (banner == vision::TerminalBanner::defeat) {
      r.end = TrialEnd::defeat;
      break;
    }
    if (tick >= settings.tick_limit) {
      r.end = TrialEnd::timeout;
      break;
    }

    const ActionScores scores = policy.scores(vision::downscale(frame));
    const arena::ActionCommand action = argmax_action(scores);
    ++r.histogram[static_cast<std::size_t>(arena::index_of(action))];
    ++r.submissions;
    if (env.submit(action)) ++r.accepted;
    env.advance(settings.poll_interval);
    tick += settings.poll_interval;
  }

  r.ticks = tick;
  r.won = r.end == TrialEnd::victory;
  r.damageless_death = !r.won && r.min_boss_pct >= kUndamagedBossFloor;
  r.fitness = fitness(r.player_pct, r.boss_pct, r.damageless_death);
  return r;
}

TrialResult run_genome_trial(const neat::Genome& genome, const vision::VisionSystem& vision,
                             std::uint64_t seed, const TrialSettings& settings,
                             const FrameObserver& observer) {
  arena::ArenaEnvironment env;
  NetworkPolicy policy(genome);
  return run_trial(policy, env, vision, seed, settings, observer);
}

}  // namespace pixelneat::harness
