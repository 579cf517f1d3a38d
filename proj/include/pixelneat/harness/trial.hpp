#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "pixelneat/arena/environment.hpp"
#include "pixelneat/harness/config.hpp"
#include "pixelneat/harness/policy.hpp"
#include "pixelneat/vision/vision.hpp"

namespace pixelneat::harness {

// Vision tolerance: the boss counts as damaged once observed below this.
inline constexpr double kUndamagedBossFloor = 98.0;

enum class TrialEnd { victory, defeat, timeout };
const char* to_string(TrialEnd end);

struct TrialResult {
  double player_pct = 0.0;
  double boss_pct = 0.0;
  double fitness = 0.0;
  bool won = false;
  bool damageless_death = false;
  TrialEnd end = TrialEnd::timeout;
  long ticks = 0;
  int submissions = 0;
  int accepted = 0;
  double min_boss_pct = 100.0;
  std::array<int, arena::kActionCount> histogram{};

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

// Raised when vision cannot produce readings, e.g. uncalibrated bars. The
// trial is void, not a zero.
class InvalidTrial : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrialSettings {
  long tick_limit = kDefaultTrialTickLimit;
  int poll_interval = kPollInterval;
};

// Called on every polled frame, terminal frame included, with the frame's
// index and the tick it was taken at.
using FrameObserver = std::function<void(int poll, long tick, const Framebuffer& frame)>;

// The agent loop. Everything the loop learns comes from rendered frames.
TrialResult run_trial(Policy& policy, arena::Environment& env, const vision::VisionSystem& vision,
                      std::uint64_t seed, const TrialSettings& settings = {},
                      const FrameObserver& observer = {});

// Convenience: fresh ArenaEnvironment and NetworkPolicy.
TrialResult run_genome_trial(const neat::Genome& genome, const vision::VisionSystem& vision,
                             std::uint64_t seed, const TrialSettings& settings = {},
                             const FrameObserver& observer = {});

}  // namespace pixelneat::harness
