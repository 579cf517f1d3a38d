#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "pixelneat/arena/action.hpp"

namespace pixelneat::arena {

inline constexpr int kTicksPerSecond = 30;
inline constexpr double kTickSeconds = 1.0 / kTicksPerSecond;

inline constexpr double kArenaSize = 20.0;  // square, units
inline constexpr double kMaxHealth = 100.0;
inline constexpr int kStartingEstus = 5;
inline constexpr double kEstusHeal = 40.0;

inline constexpr double kPlayerRadius = 0.5;
inline constexpr double kBossRadius = 1.5;

// Player action timing, all in ticks. Windows are inclusive ranges of
// action_elapsed (1 on the first tick after acceptance).
inline constexpr int kRollInvulnFirst = 3;   // 0.10 s
inline constexpr int kRollInvulnLast = 10;   // 0.35 s
inline constexpr int kBackstepInvulnFirst = 2;
inline constexpr int kBackstepInvulnLast = 5;
inline constexpr int kParryWindowFirst = 3;  // 0.10 s
inline constexpr int kParryWindowLast = 9;   // 0.30 s
inline constexpr int kStandardHitFirst = 9;
inline constexpr int kStandardHitLast = 15;
inline constexpr int kHeavyHitFirst = 27;
inline constexpr int kHeavyHitLast = 36;

inline constexpr double kStandardDamage = 12.0;
inline constexpr double kHeavyDamage = 25.0;
inline constexpr double kStandardReach = 1.6;  // edge-to-edge gap
inline constexpr double kHeavyReach = 2.0;
inline constexpr double kBlockFactor = 0.25;
inline constexpr int kParryStaggerTicks = 60;  // 2.0 s
// Poise: damage taken piles up and bleeds off every tick; reaching the
// break value staggers the boss like a parry does. Rewards pressing attacks.
inline constexpr double kBossPoiseBreak = 45.0;
inline constexpr double kBossPoiseRegenPerTick = 0.25;

inline constexpr double kMoveSpeed = 4.5;      // units per second
inline constexpr double kRollSpeed = 8.0;
inline constexpr double kBackstepSpeed = 6.0;
inline constexpr double kBossChaseSpeed = 2.5;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

enum class Phase { ongoing, player_dead, boss_dead };

enum class BossMove { swipe, slam, leap };
inline constexpr int kBossMoveCount = 3;

struct BossMoveSpec {
  BossMove id;
  int telegraph_ticks;
  int active_ticks;
  int recovery_ticks;
  double damage;
  double reach;  // edge-to-edge gap at which the hit connects
  bool parryable;
};

const BossMoveSpec& boss_move_spec(BossMove move);

enum class BossStage { idle, telegraph, active, recovery, staggered };

struct EntityState {
  Vec2 position;
  Vec2 facing{0.0, 1.0};
  double health = kMaxHealth;
  int action_elapsed = 0;       // ticks into the current action / stage
  long invulnerable_until = 0;  // last tick with i-frames, inclusive

  friend bool operator==(const EntityState&, const EntityState&) = default;
};

struct PlayerState {
  EntityState body;
  std::optional<ActionCommand> current_action;
  bool hit_landed = false;  // the current attack already connected
  Vec2 action_direction;    // unit displacement direction for moves/rolls

  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

struct BossState {
  EntityState body;
  std::optional<BossMove> current_move;
  BossStage stage = BossStage::idle;
  int idle_ticks_left = 0;  // ticks until the next move decision
  bool hit_landed = false;
  Vec2 leap_target;
  double poise_damage = 0.0;

  friend bool operator==(const BossState&, const BossState&) = default;
};

struct SimState {
  PlayerState player;
  BossState boss;
  int estus_remaining = kStartingEstus;
  long tick = 0;
  std::mt19937_64 rng;
  Phase phase = Phase::ongoing;

  double sim_time() const { return static_cast<double>(tick) * kTickSeconds; }

  friend bool operator==(const SimState&, const SimState&) = default;
};

inline constexpr Vec2 kPlayerSpawn{10.0, 3.0};
inline constexpr Vec2 kBossSpawn{10.0, 15.0};

SimState reset(std::uint64_t seed);

// False when the player is still locked in a non-move action. Moves can be
// cut short by any new command. Throws TerminalStateError after the fight ended.
bool submit_action(SimState& state, ActionCommand cmd);

// Advances one fixed tick. dt must equal kTickSeconds.
void step(SimState& state, double dt = kTickSeconds);

Phase terminal_status(const SimState& state);

// Edge-to-edge distance between player and boss.
double gap(const SimState& state);
bool player_invulnerable(const SimState& state);

const char* to_string(Phase phase);
const char* to_string(BossMove move);

}  // namespace pixelneat::arena
