#include "pixelneat/arena/scripted_policy.hpp"

#include <cmath>

namespace pixelneat::arena {

namespace {

constexpr double kStrikeGap = 1.4;
constexpr double kWallMargin = 2.5;

ActionCommand toward(Vec2 from, Vec2 to, bool roll) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  int dir;  // 0 north 1 south 2 east 3 west
  if (std::abs(dx) > std::abs(dy)) {
    dir = dx > 0 ? 2 : 3;
  } else {
    dir = dy > 0 ? 0 : 1;
  }
  return action_at((roll ? 4 : 0) + dir);
}

double room(Vec2 p, int dir) {
  switch (dir) {
    case 0: return kArenaSize - p.y;
    case 1: return p.y;
    case 2: return kArenaSize - p.x;
    default: return p.x;
  }
}

// Roll away from a threat point, sideways if a wall is behind us.
ActionCommand evade(const SimState& s, Vec2 threat) {
  const Vec2 p = s.player.body.position;
  const double dx = p.x - threat.x;
  const double dy = p.y - threat.y;
  int away;
  int side_a;
  int side_b;
  if (std::abs(dx) > std::abs(dy)) {
    away = dx > 0 ? 2 : 3;
    side_a = 0;
    side_b = 1;
  } else {
    away = dy > 0 ? 0 : 1;
    side_a = 2;
    side_b = 3;
  }
  int dir = away;
  if (room(p, away) < kWallMargin) dir = room(p, side_a) >= room(p, side_b) ? side_a : side_b;
  return action_at(4 + dir);
}

}  // namespace

ActionCommand scripted_action(const SimState& s) {
  const BossState& b = s.boss;
  const double g = gap(s);
  const double health = s.player.body.health;

  if (b.stage == BossStage::telegraph) {
    const BossMoveSpec& spec = boss_move_spec(*b.current_move);
    const int remaining = spec.telegraph_ticks - b.body.action_elapsed;
    const bool threatened = b.current_move == BossMove::leap || g <= spec.reach + 1.0;
    if (threatened && remaining >= 2 && remaining <= 9)
      return evade(s, b.current_move == BossMove::leap ? b.leap_target : b.body.position);
    if (!threatened && health <= 60.0 && s.estus_remaining > 0 && remaining >= 45) return ActionCommand::heal_estus;
    return ActionCommand::block;
  }

  if (b.stage == BossStage::active) return ActionCommand::block;

  int window = 0;  // ticks the boss is guaranteed not to hit
  if (b.stage == BossStage::recovery) {
    window = boss_move_spec(*b.current_move).recovery_ticks - b.body.action_elapsed + 9 + 15;
  } else if (b.stage == BossStage::staggered) {
    window = kParryStaggerTicks - b.body.action_elapsed + 9 + 15;
  } else {
    window = b.idle_ticks_left + 15;
  }

  if (health <= 55.0 && s.estus_remaining > 0 && window >= 48) return ActionCommand::heal_estus;
  if (g <= kStrikeGap) {
    if (window >= 26) return ActionCommand::attack_standard;
    return ActionCommand::block;
  }
  if (window >= 20 || g > 4.0) return toward(s.player.body.position, b.body.position, false);
  return ActionCommand::block;
}

ScriptedRun run_scripted(std::uint64_t seed, int poll_interval, long tick_limit) {
  ScriptedRun run;
  run.final_state = reset(seed);
  SimState& s = run.final_state;
  while (s.phase == Phase::ongoing && s.tick < tick_limit) {
    const ActionCommand a = scripted_action(s);
    run.steps.push_back({s.tick, a});
    submit_action(s, a);
    for (int i = 0; i < poll_interval; ++i) step(s);
  }
  return run;
}

}  // namespace pixelneat::arena
