#include "pixelneat/arena/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pixelneat/errors.hpp"

namespace pixelneat::arena {

namespace {

constexpr std::array<BossMoveSpec, kBossMoveCount> kBossMoves = {{
    {BossMove::swipe, 15, 6, 21, 30.0, 3.0, false},
    {BossMove::slam, 24, 6, 42, 45.0, 2.0, true},
    {BossMove::leap, 30, 6, 36, 40.0, 2.0, false},
}};

constexpr int kBossInitialIdle = 15;
constexpr int kBossChaseTicks = 15;
constexpr int kBossCooldownTicks = 4;
constexpr double kBossStopGap = 0.5;

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
double length(Vec2 v) { return std::hypot(v.x, v.y); }

Vec2 unit_or(Vec2 v, Vec2 fallback) {
  const double len = length(v);
  return len > 1e-9 ? v * (1.0 / len) : fallback;
}

Vec2 clamp_to_arena(Vec2 p, double radius) {
  return {std::clamp(p.x, radius, kArenaSize - radius), std::clamp(p.y, radius, kArenaSize - radius)};
}

Vec2 cardinal(ActionCommand a) {
  switch (index_of(a) % 4) {
    case 0: return {0.0, 1.0};   // north
    case 1: return {0.0, -1.0};  // south
    case 2: return {1.0, 0.0};   // east
    default: return {-1.0, 0.0}; // west
  }
}

bool parry_active(const PlayerState& p) {
  return p.current_action == ActionCommand::parry && p.body.action_elapsed >= kParryWindowFirst &&
         p.body.action_elapsed <= kParryWindowLast;
}

void stagger(BossState& b) {
  b.stage = BossStage::staggered;
  b.body.action_elapsed = 0;
  b.current_move.reset();
}

void boss_take_poise(BossState& b, double damage) {
  b.poise_damage += damage;
  if (b.poise_damage >= kBossPoiseBreak && b.stage != BossStage::staggered) {
    stagger(b);
    b.poise_damage = 0.0;
  }
}

void advance_player(SimState& s) {
  PlayerState& p = s.player;
  p.body.facing = unit_or(s.boss.body.position - p.body.position, p.body.facing);
  if (!p.current_action) return;

  const ActionCommand a = *p.current_action;
  const int e = ++p.body.action_elapsed;
  auto try_attack = [&](int first, int last, double reach, double damage) {
    if (e >= first && e <= last && !p.hit_landed && gap(s) <= reach) {
      s.boss.body.health = std::max(0.0, s.boss.body.health - damage);
      p.hit_landed = true;
      boss_take_poise(s.boss, damage);
    }
  };

  if (is_move(a)) {
    p.body.position = p.body.position + p.action_direction * (kMoveSpeed * kTickSeconds);
  } else if (is_roll(a)) {
    p.body.position = p.body.position + p.action_direction * (kRollSpeed * kTickSeconds);
    if (e == kRollInvulnFirst) p.body.invulnerable_until = s.tick + (kRollInvulnLast - kRollInvulnFirst);
  } else {
    switch (a) {
      case ActionCommand::backstep:
        p.body.position = p.body.position + p.action_direction * (kBackstepSpeed * kTickSeconds);
        if (e == kBackstepInvulnFirst)
          p.body.invulnerable_until = s.tick + (kBackstepInvulnLast - kBackstepInvulnFirst);
        break;
      case ActionCommand::attack_standard:
        try_attack(kStandardHitFirst, kStandardHitLast, kStandardReach, kStandardDamage);
        break;
      case ActionCommand::attack_heavy:
        try_attack(kHeavyHitFirst, kHeavyHitLast, kHeavyReach, kHeavyDamage);
        break;
      case ActionCommand::heal_estus:
        if (e == action_duration_ticks(a) && s.estus_remaining > 0) {
          p.body.health = std::min(kMaxHealth, p.body.health + kEstusHeal);
          --s.estus_remaining;
        }
        break;
      default:
        break;
    }
  }
  p.body.position = clamp_to_arena(p.body.position, kPlayerRadius);
  if (e >= action_duration_ticks(a)) {
    p.current_action.reset();
    p.body.action_elapsed = 0;
  }
}

void boss_decide(SimState& s) {
  BossState& b = s.boss;
  const double g = gap(s);
  // Weights for swipe, slam, leap, keep chasing.
  std::array<double, 4> w{};
  if (g <= 2.0) {
    w = {5.0, 4.0, 1.0, 0.0};
  } else if (g <= 3.5) {
    w = {6.0, 1.0, 1.0, 2.0};
  } else if (g <= 8.0) {
    w = {0.0, 0.0, 3.0, 5.0};
  } else {
    w = {0.0, 0.0, 5.0, 5.0};
  }
  const double total = w[0] + w[1] + w[2] + w[3];
  double roll = std::uniform_real_distribution<double>(0.0, total)(s.rng);
  int choice = 0;
  while (choice < 3 && roll >= w[static_cast<std::size_t>(choice)]) {
    roll -= w[static_cast<std::size_t>(choice)];
    ++choice;
  }
  if (choice == 3) {
    b.idle_ticks_left = kBossChaseTicks;
    return;
  }
  b.current_move = static_cast<BossMove>(choice);
  b.stage = BossStage::telegraph;
  b.body.action_elapsed = 0;
  b.hit_landed = false;
  if (b.current_move == BossMove::leap)
    b.leap_target = clamp_to_arena(s.player.body.position, kBossRadius);
}

void boss_try_hit(SimState& s) {
  BossState& b = s.boss;
  const BossMoveSpec& spec = boss_move_spec(*b.current_move);
  if (gap(s) > spec.reach || player_invulnerable(s)) return;
  b.hit_landed = true;
  if (spec.parryable && parry_active(s.player)) {
    stagger(b);
    return;
  }
  double damage = spec.damage;
  if (s.player.current_action == ActionCommand::block) damage *= kBlockFactor;
  s.player.body.health = std::max(0.0, s.player.body.health - damage);
}

void advance_boss(SimState& s) {
  BossState& b = s.boss;
  b.poise_damage = std::max(0.0, b.poise_damage - kBossPoiseRegenPerTick);
  const Vec2 to_player = s.player.body.position - b.body.position;
  switch (b.stage) {
    case BossStage::idle: {
      b.body.facing = unit_or(to_player, b.body.facing);
      const double g = gap(s);
      if (g > kBossStopGap) {
        const double stride = std::min(kBossChaseSpeed * kTickSeconds, g - kBossStopGap);
        b.body.position = clamp_to_arena(b.body.position + b.body.facing * stride, kBossRadius);
      }
      if (b.idle_ticks_left > 0) {
        --b.idle_ticks_left;
      } else {
        boss_decide(s);
      }
      break;
    }
    case BossStage::telegraph: {
      const BossMoveSpec& spec = boss_move_spec(*b.current_move);
      if (b.current_move == BossMove::leap) {
        b.body.facing = unit_or(b.leap_target - b.body.position, b.body.facing);
      } else {
        b.body.facing = unit_or(to_player, b.body.facing);
      }
      if (++b.body.action_elapsed >= spec.telegraph_ticks) {
        b.stage = BossStage::active;
        b.body.action_elapsed = 0;
        if (b.current_move == BossMove::leap) b.body.position = b.leap_target;
      }
      break;
    }
    case BossStage::active: {
      const BossMoveSpec& spec = boss_move_spec(*b.current_move);
      ++b.body.action_elapsed;
      if (!b.hit_landed) boss_try_hit(s);
      if (b.stage == BossStage::active && b.body.action_elapsed >= spec.active_ticks) {
        b.stage = BossStage::recovery;
        b.body.action_elapsed = 0;
      }
      break;
    }
    case BossStage::recovery: {
      const BossMoveSpec& spec = boss_move_spec(*b.current_move);
      if (++b.body.action_elapsed >= spec.recovery_ticks) {
        b.stage = BossStage::idle;
        b.body.action_elapsed = 0;
        b.current_move.reset();
        b.idle_ticks_left = kBossCooldownTicks;
      }
      break;
    }
    case BossStage::staggered:
      if (++b.body.action_elapsed >= kParryStaggerTicks) {
        b.stage = BossStage::idle;
        b.body.action_elapsed = 0;
        b.idle_ticks_left = kBossCooldownTicks;
      }
      break;
  }
}

// Bodies never overlap; the player is pushed out, then the boss if the
// player is pinned against a wall.
void separate(SimState& s) {
  Vec2& pp = s.player.body.position;
  Vec2& bp = s.boss.body.position;
  const double min_dist = kPlayerRadius + kBossRadius;
  Vec2 d = pp - bp;
  double dist = length(d);
  if (dist >= min_dist) return;
  const Vec2 dir = unit_or(d, Vec2{0.0, -1.0});
  pp = clamp_to_arena(bp + dir * min_dist, kPlayerRadius);
  d = pp - bp;
  dist = length(d);
  if (dist < min_dist) bp = clamp_to_arena(pp - unit_or(d, Vec2{0.0, -1.0}) * min_dist, kBossRadius);
}

}  // namespace

const BossMoveSpec& boss_move_spec(BossMove move) {
  return kBossMoves[static_cast<std::size_t>(move)];
}

SimState reset(std::uint64_t seed) {
  SimState s;
  s.player.body.position = kPlayerSpawn;
  s.player.body.facing = {0.0, 1.0};
  s.player.body.invulnerable_until = -1;
  s.boss.body.position = kBossSpawn;
  s.boss.body.facing = {0.0, -1.0};
  s.boss.body.invulnerable_until = -1;
  s.boss.idle_ticks_left = kBossInitialIdle;
  s.rng.seed(seed);
  return s;
}

bool submit_action(SimState& state, ActionCommand cmd) {
  if (state.phase != Phase::ongoing)
    throw TerminalStateError(std::string("action submitted after the fight ended (") +
                             to_string(state.phase) + ")");
  PlayerState& p = state.player;
  if (p.current_action && !is_move(*p.current_action)) return false;
  p.current_action = cmd;
  p.body.action_elapsed = 0;
  p.hit_landed = false;
  if (is_move(cmd) || is_roll(cmd)) {
    p.action_direction = cardinal(cmd);
  } else if (cmd == ActionCommand::backstep) {
    p.action_direction = p.body.facing * -1.0;
  } else {
    p.action_direction = {};
  }
  return true;
}

void step(SimState& state, double dt) {
  if (std::abs(dt - kTickSeconds) > 1e-12)
    throw ContractViolation("step() runs at a fixed 1/30 s tick");
  if (state.phase != Phase::ongoing) return;
  ++state.tick;
  advance_player(state);
  advance_boss(state);
  separate(state);
  if (state.boss.body.health <= 0.0) {
    state.phase = Phase::boss_dead;
  } else if (state.player.body.health <= 0.0) {
    state.phase = Phase::player_dead;
  }
}

Phase terminal_status(const SimState& state) { return state.phase; }

double gap(const SimState& state) {
  return length(state.player.body.position - state.boss.body.position) - kPlayerRadius - kBossRadius;
}

bool player_invulnerable(const SimState& state) {
  return state.tick <= state.player.body.invulnerable_until;
}

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::ongoing: return "ongoing";
    case Phase::player_dead: return "player_dead";
    case Phase::boss_dead: return "boss_dead";
  }
  return "?";
}

const char* to_string(BossMove move) {
  switch (move) {
    case BossMove::swipe: return "swipe";
    case BossMove::slam: return "slam";
    case BossMove::leap: return "leap";
  }
  return "?";
}

}  // namespace pixelneat::arena
