#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace pixelneat::arena {

// Network output i selects action i.
enum class ActionCommand : int {
  move_north,
  move_south,
  move_east,
  move_west,
  roll_north,
  roll_south,
  roll_east,
  roll_west,
  backstep,
  attack_standard,
  attack_heavy,
  block,
  parry,
  heal_estus,
};

inline constexpr int kActionCount = 14;

inline constexpr std::array<std::string_view, kActionCount> kActionNames = {
    "move_north", "move_south", "move_east",       "move_west",    "roll_north",
    "roll_south", "roll_east",  "roll_west",       "backstep",     "attack_standard",
    "attack_heavy", "block",    "parry",           "heal_estus",
};

constexpr int index_of(ActionCommand a) { return static_cast<int>(a); }
constexpr ActionCommand action_at(int i) { return static_cast<ActionCommand>(i); }
constexpr std::string_view to_string(ActionCommand a) { return kActionNames[static_cast<std::size_t>(a)]; }

std::optional<ActionCommand> action_from_string(std::string_view name);

// Lockout length in 30 Hz ticks.
int action_duration_ticks(ActionCommand a);

bool is_move(ActionCommand a);
bool is_roll(ActionCommand a);

}  // namespace pixelneat::arena
