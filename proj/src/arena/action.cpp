#include "pixelneat/arena/action.hpp"

namespace pixelneat::arena {

std::optional<ActionCommand> action_from_string(std::string_view name) {
  for (int i = 0; i < kActionCount; ++i)
    if (kActionNames[static_cast<std::size_t>(i)] == name) return action_at(i);
  return std::nullopt;
}

int action_duration_ticks(ActionCommand a) {
  switch (a) {
    case ActionCommand::move_north:
    case ActionCommand::move_south:
    case ActionCommand::move_east:
    case ActionCommand::move_west:
      return 6;
    case ActionCommand::roll_north:
    case ActionCommand::roll_south:
    case ActionCommand::roll_east:
    case ActionCommand::roll_west:
      return 15;
    case ActionCommand::backstep: return 12;
    case ActionCommand::attack_standard: return 24;
    case ActionCommand::attack_heavy: return 48;
    case ActionCommand::block: return 12;
    case ActionCommand::parry: return 18;
    case ActionCommand::heal_estus: return 45;
  }
  return 1;
}

bool is_move(ActionCommand a) { return index_of(a) <= index_of(ActionCommand::move_west); }

bool is_roll(ActionCommand a) {
  return index_of(a) >= index_of(ActionCommand::roll_north) &&
         index_of(a) <= index_of(ActionCommand::roll_west);
}

}  // namespace pixelneat::arena
