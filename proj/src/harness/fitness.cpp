#include "pixelneat/harness/fitness.hpp"

#include <string>

#include "pixelneat/errors.hpp"

namespace pixelneat::harness {

double fitness(double player_pct, double boss_pct, bool damageless_death) {
  if (!(player_pct >= 0.0 && player_pct <= 100.0))
    throw ContractViolation("player health " + std::to_string(player_pct) + " outside [0, 100]");
  if (!(boss_pct >= 0.0 && boss_pct <= 100.0))
    throw ContractViolation("boss health " + std::to_string(boss_pct) + " outside [0, 100]");
  if (damageless_death) return 0.0;
  return player_pct + (100.0 - boss_pct);
}

}  // namespace pixelneat::harness
