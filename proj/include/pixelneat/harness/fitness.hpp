#pragma once

namespace pixelneat::harness {

// P + (100 - B), or 0 when the agent died (or timed out) without ever
// denting the boss. Throws ContractViolation for inputs outside [0, 100].
double fitness(double player_pct, double boss_pct, bool damageless_death);

}  // namespace pixelneat::harness
