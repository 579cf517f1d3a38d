#pragma once

#include <cstdint>
#include <vector>

#include "pixelneat/arena/scenario.hpp"
#include "pixelneat/arena/sim.hpp"

namespace pixelneat::arena {

// Hand-written reference player with full state access: rolls out of
// telegraphed attacks, punishes recovery and stagger windows, drinks estus
// when it is safe. Establishes that the fight is winnable.
ActionCommand scripted_action(const SimState& state);

struct ScriptedRun {
  SimState final_state;
  std::vector<ScenarioStep> steps;  // one entry per poll
};

ScriptedRun run_scripted(std::uint64_t seed, int poll_interval = 6, long tick_limit = 5400);

}  // namespace pixelneat::arena
