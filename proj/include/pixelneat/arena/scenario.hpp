#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pixelneat/arena/sim.hpp"

namespace pixelneat::arena {

// One line of a `tick <n> action <name>` script.
struct ScenarioStep {
  long tick = 0;
  ActionCommand action = ActionCommand::block;

  friend bool operator==(const ScenarioStep&, const ScenarioStep&) = default;
};

// Throws FormatError on unknown actions, malformed lines or decreasing ticks.
std::vector<ScenarioStep> read_scenario(std::istream& in);
void write_scenario(std::ostream& out, const std::vector<ScenarioStep>& steps);

// Submits each step's action when the simulation reaches its tick, stepping
// until the fight ends or tick_limit ticks have run.
SimState run_scenario(std::uint64_t seed, const std::vector<ScenarioStep>& steps, long tick_limit);

}  // namespace pixelneat::arena
