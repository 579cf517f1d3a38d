#include "pixelneat/arena/scenario.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pixelneat/errors.hpp"

namespace pixelneat::arena {

std::vector<ScenarioStep> read_scenario(std::istream& in) {
  std::vector<ScenarioStep> steps;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tick_kw;
    std::string action_kw;
    std::string name;
    long tick = 0;
    if (!(ls >> tick_kw >> tick >> action_kw >> name) || tick_kw != "tick" || action_kw != "action")
      throw FormatError("scenario line " + std::to_string(line_no) + ": expected 'tick <n> action <name>'");
    auto action = action_from_string(name);
    if (!action) throw FormatError("scenario line " + std::to_string(line_no) + ": unknown action '" + name + "'");
    if (!steps.empty() && tick < steps.back().tick)
      throw FormatError("scenario line " + std::to_string(line_no) + ": ticks must not decrease");
    steps.push_back({tick, *action});
  }
  return steps;
}

void write_scenario(std::ostream& out, const std::vector<ScenarioStep>& steps) {
  for (const auto& s : steps) out << "tick " << s.tick << " action " << to_string(s.action) << '\n';
}

SimState run_scenario(std::uint64_t seed, const std::vector<ScenarioStep>& steps, long tick_limit) {
  SimState state = reset(seed);
  std::size_t next = 0;
  while (state.phase == Phase::ongoing && state.tick < tick_limit) {
    while (next < steps.size() && steps[next].tick <= state.tick) {
      if (steps[next].tick == state.tick) submit_action(state, steps[next].action);
      ++next;
    }
    step(state);
  }
  return state;
}

}  // namespace pixelneat::arena
