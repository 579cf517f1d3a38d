#include "pixelneat/harness/policy.hpp"

#include <algorithm>
#include <random>

#include "pixelneat/errors.hpp"

namespace pixelneat::harness {

using arena::ActionCommand;
using arena::kActionCount;

ActionCommand argmax_action(std::span<const double> scores) {
  if (scores.size() != static_cast<std::size_t>(kActionCount))
    throw ContractViolation("expected one score per action");
  // max_element keeps the first of equal maxima.
  const auto best = std::max_element(scores.begin(), scores.end());
  return arena::action_at(static_cast<int>(best - scores.begin()));
}

namespace {

const neat::Genome& check_game_shape(const neat::Genome& genome) {
  const neat::Topology t = genome.topology();
  if (t.inputs != neat::kGameTopology.inputs || t.outputs != neat::kGameTopology.outputs)
    throw ContractViolation("policy genome needs " + std::to_string(neat::kGameTopology.inputs) +
                            " inputs and " + std::to_string(neat::kGameTopology.outputs) + " outputs");
  return genome;
}

}  // namespace

NetworkPolicy::NetworkPolicy(const neat::Genome& genome) : network_(check_game_shape(genome)) {}

ActionScores NetworkPolicy::scores(const vision::PixelInput& pixels) {
  ActionScores out{};
  network_.activate(pixels, out);
  return out;
}

SequencePolicy::SequencePolicy(std::vector<ActionCommand> actions) : actions_(std::move(actions)) {}

ActionScores SequencePolicy::scores(const vision::PixelInput&) {
  ActionScores out{};
  const ActionCommand a = cursor_ < actions_.size() ? actions_[cursor_] : ActionCommand::block;
  ++cursor_;
  out[static_cast<std::size_t>(arena::index_of(a))] = 1.0;
  return out;
}

ActionScores RandomPolicy::scores(const vision::PixelInput&) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ActionScores out{};
  for (double& s : out) s = u(rng_);
  return out;
}

neat::Genome constant_action_genome(ActionCommand action) {
  const neat::Topology t = neat::kGameTopology;
  neat::Genome g = neat::Genome::minimal(t);
  for (int i = 0; i < t.outputs; ++i) {
    const double w = i == arena::index_of(action) ? 1.0 : -1.0;
    g.insert_connection({t.bias_id(), t.output_id(i), w, true, i + 1});
  }
  return g;
}

}  // namespace pixelneat::harness
