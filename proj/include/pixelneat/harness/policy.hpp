#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pixelneat/arena/action.hpp"
#include "pixelneat/arena/scenario.hpp"
#include "pixelneat/neat/genome.hpp"
#include "pixelneat/neat/network.hpp"
#include "pixelneat/vision/vision.hpp"

namespace pixelneat::harness {

using ActionScores = std::array<double, arena::kActionCount>;

// First maximum wins, so ties go to the lowest action index.
arena::ActionCommand argmax_action(std::span<const double> scores);

// Maps one downscaled frame to a score per action. Sees pixels only.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void begin_trial() {}
  virtual ActionScores scores(const vision::PixelInput& pixels) = 0;
};

class NetworkPolicy final : public Policy {
 public:
  // Throws ContractViolation unless the genome has 3600 inputs and 14 outputs.
  explicit NetworkPolicy(const neat::Genome& genome);
  ActionScores scores(const vision::PixelInput& pixels) override;

 private:
  neat::Network network_;
};

// Stub network that ignores the pixels and emits a one-hot vector for the
// next action of a fixed per-poll sequence; idles on block afterwards.
class SequencePolicy final : public Policy {
 public:
  explicit SequencePolicy(std::vector<arena::ActionCommand> actions);
  void begin_trial() override { cursor_ = 0; }
  ActionScores scores(const vision::PixelInput& pixels) override;

 private:
  std::vector<arena::ActionCommand> actions_;
  std::size_t cursor_ = 0;
};

// Uniform random scores; the argmax is then a uniform random action.
class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  void begin_trial() override { rng_.seed(seed_); }
  ActionScores scores(const vision::PixelInput& pixels) override;

 private:
  std::uint64_t seed_;
  neat::Rng rng_;
};

// A genome whose argmax never moves off `action`: every output wired to the
// bias, only the chosen output with a positive weight.
neat::Genome constant_action_genome(arena::ActionCommand action);

}  // namespace pixelneat::harness
