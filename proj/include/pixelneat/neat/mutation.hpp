#pragma once

#include "pixelneat/neat/genome.hpp"
#include "pixelneat/neat/innovation.hpp"

namespace pixelneat::neat {

struct WeightMutationParams {
  double perturb_prob = 0.8;
  double perturb_stddev = 0.3;
  double replace_prob = 0.1;
  double weight_min = -8.0;
  double weight_max = 8.0;
};

// Per gene: replaced uniformly in range with replace_prob, otherwise
// perturbed with perturb_prob. Result clamped to the range.
Genome mutate_weights(Genome genome, Rng& rng, const WeightMutationParams& params);

inline constexpr int kAddConnectionAttempts = 30;

// Adds one enabled connection with a weight uniform in [-1, 1]. Sources are
// input, bias or hidden nodes; targets are hidden or output nodes. Pairs that
// already exist or would close a cycle are rejected; after
// kAddConnectionAttempts rejections the genome is returned unchanged.
Genome mutate_add_connection(Genome genome, InnovationRegistry& registry, Rng& rng);

// Splits a uniformly chosen enabled connection a->b into a->n (weight 1) and
// n->b (old weight), disabling the original. No-op without enabled genes.
Genome mutate_add_node(Genome genome, InnovationRegistry& registry, Rng& rng);

inline constexpr double kInheritDisabledProb = 0.75;

// Matching genes come from either parent at random; disjoint and excess genes
// from the fitter parent (parent_a on ties). A gene disabled in either parent
// stays disabled with probability disable_prob.
Genome crossover(const Genome& parent_a, const Genome& parent_b, Rng& rng,
                 double disable_prob = kInheritDisabledProb);

}  // namespace pixelneat::neat
