#pragma once

#include <span>
#include <vector>

#include "pixelneat/neat/genome.hpp"
#include "pixelneat/neat/innovation.hpp"
#include "pixelneat/neat/mutation.hpp"
#include "pixelneat/neat/species.hpp"

namespace pixelneat::neat {

struct ReproductionParams {
  int population_size = 50;
  int elitism = 1;
  // Species need strictly more members than this for their champions to be kept.
  int elitism_min_size = 5;
  double survival_fraction = 0.3;
  double crossover_prob = 0.75;
  int staleness_limit = 15;
  double add_connection_prob = 0.2;
  double add_node_prob = 0.05;
  double disable_inherit_prob = kInheritDisabledProb;
  WeightMutationParams weights;
};

// Largest-remainder apportionment of total seats by share. All-zero shares
// split evenly. The result always sums to total.
std::vector<int> allocate_offspring(std::span<const double> shares, int total);

// Uses the fitness stored on each genome. Updates staleness bookkeeping on
// the species in place and returns exactly population_size new genomes.
std::vector<Genome> reproduce(std::span<const Genome> population, std::vector<Species>& species,
                              const ReproductionParams& params, InnovationRegistry& registry,
                              Rng& rng);

// Every output wired to the bias and to inputs_per_output distinct random
// inputs (all inputs if there are fewer), weights uniform in [-1, 1].
std::vector<Genome> initial_population(Topology topology, int size, int inputs_per_output,
                                       InnovationRegistry& registry, Rng& rng);

}  // namespace pixelneat::neat
