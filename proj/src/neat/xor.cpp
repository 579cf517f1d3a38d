#include "pixelneat/neat/xor.hpp"

#include <algorithm>
#include <array>

#include "pixelneat/neat/innovation.hpp"
#include "pixelneat/neat/network.hpp"

namespace pixelneat::neat {

namespace {

struct Case {
  std::array<double, 2> in;
  double target;
};
constexpr std::array<Case, 4> kCases = {{{{0, 0}, 0}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 0}}};

}  // namespace

double xor_fitness(const Genome& genome) {
  const Network net(genome);
  double sse = 0.0;
  for (const Case& c : kCases) {
    const double err = net.activate(c.in)[0] - c.target;
    sse += err * err;
  }
  return 4.0 - sse;
}

bool xor_classifies(const Genome& genome) {
  const Network net(genome);
  return std::all_of(kCases.begin(), kCases.end(),
                     [&](const Case& c) { return (net.activate(c.in)[0] > 0.5) == (c.target > 0.5); });
}

XorRun run_xor(std::uint64_t seed, const XorParams& params) {
  Rng rng(seed);
  InnovationRegistry registry = InnovationRegistry::for_topology(kXorTopology);
  std::vector<Genome> population = initial_population(kXorTopology, params.reproduction.population_size,
                                                      kXorTopology.inputs, registry, rng);
  std::vector<Species> species;
  double threshold = params.compat_threshold;
  int next_species_id = 0;

  XorRun run;
  run.seed = seed;
  for (int gen = 1; gen <= params.max_generations; ++gen) {
    if (gen > 1) {
      registry.new_generation();
      population = reproduce(population, species, params.reproduction, registry, rng);
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < population.size(); ++i) {
      population[i].fitness = xor_fitness(population[i]);
      if (population[i].fitness > population[best].fitness) best = i;
    }
    run.generations = gen;
    if (population[best].fitness > run.best_fitness || gen == 1) {
      run.best_fitness = population[best].fitness;
      run.champion = population[best];
    }
    if (population[best].fitness >= kXorSolvedFitness) {
      run.solved = true;
      return run;
    }
    species = speciate(population, std::move(species), threshold, params.compatibility, next_species_id);
    threshold = adjust_threshold(threshold, species.size(), static_cast<std::size_t>(params.target_species),
                                 params.compat_threshold_step, params.compat_threshold_floor);
  }
  return run;
}

}  // namespace pixelneat::neat
