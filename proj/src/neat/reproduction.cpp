#include "pixelneat/neat/reproduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pixelneat/errors.hpp"

namespace pixelneat::neat {

std::vector<int> allocate_offspring(std::span<const double> shares, int total) {
  std::vector<int> seats(shares.size(), 0);
  if (shares.empty() || total <= 0) return seats;

  std::vector<double> weights(shares.begin(), shares.end());
  double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0)) {
    std::fill(weights.begin(), weights.end(), 1.0);
    sum = static_cast<double>(weights.size());
  }

  std::vector<double> remainder(weights.size());
  int assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = weights[i] / sum * total;
    seats[i] = static_cast<int>(std::floor(exact));
    remainder[i] = exact - seats[i];
    assigned += seats[i];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < total && k < order.size(); ++k, ++assigned) ++seats[order[k]];

  // Floating error can leave the sum off by one; the largest species absorbs it.
  if (assigned != total) {
    auto largest = std::max_element(seats.begin(), seats.end());
    *largest += total - assigned;
  }
  return seats;
}

std::vector<Genome> reproduce(std::span<const Genome> population, std::vector<Species>& species,
                              const ReproductionParams& params, InnovationRegistry& registry,
                              Rng& rng) {
  if (species.empty()) throw ContractViolation("reproduce needs at least one species");
  if (population.empty()) throw ContractViolation("reproduce needs a non-empty population");

  std::size_t global_best = 0;
  for (std::size_t i = 1; i < population.size(); ++i)
    if (population[i].fitness > population[global_best].fitness) global_best = i;

  std::vector<double> shares(species.size(), 0.0);
  for (std::size_t s = 0; s < species.size(); ++s) {
    Species& sp = species[s];
    double best = -1.0;
    double sum = 0.0;
    bool has_global_best = false;
    for (std::size_t m : sp.members) {
      best = std::max(best, population[m].fitness);
      sum += population[m].fitness;
      has_global_best = has_global_best || m == global_best;
    }
    if (best > sp.best_fitness_ever) {
      sp.best_fitness_ever = best;
      sp.staleness = 0;
    } else {
      ++sp.staleness;
    }
    const bool eligible = sp.staleness < params.staleness_limit || has_global_best;
    // Explicit fitness sharing: each member's fitness divided by species size.
    if (eligible) shares[s] = std::max(sum / static_cast<double>(sp.members.size()), 1e-12);
  }

  const std::vector<int> quota = allocate_offspring(shares, params.population_size);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Genome> next;
  next.reserve(static_cast<std::size_t>(params.population_size));
  for (std::size_t s = 0; s < species.size(); ++s) {
    int remaining = quota[s];
    if (remaining <= 0) continue;
    std::vector<std::size_t> ranked = species[s].members;
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
      return population[a].fitness > population[b].fitness;
    });

    if (static_cast<int>(ranked.size()) > params.elitism_min_size) {
      for (int e = 0; e < params.elitism && remaining > 0 && e < static_cast<int>(ranked.size());
           ++e, --remaining) {
        Genome elite = population[ranked[static_cast<std::size_t>(e)]];
        elite.fitness = 0.0;
        next.push_back(std::move(elite));
      }
    }

    const auto survivors = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(params.survival_fraction * ranked.size())));
    std::uniform_int_distribution<std::size_t> pick(0, survivors - 1);
    for (; remaining > 0; --remaining) {
      Genome child;
      if (survivors >= 2 && unit(rng) < params.crossover_prob) {
        std::size_t a = pick(rng);
        std::size_t b = pick(rng);
        while (b == a) b = pick(rng);
        child = crossover(population[ranked[a]], population[ranked[b]], rng,
                          params.disable_inherit_prob);
      } else {
        child = population[ranked[pick(rng)]];
      }
      child = mutate_weights(std::move(child), rng, params.weights);
      if (unit(rng) < params.add_connection_prob)
        child = mutate_add_connection(std::move(child), registry, rng);
      if (unit(rng) < params.add_node_prob) child = mutate_add_node(std::move(child), registry, rng);
      child.fitness = 0.0;
      next.push_back(std::move(child));
    }
  }
  return next;
}

std::vector<Genome> initial_population(Topology topology, int size, int inputs_per_output,
                                       InnovationRegistry& registry, Rng& rng) {
  std::vector<Genome> population;
  population.reserve(static_cast<std::size_t>(size));
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::vector<NodeId> inputs(static_cast<std::size_t>(topology.inputs));
  std::iota(inputs.begin(), inputs.end(), 0);
  const auto k = static_cast<std::size_t>(std::min(inputs_per_output, topology.inputs));
  for (int g = 0; g < size; ++g) {
    Genome genome = Genome::minimal(topology);
    for (int o = 0; o < topology.outputs; ++o) {
      const NodeId out = topology.output_id(o);
      std::vector<NodeId> chosen;
      if (k == inputs.size()) {
        chosen = inputs;
      } else {
        // Partial Fisher-Yates for k distinct inputs.
        std::vector<NodeId> pool = inputs;
        for (std::size_t i = 0; i < k; ++i) {
          std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
          std::swap(pool[i], pool[pick(rng)]);
        }
        chosen.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
      }
      genome.insert_connection(
          {topology.bias_id(), out, weight(rng), true, registry.connection(topology.bias_id(), out)});
      for (NodeId in : chosen)
        genome.insert_connection({in, out, weight(rng), true, registry.connection(in, out)});
    }
    population.push_back(std::move(genome));
  }
  return population;
}

}  // namespace pixelneat::neat
