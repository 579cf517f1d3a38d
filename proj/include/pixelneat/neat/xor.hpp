#pragma once

#include <cstdint>
#include <vector>

#include "pixelneat/neat/genome.hpp"
#include "pixelneat/neat/reproduction.hpp"
#include "pixelneat/neat/species.hpp"

namespace pixelneat::neat {

inline constexpr Topology kXorTopology{2, 1};
inline constexpr double kXorSolvedFitness = 3.9;

// 4 minus the summed squared error over the four XOR cases.
double xor_fitness(const Genome& genome);
// Every case on the correct side of 0.5.
bool xor_classifies(const Genome& genome);

struct XorParams {
  int max_generations = 300;
  ReproductionParams reproduction = [] {
    ReproductionParams p;
    p.population_size = 150;
    return p;
  }();
  CompatibilityCoeffs compatibility;
  double compat_threshold = 3.0;
  double compat_threshold_step = 0.1;
  double compat_threshold_floor = 0.3;
  int target_species = 6;
};

struct XorRun {
  std::uint64_t seed = 0;
  bool solved = false;
  int generations = 0;  // generation of the first solver, or generations run
  double best_fitness = 0.0;
  Genome champion;
};

XorRun run_xor(std::uint64_t seed, const XorParams& params = {});

}  // namespace pixelneat::neat
