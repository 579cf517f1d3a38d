#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pixelneat/neat/genome.hpp"

namespace pixelneat::neat {

struct CompatibilityCoeffs {
  double excess = 1.0;    // c1
  double disjoint = 1.0;  // c2
  double weight = 0.4;    // c3
  // Genomes with fewer genes than this are compared without size normalization.
  std::size_t normalize_threshold = 20;
};

double compatibility_distance(const Genome& a, const Genome& b, const CompatibilityCoeffs& coeffs);

struct Species {
  int id = 0;
  Genome representative;
  std::vector<std::size_t> members;  // indices into the population
  double best_fitness_ever = -1.0;
  int staleness = 0;

  friend bool operator==(const Species&, const Species&) = default;
};

// Assigns each genome to the first species whose representative lies within
// threshold, founding new species otherwise. Species left empty are dropped
// and the survivors' representatives become their first member this round.
std::vector<Species> speciate(std::span<const Genome> population,
                              std::vector<Species> previous, double threshold,
                              const CompatibilityCoeffs& coeffs, int& next_species_id);

// Moves the threshold one step toward producing target_count species.
double adjust_threshold(double threshold, std::size_t species_count, std::size_t target_count,
                        double step, double floor = 0.3);

}  // namespace pixelneat::neat
