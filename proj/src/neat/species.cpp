#include "pixelneat/neat/species.hpp"

#include <algorithm>
#include <cmath>

namespace pixelneat::neat {

double compatibility_distance(const Genome& a, const Genome& b, const CompatibilityCoeffs& coeffs) {
  const auto& ga = a.connections;
  const auto& gb = b.connections;
  const Innovation max_a = ga.empty() ? 0 : ga.back().innovation;
  const Innovation max_b = gb.empty() ? 0 : gb.back().innovation;

  std::size_t excess = 0;
  std::size_t disjoint = 0;
  std::size_t matching = 0;
  double weight_diff = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ga.size() || j < gb.size()) {
    if (j == gb.size() || (i < ga.size() && ga[i].innovation < gb[j].innovation)) {
      (ga[i].innovation > max_b ? excess : disjoint) += 1;
      ++i;
    } else if (i == ga.size() || gb[j].innovation < ga[i].innovation) {
      (gb[j].innovation > max_a ? excess : disjoint) += 1;
      ++j;
    } else {
      ++matching;
      weight_diff += std::abs(ga[i].weight - gb[j].weight);
      ++i;
      ++j;
    }
  }

  std::size_t n = std::max(ga.size(), gb.size());
  if ((ga.size() < coeffs.normalize_threshold && gb.size() < coeffs.normalize_threshold) || n == 0)
    n = 1;
  const double mean_weight = matching > 0 ? weight_diff / static_cast<double>(matching) : 0.0;
  return coeffs.excess * static_cast<double>(excess) / static_cast<double>(n) +
         coeffs.disjoint * static_cast<double>(disjoint) / static_cast<double>(n) +
         coeffs.weight * mean_weight;
}

std::vector<Species> speciate(std::span<const Genome> population, std::vector<Species> previous,
                              double threshold, const CompatibilityCoeffs& coeffs,
                              int& next_species_id) {
  for (auto& s : previous) s.members.clear();
  for (std::size_t i = 0; i < population.size(); ++i) {
    bool placed = false;
    for (auto& s : previous) {
      if (compatibility_distance(population[i], s.representative, coeffs) <= threshold) {
        s.members.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      Species fresh;
      fresh.id = next_species_id++;
      fresh.representative = population[i];
      fresh.members.push_back(i);
      previous.push_back(std::move(fresh));
    }
  }
  std::erase_if(previous, [](const Species& s) { return s.members.empty(); });
  for (auto& s : previous) s.representative = population[s.members.front()];
  return previous;
}

double adjust_threshold(double threshold, std::size_t species_count, std::size_t target_count,
                        double step, double floor) {
  if (species_count < target_count) threshold -= step;
  if (species_count > target_count) threshold += step;
  return std::max(threshold, floor);
}

}  // namespace pixelneat::neat
