#include "pixelneat/neat/mutation.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace pixelneat::neat {

namespace {

bool reaches(const std::unordered_map<NodeId, std::vector<NodeId>>& out_edges, NodeId from,
             NodeId to) {
  std::vector<NodeId> stack{from};
  std::vector<NodeId> seen;
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    if (id == to) return true;
    if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
    seen.push_back(id);
    if (auto it = out_edges.find(id); it != out_edges.end())
      stack.insert(stack.end(), it->second.begin(), it->second.end());
  }
  return false;
}

}  // namespace

Genome mutate_weights(Genome genome, Rng& rng, const WeightMutationParams& params) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> replace(params.weight_min, params.weight_max);
  std::normal_distribution<double> perturb(0.0, params.perturb_stddev);
  for (auto& c : genome.connections) {
    double roll = unit(rng);
    if (roll < params.replace_prob) {
      c.weight = replace(rng);
    } else if (roll < params.replace_prob + params.perturb_prob) {
      c.weight += perturb(rng);
    }
    c.weight = std::clamp(c.weight, params.weight_min, params.weight_max);
  }
  return genome;
}

Genome mutate_add_connection(Genome genome, InnovationRegistry& registry, Rng& rng) {
  std::vector<NodeId> sources;
  std::vector<NodeId> targets;
  for (const auto& n : genome.nodes) {
    if (n.kind != NodeKind::output) sources.push_back(n.id);
    if (n.kind == NodeKind::hidden || n.kind == NodeKind::output) targets.push_back(n.id);
  }
  if (sources.empty() || targets.empty()) return genome;

  std::unordered_map<NodeId, std::vector<NodeId>> out_edges;
  for (const auto& c : genome.connections) out_edges[c.source].push_back(c.target);

  std::uniform_int_distribution<std::size_t> pick_source(0, sources.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_target(0, targets.size() - 1);
  for (int attempt = 0; attempt < kAddConnectionAttempts; ++attempt) {
    NodeId s = sources[pick_source(rng)];
    NodeId t = targets[pick_target(rng)];
    if (s == t || genome.has_connection(s, t)) continue;
    if (reaches(out_edges, t, s)) continue;
    std::uniform_real_distribution<double> weight(-1.0, 1.0);
    genome.insert_connection({s, t, weight(rng), true, registry.connection(s, t)});
    return genome;
  }
  return genome;
}

Genome mutate_add_node(Genome genome, InnovationRegistry& registry, Rng& rng) {
  std::vector<std::size_t> enabled;
  for (std::size_t i = 0; i < genome.connections.size(); ++i)
    if (genome.connections[i].enabled) enabled.push_back(i);
  if (enabled.empty()) return genome;

  std::uniform_int_distribution<std::size_t> pick(0, enabled.size() - 1);
  ConnectionGene& chosen = genome.connections[enabled[pick(rng)]];
  const InnovationRegistry::Split split = registry.split(chosen);
  // Possible only if this genome already carries the split from a copy made
  // earlier in the same generation.
  if (genome.has_node(split.node)) return genome;

  chosen.enabled = false;
  const ConnectionGene old = chosen;
  genome.insert_node({split.node, NodeKind::hidden});
  genome.insert_connection({old.source, split.node, 1.0, true, split.incoming});
  genome.insert_connection({split.node, old.target, old.weight, true, split.outgoing});
  return genome;
}

Genome crossover(const Genome& parent_a, const Genome& parent_b, Rng& rng, double disable_prob) {
  const bool b_fitter = parent_b.fitness > parent_a.fitness;
  const Genome& fitter = b_fitter ? parent_b : parent_a;
  const Genome& other = b_fitter ? parent_a : parent_b;

  Genome child;
  child.nodes = fitter.nodes;
  child.connections.reserve(fitter.connections.size());

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto it = other.connections.begin();
  for (const auto& gene : fitter.connections) {
    while (it != other.connections.end() && it->innovation < gene.innovation) ++it;
    ConnectionGene inherited = gene;
    bool disabled_somewhere = !gene.enabled;
    if (it != other.connections.end() && it->innovation == gene.innovation) {
      if (unit(rng) < 0.5) inherited = *it;
      disabled_somewhere = disabled_somewhere || !it->enabled;
    }
    if (disabled_somewhere) inherited.enabled = !(unit(rng) < disable_prob);
    child.connections.push_back(inherited);
  }
  return child;
}

}  // namespace pixelneat::neat
