#include "pixelneat/neat/genome.hpp"

#include <algorithm>
#include <cstring>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "pixelneat/errors.hpp"

namespace pixelneat::neat {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::input: return "input";
    case NodeKind::bias: return "bias";
    case NodeKind::hidden: return "hidden";
    case NodeKind::output: return "output";
  }
  return "?";
}

NodeKind node_kind_from_string(const char* text) {
  if (std::strcmp(text, "input") == 0) return NodeKind::input;
  if (std::strcmp(text, "bias") == 0) return NodeKind::bias;
  if (std::strcmp(text, "hidden") == 0) return NodeKind::hidden;
  if (std::strcmp(text, "output") == 0) return NodeKind::output;
  throw FormatError(std::string("unknown node kind '") + text + "'");
}

Genome Genome::minimal(Topology topology) {
  Genome g;
  g.nodes.reserve(static_cast<std::size_t>(topology.inputs + 1 + topology.outputs));
  for (int i = 0; i < topology.inputs; ++i) g.nodes.push_back({i, NodeKind::input});
  g.nodes.push_back({topology.bias_id(), NodeKind::bias});
  for (int i = 0; i < topology.outputs; ++i) g.nodes.push_back({topology.output_id(i), NodeKind::output});
  return g;
}

Topology Genome::topology() const {
  Topology t;
  for (const auto& n : nodes) {
    if (n.kind == NodeKind::input) ++t.inputs;
    if (n.kind == NodeKind::output) ++t.outputs;
  }
  return t;
}

const NodeGene* Genome::find_node(NodeId id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                             [](const NodeGene& n, NodeId v) { return n.id < v; });
  return (it != nodes.end() && it->id == id) ? &*it : nullptr;
}

bool Genome::has_connection(NodeId source, NodeId target) const {
  return std::any_of(connections.begin(), connections.end(), [&](const ConnectionGene& c) {
    return c.source == source && c.target == target;
  });
}

void Genome::insert_node(NodeGene node) {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), node.id,
                             [](const NodeGene& n, NodeId v) { return n.id < v; });
  nodes.insert(it, node);
}

void Genome::insert_connection(ConnectionGene gene) {
  auto it = std::lower_bound(
      connections.begin(), connections.end(), gene.innovation,
      [](const ConnectionGene& c, Innovation v) { return c.innovation < v; });
  connections.insert(it, gene);
}

std::size_t Genome::enabled_connection_count() const {
  return static_cast<std::size_t>(std::count_if(
      connections.begin(), connections.end(), [](const ConnectionGene& c) { return c.enabled; }));
}

void validate(const Genome& genome) {
  for (std::size_t i = 1; i < genome.nodes.size(); ++i) {
    if (genome.nodes[i - 1].id >= genome.nodes[i].id)
      throw StructuralError("node ids not strictly increasing at id " +
                            std::to_string(genome.nodes[i].id));
  }
  for (std::size_t i = 1; i < genome.connections.size(); ++i) {
    if (genome.connections[i - 1].innovation >= genome.connections[i].innovation)
      throw StructuralError("connection innovations not strictly increasing at " +
                            std::to_string(genome.connections[i].innovation));
  }
  std::unordered_map<NodeId, std::vector<NodeId>> out_edges;
  std::unordered_map<NodeId, int> indegree;
  std::unordered_set<long long> pairs;
  for (const auto& c : genome.connections) {
    const NodeGene* src = genome.find_node(c.source);
    const NodeGene* dst = genome.find_node(c.target);
    if (src == nullptr || dst == nullptr)
      throw StructuralError("connection " + std::to_string(c.innovation) +
                            " references a missing node");
    if (dst->kind == NodeKind::input || dst->kind == NodeKind::bias)
      throw StructuralError("connection " + std::to_string(c.innovation) +
                            " targets an input or bias node");
    if (!pairs.insert((static_cast<long long>(c.source) << 32) | static_cast<unsigned>(c.target)).second)
      throw StructuralError("duplicate connection pair at innovation " +
                            std::to_string(c.innovation));
    out_edges[c.source].push_back(c.target);
    ++indegree[c.target];
  }
  // Kahn over the whole connection graph, enabled or not.
  std::vector<NodeId> ready;
  for (const auto& n : genome.nodes)
    if (indegree[n.id] == 0) ready.push_back(n.id);
  std::size_t visited = 0;
  while (!ready.empty()) {
    NodeId id = ready.back();
    ready.pop_back();
    ++visited;
    for (NodeId t : out_edges[id])
      if (--indegree[t] == 0) ready.push_back(t);
  }
  if (visited != genome.nodes.size()) throw StructuralError("connection graph contains a cycle");
}

}  // namespace pixelneat::neat
