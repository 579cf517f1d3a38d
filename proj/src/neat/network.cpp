#include "pixelneat/neat/network.hpp"

#include <cmath>
#include <queue>
#include <string>
#include <unordered_map>

#include "pixelneat/errors.hpp"

namespace pixelneat::neat {

double steepened_sigmoid(double x) { return 1.0 / (1.0 + std::exp(-kSigmoidSlope * x)); }

Network::Network(const Genome& genome) {
  std::unordered_map<NodeId, int> slot_of;
  std::vector<NodeId> computed;  // hidden + output ids, ascending
  for (const auto& n : genome.nodes) {
    if (n.kind == NodeKind::input) ++inputs_;
    if (n.kind == NodeKind::output) ++outputs_;
  }
  // Slots: inputs, bias, outputs, hidden. Node ids already follow that layout
  // for the fixed nodes; hidden ids are packed after the outputs.
  int next_hidden = inputs_ + 1 + outputs_;
  for (const auto& n : genome.nodes) {
    switch (n.kind) {
      case NodeKind::input:
      case NodeKind::bias:
      case NodeKind::output:
        slot_of[n.id] = n.id;
        break;
      case NodeKind::hidden:
        slot_of[n.id] = next_hidden++;
        break;
    }
    if (n.kind == NodeKind::hidden || n.kind == NodeKind::output) computed.push_back(n.id);
  }
  slot_count_ = next_hidden;

  std::unordered_map<NodeId, std::vector<Edge>> incoming;
  std::unordered_map<NodeId, std::vector<NodeId>> dependents;
  std::unordered_map<NodeId, int> pending;
  for (const auto& c : genome.connections) {
    if (!c.enabled) continue;
    auto src = slot_of.find(c.source);
    auto dst = slot_of.find(c.target);
    if (src == slot_of.end() || dst == slot_of.end())
      throw StructuralError("connection " + std::to_string(c.innovation) +
                            " references a missing node");
    incoming[c.target].push_back({src->second, c.weight});
    const NodeGene* s = genome.find_node(c.source);
    if (s->kind == NodeKind::hidden || s->kind == NodeKind::output) {
      dependents[c.source].push_back(c.target);
      ++pending[c.target];
    }
  }

  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId id : computed)
    if (pending[id] == 0) ready.push(id);
  while (!ready.empty()) {
    NodeId id = ready.top();
    ready.pop();
    order_.push_back(id);
    const auto& in = incoming[id];
    units_.push_back({slot_of[id], static_cast<int>(edges_.size()), static_cast<int>(in.size())});
    edges_.insert(edges_.end(), in.begin(), in.end());
    for (NodeId t : dependents[id])
      if (--pending[t] == 0) ready.push(t);
  }
  if (order_.size() != computed.size())
    throw StructuralError("enabled connections contain a cycle");
}

std::vector<double> Network::activate(std::span<const double> inputs) const {
  std::vector<double> out(static_cast<std::size_t>(outputs_));
  activate(inputs, out);
  return out;
}

void Network::activate(std::span<const double> inputs, std::span<double> outputs) const {
  if (inputs.size() != static_cast<std::size_t>(inputs_))
    throw ContractViolation("network expects " + std::to_string(inputs_) + " inputs, got " +
                            std::to_string(inputs.size()));
  if (outputs.size() != static_cast<std::size_t>(outputs_))
    throw ContractViolation("network produces " + std::to_string(outputs_) + " outputs");
  std::vector<double> values(static_cast<std::size_t>(slot_count_), 0.0);
  std::copy(inputs.begin(), inputs.end(), values.begin());
  values[static_cast<std::size_t>(inputs_)] = 1.0;
  for (const Unit& u : units_) {
    double sum = 0.0;
    for (int e = u.first_edge; e < u.first_edge + u.edge_count; ++e)
      sum += edges_[static_cast<std::size_t>(e)].weight *
             values[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].source_slot)];
    values[static_cast<std::size_t>(u.slot)] = steepened_sigmoid(sum);
  }
  for (int i = 0; i < outputs_; ++i)
    outputs[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(inputs_ + 1 + i)];
}

}  // namespace pixelneat::neat
