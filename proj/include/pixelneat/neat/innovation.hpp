#pragma once

#include <map>
#include <utility>

#include "pixelneat/neat/genome.hpp"

namespace pixelneat::neat {

// Hands out innovation numbers and hidden-node ids. Identical structural
// events inside one generation receive identical numbers; the lookup tables
// are cleared by new_generation() while the counters keep running.
class InnovationRegistry {
 public:
  struct Split {
    NodeId node = 0;
    Innovation incoming = 0;  // source -> node
    Innovation outgoing = 0;  // node -> target
  };

  InnovationRegistry() = default;
  InnovationRegistry(Innovation next_innovation, NodeId next_node_id)
      : next_innovation_(next_innovation), next_node_id_(next_node_id) {}

  static InnovationRegistry for_topology(Topology topology) {
    return InnovationRegistry(1, topology.first_hidden_id());
  }

  Innovation connection(NodeId source, NodeId target);
  Split split(const ConnectionGene& gene);
  void new_generation();

  Innovation next_innovation() const { return next_innovation_; }
  NodeId next_node_id() const { return next_node_id_; }

 private:
  Innovation next_innovation_ = 1;
  NodeId next_node_id_ = 0;
  std::map<std::pair<NodeId, NodeId>, Innovation> connections_;
  std::map<Innovation, Split> splits_;
};

}  // namespace pixelneat::neat
