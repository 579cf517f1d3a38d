#include "pixelneat/neat/innovation.hpp"

namespace pixelneat::neat {

Innovation InnovationRegistry::connection(NodeId source, NodeId target) {
  auto [it, inserted] = connections_.try_emplace({source, target}, next_innovation_);
  if (inserted) ++next_innovation_;
  return it->second;
}

InnovationRegistry::Split InnovationRegistry::split(const ConnectionGene& gene) {
  if (auto it = splits_.find(gene.innovation); it != splits_.end()) return it->second;
  Split s;
  s.node = next_node_id_++;
  s.incoming = next_innovation_++;
  s.outgoing = next_innovation_++;
  connections_[{gene.source, s.node}] = s.incoming;
  connections_[{s.node, gene.target}] = s.outgoing;
  splits_.emplace(gene.innovation, s);
  return s;
}

void InnovationRegistry::new_generation() {
  connections_.clear();
  splits_.clear();
}

}  // namespace pixelneat::neat
