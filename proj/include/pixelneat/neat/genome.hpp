#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pixelneat::neat {

using NodeId = int;
using Innovation = int;
using Rng = std::mt19937_64;

enum class NodeKind { input, bias, hidden, output };
enum class Activation { steepened_sigmoid };

const char* to_string(NodeKind kind);
NodeKind node_kind_from_string(const char* text);

struct NodeGene {
  NodeId id = 0;
  NodeKind kind = NodeKind::hidden;
  Activation activation = Activation::steepened_sigmoid;

  friend bool operator==(const NodeGene&, const NodeGene&) = default;
};

struct ConnectionGene {
  NodeId source = 0;
  NodeId target = 0;
  double weight = 0.0;
  bool enabled = true;
  Innovation innovation = 0;

  friend bool operator==(const ConnectionGene&, const ConnectionGene&) = default;
};

// Fixed input/output layout. Ids: inputs [0, inputs), bias = inputs,
// outputs [inputs + 1, inputs + 1 + outputs), hidden nodes after that.
struct Topology {
  int inputs = 0;
  int outputs = 0;

  NodeId bias_id() const { return inputs; }
  NodeId output_id(int index) const { return inputs + 1 + index; }
  NodeId first_hidden_id() const { return inputs + 1 + outputs; }

  friend bool operator==(const Topology&, const Topology&) = default;
};

// 40x30 RGB pixels in, one score per action out.
inline constexpr Topology kGameTopology{3600, 14};

struct Genome {
  std::vector<NodeGene> nodes;               // sorted by id
  std::vector<ConnectionGene> connections;   // sorted by innovation
  double fitness = 0.0;

  // Inputs, bias and outputs only; no connections.
  static Genome minimal(Topology topology);

  Topology topology() const;
  const NodeGene* find_node(NodeId id) const;
  bool has_node(NodeId id) const { return find_node(id) != nullptr; }
  bool has_connection(NodeId source, NodeId target) const;

  void insert_node(NodeGene node);
  void insert_connection(ConnectionGene gene);

  std::size_t enabled_connection_count() const;

  friend bool operator==(const Genome&, const Genome&) = default;
};

// Throws StructuralError describing the first violated invariant: dangling
// node reference, duplicate ids or innovations, unsorted genes, a connection
// into an input/bias node, or a cycle among all (enabled or not) connections.
void validate(const Genome& genome);

}  // namespace pixelneat::neat
