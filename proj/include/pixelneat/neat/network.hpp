#pragma once

#include <span>
#include <vector>

#include "pixelneat/neat/genome.hpp"

namespace pixelneat::neat {

inline constexpr double kSigmoidSlope = 4.9;

double steepened_sigmoid(double x);

// Feedforward execution form of a genome. Immutable once built.
class Network {
 public:
  // Throws StructuralError if the enabled connections contain a cycle.
  explicit Network(const Genome& genome);

  std::vector<double> activate(std::span<const double> inputs) const;
  void activate(std::span<const double> inputs, std::span<double> outputs) const;

  int input_count() const { return inputs_; }
  int output_count() const { return outputs_; }
  std::size_t edge_count() const { return edges_.size(); }
  // Hidden and output node ids in evaluation order.
  const std::vector<NodeId>& evaluation_order() const { return order_; }

 private:
  struct Edge {
    int source_slot;
    double weight;
  };
  struct Unit {
    int slot;
    int first_edge;
    int edge_count;
  };

  int inputs_ = 0;
  int outputs_ = 0;
  int slot_count_ = 0;
  std::vector<NodeId> order_;
  std::vector<Unit> units_;
  std::vector<Edge> edges_;
};

}  // namespace pixelneat::neat
