#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "vpart/instance.hpp"

namespace vpart {

struct Edge {
  int u = 0;  // u < v
  int v = 0;
  double weight = 0.0;
  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  int node = 0;
  double weight = 0.0;
  bool operator==(const Neighbor&) const = default;
};

// Undirected weighted graph without self-loops. Edges are kept in ascending
// (min id, max id) order; adjacency lists are ascending by neighbor id.
// Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Edges may be given in any orientation and order; parallel edges are
  // summed. Throws std::invalid_argument on self-loops, out-of-range nodes
  // or non-positive / non-finite weights.
  WeightedGraph(int num_nodes, std::vector<Edge> edges);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(int v) const;

  // k_v
  double degree(int v) const { return degree_[v]; }
  // m = (1/2) sum_{v,w} C_vw
  double total_weight() const { return total_weight_; }
  // C_vw, zero when not adjacent or v == w.
  double weight(int v, int w) const;

  bool operator==(const WeightedGraph& other) const {
    return num_nodes_ == other.num_nodes_ && edges_ == other.edges_;
  }

 private:
  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<double> degree_;
  double total_weight_ = 0.0;
};

// Co-occurrence graph over `num_units` nodes: C_uv is the number of groups
// containing both u and v. Repeated members inside one group count once.
WeightedGraph cooccurrence_graph(int num_units,
                                 const std::vector<std::vector<int>>& groups);

// One node per demand location; edge weight |J_u ∩ J_v| over non-dummy
// suppliers.
WeightedGraph build_demand_graph(const TransportInstance& inst);

// One node per variable: C = Ã'Ã with the diagonal removed, where
// Ã_cj = 1 iff A_cj != 0.
WeightedGraph build_cooccurrence_graph(const GeneralProblem& prob);

// Same, with variables grouped into units (unit_of_variable[j] in
// [0, num_units)); a unit appears in a constraint when any of its
// variables does.
WeightedGraph build_cooccurrence_graph(const GeneralProblem& prob,
                                       std::span<const int> unit_of_variable,
                                       int num_units);

// "u v weight" per line, 0-indexed, ascending edge order.
void write_edge_list(std::ostream& out, const WeightedGraph& graph);

}  // namespace vpart
