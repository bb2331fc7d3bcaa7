#include "vpart/graph.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "vpart/instance_io.hpp"

namespace vpart {

WeightedGraph::WeightedGraph(int num_nodes, std::vector<Edge> edges)
    : num_nodes_(num_nodes) {
  if (num_nodes < 0) throw std::invalid_argument("negative node count");
  for (Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= num_nodes || e.v >= num_nodes) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ") out of range");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
    }
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw std::invalid_argument("edge weight must be positive and finite");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (const Edge& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      edges_.back().weight += e.weight;
    } else {
      edges_.push_back(e);
    }
  }

  std::vector<int> counts(num_nodes + 1, 0);
  for (const Edge& e : edges_) {
    ++counts[e.u + 1];
    ++counts[e.v + 1];
  }
  offsets_.assign(num_nodes + 1, 0);
  for (int v = 0; v < num_nodes; ++v) offsets_[v + 1] = offsets_[v] + counts[v + 1];
  adjacency_.resize(2 * edges_.size());
  std::vector<int> cursor(offsets_.begin(), offsets_.end() - 1);
  // Visiting edges in (u, v) order fills each list in ascending neighbor
  // order: for node x, neighbors w < x arrive as (w, x) before any (x, w').
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.weight};
    adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }

  degree_.assign(num_nodes, 0.0);
  double twice_m = 0.0;
  for (int v = 0; v < num_nodes; ++v) {
    for (const Neighbor& n : neighbors(v)) degree_[v] += n.weight;
    twice_m += degree_[v];
  }
  total_weight_ = 0.5 * twice_m;
}

std::span<const Neighbor> WeightedGraph::neighbors(int v) const {
  return std::span<const Neighbor>(adjacency_).subspan(
      offsets_[v], offsets_[v + 1] - offsets_[v]);
}

double WeightedGraph::weight(int v, int w) const {
  if (v == w) return 0.0;
  const auto row = neighbors(v);
  auto it = std::lower_bound(row.begin(), row.end(), w,
                             [](const Neighbor& n, int key) { return n.node < key; });
  return (it != row.end() && it->node == w) ? it->weight : 0.0;
}

WeightedGraph cooccurrence_graph(int num_units,
                                 const std::vector<std::vector<int>>& groups) {
  // Deduplicated membership, then per-unit incidence lists.
  std::vector<std::vector<int>> members(groups.size());
  std::vector<std::vector<int>> groups_of(num_units);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    members[g] = groups[g];
    std::sort(members[g].begin(), members[g].end());
    members[g].erase(std::unique(members[g].begin(), members[g].end()),
                     members[g].end());
    for (int u : members[g]) {
      if (u < 0 || u >= num_units) {
        throw std::invalid_argument("unit id " + std::to_string(u) + " out of range");
      }
      groups_of[u].push_back(static_cast<int>(g));
    }
  }

  std::vector<Edge> edges;
  std::vector<double> count(num_units, 0.0);
  std::vector<int> touched;
  for (int u = 0; u < num_units; ++u) {
    for (int g : groups_of[u]) {
      const auto& row = members[g];
      for (auto it = std::upper_bound(row.begin(), row.end(), u); it != row.end(); ++it) {
        if (count[*it] == 0.0) touched.push_back(*it);
        count[*it] += 1.0;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int v : touched) {
      edges.push_back({u, v, count[v]});
      count[v] = 0.0;
    }
    touched.clear();
  }
  return WeightedGraph(num_units, std::move(edges));
}

WeightedGraph build_demand_graph(const TransportInstance& inst) {
  std::vector<std::vector<int>> groups;
  for (int j = 0; j < inst.num_supplies(); ++j) {
    if (inst.is_dummy(j)) continue;
    std::vector<int> group;
    for (const ServedDemand& sd : inst.served_by(j)) group.push_back(sd.demand);
    if (group.size() >= 2) groups.push_back(std::move(group));
  }
  return cooccurrence_graph(inst.num_demands(), groups);
}

WeightedGraph build_cooccurrence_graph(const GeneralProblem& prob) {
  std::vector<int> identity(prob.num_variables);
  for (int j = 0; j < prob.num_variables; ++j) identity[j] = j;
  return build_cooccurrence_graph(prob, identity, prob.num_variables);
}

WeightedGraph build_cooccurrence_graph(const GeneralProblem& prob,
                                       std::span<const int> unit_of_variable,
                                       int num_units) {
  check_problem(prob);
  if (static_cast<int>(unit_of_variable.size()) != prob.num_variables) {
    throw std::invalid_argument("unit map size does not match variable count");
  }
  std::vector<std::vector<int>> groups(prob.num_constraints());
  for (const MatrixEntry& e : prob.entries) {
    if (e.value != 0.0) groups[e.row].push_back(unit_of_variable[e.col]);
  }
  return cooccurrence_graph(num_units, groups);
}

void write_edge_list(std::ostream& out, const WeightedGraph& graph) {
  for (const Edge& e : graph.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_real(e.weight) << '\n';
  }
}

}  // namespace vpart
