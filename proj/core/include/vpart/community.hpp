#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "vpart/graph.hpp"

namespace vpart {

// Disjoint cover of nodes 0..n-1 by non-empty communities. Communities are
// numbered 0..B-1 in ascending order of their smallest member, so two
// partitions with the same blocks compare equal regardless of labels.
class Partition {
 public:
  Partition() = default;

  // Any integer labels; equal labels mean the same community.
  static Partition from_labels(std::span<const int> labels);
  static Partition singletons(int num_nodes);
  static Partition whole(int num_nodes);

  int num_nodes() const { return static_cast<int>(community_.size()); }
  int num_communities() const { return static_cast<int>(members_.size()); }
  int community_of(int v) const { return community_[v]; }
  std::span<const int> labels() const { return community_; }
  // I_b, ascending.
  std::span<const int> members(int b) const { return members_[b]; }

  // Modularity recorded by whoever produced the partition (greedy
  // agglomeration sets it); recompute with modularity() to check.
  std::optional<double> cached_modularity() const { return cached_q_; }
  void set_cached_modularity(double q) { cached_q_ = q; }

  bool operator==(const Partition& other) const {
    return community_ == other.community_;
  }

 private:
  std::vector<int> community_;
  std::vector<std::vector<int>> members_;
  std::optional<double> cached_q_;
};

// Q = (1/2m) sum_{v,w} (C_vw - k_v k_w / 2m) delta(c_v, c_w), summed over
// ordered pairs including v == w. Throws std::invalid_argument when the
// partition size differs from the graph and std::domain_error when m == 0.
double modularity(const WeightedGraph& graph, const Partition& partition);

struct Merge {
  int a = 0;  // surviving community (smaller id)
  int b = 0;  // absorbed community
  double delta_q = 0.0;
  double q = 0.0;  // modularity after the merge
};

struct MergeTrace {
  double initial_q = 0.0;  // all-singleton modularity (0 for edgeless graphs)
  std::vector<Merge> steps;
};

struct Agglomeration {
  Partition partition;
  MergeTrace trace;
};

// Greedy agglomerative modularity maximization. Starts from singletons and
// repeatedly merges the edge-connected community pair with the largest
// modularity gain, stopping when no merge has a strictly positive gain.
// Ties go to the lexicographically smallest (min id, max id) pair, where a
// community's id is its smallest node. Edgeless graphs return singletons
// with an empty trace.
Agglomeration greedy_agglomerate(const WeightedGraph& graph);

// "node community" per line.
void write_partition(std::ostream& out, const Partition& partition);
Partition read_partition(std::istream& in);
// CSV: step,a,b,delta_q,q
void write_merge_trace_csv(std::ostream& out, const MergeTrace& trace);

}  // namespace vpart
