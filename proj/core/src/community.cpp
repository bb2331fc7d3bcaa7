#include "vpart/community.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "vpart/instance_io.hpp"

namespace vpart {

Partition Partition::from_labels(std::span<const int> labels) {
  Partition p;
  const int n = static_cast<int>(labels.size());
  p.community_.assign(n, -1);
  std::map<int, int> renumber;  // label -> community id, first-seen order
  for (int v = 0; v < n; ++v) {
    auto [it, inserted] =
        renumber.try_emplace(labels[v], static_cast<int>(renumber.size()));
    if (inserted) p.members_.emplace_back();
    p.community_[v] = it->second;
    p.members_[it->second].push_back(v);
  }
  return p;
}

Partition Partition::singletons(int num_nodes) {
  std::vector<int> labels(num_nodes);
  for (int v = 0; v < num_nodes; ++v) labels[v] = v;
  return from_labels(labels);
}

Partition Partition::whole(int num_nodes) {
  return from_labels(std::vector<int>(num_nodes, 0));
}

double modularity(const WeightedGraph& graph, const Partition& partition) {
  if (partition.num_nodes() != graph.num_nodes()) {
    throw std::invalid_argument("partition covers " +
                                std::to_string(partition.num_nodes()) +
                                " nodes, graph has " +
                                std::to_string(graph.num_nodes()));
  }
  const double m = graph.total_weight();
  if (!(m > 0.0)) {
    throw std::domain_error("modularity undefined for edgeless graph");
  }
  const int b_count = partition.num_communities();
  std::vector<double> inside(b_count, 0.0);
  std::vector<double> degree(b_count, 0.0);
  for (const Edge& e : graph.edges()) {
    const int c = partition.community_of(e.u);
    if (c == partition.community_of(e.v)) inside[c] += 2.0 * e.weight;
  }
  for (int v = 0; v < graph.num_nodes(); ++v) {
    degree[partition.community_of(v)] += graph.degree(v);
  }
  const double two_m = 2.0 * m;
  double q = 0.0;
  for (int c = 0; c < b_count; ++c) {
    const double a = degree[c] / two_m;
    q += inside[c] / two_m - a * a;
  }
  return q;
}

namespace {

// Gains are ranked by 2m * W_ab - K_a * K_b, which equals 2m^2 * dQ and is
// exact in double arithmetic for integer weights of desk-scale graphs.
struct Candidate {
  double gain = 0.0;
  int a = 0;
  int b = 0;
};

struct CandidateOrder {
  bool operator()(const Candidate& x, const Candidate& y) const {
    if (x.gain != y.gain) return x.gain < y.gain;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  }
};

}  // namespace

Agglomeration greedy_agglomerate(const WeightedGraph& graph) {
  const int n = graph.num_nodes();
  if (n < 1) throw std::invalid_argument("graph must have at least one node");
  Agglomeration result;
  const double m = graph.total_weight();
  if (!(m > 0.0)) {
    result.partition = Partition::singletons(n);
    return result;
  }

  const double two_m = 2.0 * m;
  std::vector<double> degree(n);
  std::vector<std::unordered_map<int, double>> links(n);
  std::vector<int> label(n);
  std::vector<bool> alive(n, true);
  double q = 0.0;
  for (int v = 0; v < n; ++v) {
    label[v] = v;
    degree[v] = graph.degree(v);
    for (const Neighbor& nb : graph.neighbors(v)) links[v][nb.node] = nb.weight;
    const double a = degree[v] / two_m;
    q -= a * a;
  }
  result.trace.initial_q = q;

  auto gain_of = [&](int a, int b, double w) { return two_m * w - degree[a] * degree[b]; };

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap;
  for (const Edge& e : graph.edges()) heap.push({gain_of(e.u, e.v, e.weight), e.u, e.v});

  while (!heap.empty()) {
    const Candidate top = heap.top();
    heap.pop();
    if (!alive[top.a] || !alive[top.b]) continue;
    const auto link = links[top.a].find(top.b);
    if (link == links[top.a].end()) continue;
    if (gain_of(top.a, top.b, link->second) != top.gain) continue;  // stale
    if (!(top.gain > 0.0)) break;

    const int a = top.a;
    const int b = top.b;
    const double delta_q = top.gain / (two_m * m);

    links[a].erase(b);
    links[b].erase(a);
    if (links[a].size() < links[b].size()) std::swap(links[a], links[b]);
    for (const auto& [c, w] : links[b]) links[a][c] += w;
    links[b].clear();
    for (const auto& [c, w] : links[a]) {
      auto& back = links[c];
      back.erase(b);
      back[a] = w;
    }
    degree[a] += degree[b];
    degree[b] = 0.0;
    alive[b] = false;
    for (int v = 0; v < n; ++v) {
      if (label[v] == b) label[v] = a;
    }

    q += delta_q;
    result.trace.steps.push_back({a, b, delta_q, q});

    for (const auto& [c, w] : links[a]) {
      heap.push({gain_of(std::min(a, c), std::max(a, c), w), std::min(a, c),
                 std::max(a, c)});
    }
  }

  result.partition = Partition::from_labels(label);
  result.partition.set_cached_modularity(q);
  return result;
}

void write_partition(std::ostream& out, const Partition& partition) {
  for (int v = 0; v < partition.num_nodes(); ++v) {
    out << v << ' ' << partition.community_of(v) << '\n';
  }
}

Partition read_partition(std::istream& in) {
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    int node = 0;
    int community = 0;
    std::string extra;
    if (!(fields >> node >> community) || (fields >> extra)) {
      throw std::runtime_error("partition line " + std::to_string(line_no) +
                               ": expected 'node community'");
    }
    if (node != static_cast<int>(labels.size())) {
      throw std::runtime_error("partition line " + std::to_string(line_no) +
                               ": expected node " + std::to_string(labels.size()));
    }
    labels.push_back(community);
  }
  return Partition::from_labels(labels);
}

void write_merge_trace_csv(std::ostream& out, const MergeTrace& trace) {
  out << "step,a,b,delta_q,q\n";
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const Merge& mg = trace.steps[s];
    out << s + 1 << ',' << mg.a << ',' << mg.b << ',' << format_real(mg.delta_q)
        << ',' << format_real(mg.q) << '\n';
  }
}

}  // namespace vpart
