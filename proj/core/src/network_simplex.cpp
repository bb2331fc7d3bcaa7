#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vpart/simplex.hpp"

namespace vpart {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kFailed:
      return "failed";
  }
  return "unknown";
}

TransportSimplex::TransportSimplex(std::vector<double> demands,
                                   std::vector<double> capacities,
                                   std::vector<TransportArc> arcs,
                                   SimplexOptions options)
    : options_(options),
      num_demands_(static_cast<int>(demands.size())),
      num_suppliers_(static_cast<int>(capacities.size())),
      num_transport_arcs_(static_cast<int>(arcs.size())) {
  for (double m : demands) {
    if (!std::isfinite(m) || m < 0.0) {
      throw std::invalid_argument("demands must be finite and nonnegative");
    }
    demand_scale_ = std::max(demand_scale_, m);
  }
  for (double s : capacities) {
    if (std::isnan(s) || s < 0.0) {
      throw std::invalid_argument("capacities must be nonnegative");
    }
  }
  num_nodes_ = num_demands_ + num_suppliers_ + 1;
  const int total_arcs = num_transport_arcs_ + num_suppliers_ + num_demands_;
  tail_.resize(total_arcs);
  head_.resize(total_arcs);
  upper_.resize(total_arcs);
  cost_.assign(total_arcs, 0.0);
  flow_.assign(total_arcs, 0.0);
  state_.assign(total_arcs, ArcState::kLower);
  eligible_.assign(total_arcs, false);

  for (int a = 0; a < num_transport_arcs_; ++a) {
    const TransportArc& arc = arcs[a];
    if (arc.demand < 0 || arc.demand >= num_demands_ || arc.supplier < 0 ||
        arc.supplier >= num_suppliers_) {
      throw std::invalid_argument("transport arc " + std::to_string(a) +
                                  " has an endpoint out of range");
    }
    if (!std::isfinite(arc.cost)) {
      throw std::invalid_argument("transport arc cost must be finite");
    }
    tail_[a] = arc.demand;
    head_[a] = supplier_node(arc.supplier);
    upper_[a] = kInf;
    cost_[a] = arc.cost;
    eligible_[a] = demands[arc.demand] > 0.0 && capacities[arc.supplier] > 0.0;
  }
  for (int j = 0; j < num_suppliers_; ++j) {
    const int a = supplier_arc(j);
    tail_[a] = supplier_node(j);
    head_[a] = root();
    upper_[a] = capacities[j];
    eligible_[a] = capacities[j] > 0.0;
  }
  for (int i = 0; i < num_demands_; ++i) {
    const int a = artificial_arc(i);
    tail_[a] = i;
    head_[a] = root();
    upper_[a] = kInf;
  }

  parent_.assign(num_nodes_, -1);
  parent_arc_.assign(num_nodes_, -1);
  depth_.assign(num_nodes_, 0);
  potential_.assign(num_nodes_, 0.0);

  // Supplier nodes hang off the root; demands hang off their cheapest
  // uncapacitated supplier, or off the root through an artificial arc.
  for (int j = 0; j < num_suppliers_; ++j) {
    const int a = supplier_arc(j);
    parent_[supplier_node(j)] = root();
    parent_arc_[supplier_node(j)] = a;
    state_[a] = ArcState::kTree;
  }
  std::vector<int> best(num_demands_, -1);
  for (int a = 0; a < num_transport_arcs_; ++a) {
    const int i = tail_[a];
    const int j = head_[a] - num_demands_;
    if (!std::isinf(capacities[j])) continue;
    if (best[i] < 0 || cost_[a] < cost_[best[i]]) best[i] = a;
  }
  for (int i = 0; i < num_demands_; ++i) {
    if (best[i] >= 0) {
      const int a = best[i];
      parent_[i] = head_[a];
      parent_arc_[i] = a;
      state_[a] = ArcState::kTree;
      flow_[a] = demands[i];
      flow_[supplier_arc(head_[a] - num_demands_)] += demands[i];
    } else {
      const int a = artificial_arc(i);
      parent_[i] = root();
      parent_arc_[i] = a;
      state_[a] = ArcState::kTree;
      flow_[a] = demands[i];
      if (demands[i] > 0.0) needs_phase_one_ = true;
    }
  }
  order_.reserve(num_nodes_);
  child_start_.assign(num_nodes_ + 1, 0);
  child_list_.assign(num_nodes_, 0);
}

void TransportSimplex::set_costs(std::span<const double> costs) {
  if (static_cast<int>(costs.size()) != num_transport_arcs_) {
    throw std::invalid_argument("cost vector size does not match arc count");
  }
  for (int a = 0; a < num_transport_arcs_; ++a) {
    if (!std::isfinite(costs[a])) {
      throw std::invalid_argument("transport arc cost must be finite");
    }
    cost_[a] = costs[a];
  }
}

double TransportSimplex::objective() const {
  double total = 0.0;
  for (int a = 0; a < num_transport_arcs_; ++a) total += cost_[a] * flow_[a];
  return total;
}

void TransportSimplex::rebuild_tree_order() {
  std::fill(child_start_.begin(), child_start_.end(), 0);
  for (int v = 0; v < num_nodes_; ++v) {
    if (parent_[v] >= 0) ++child_start_[parent_[v] + 1];
  }
  for (int v = 0; v < num_nodes_; ++v) child_start_[v + 1] += child_start_[v];
  {
    std::vector<int>& cursor = depth_;  // reused as scratch, rebuilt below
    std::copy(child_start_.begin(), child_start_.end() - 1, cursor.begin());
    for (int v = 0; v < num_nodes_; ++v) {
      if (parent_[v] >= 0) child_list_[cursor[parent_[v]]++] = v;
    }
  }
  order_.clear();
  order_.push_back(root());
  depth_[root()] = 0;
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const int u = order_[head];
    for (int c = child_start_[u]; c < child_start_[u + 1]; ++c) {
      order_.push_back(child_list_[c]);
    }
  }
  if (static_cast<int>(order_.size()) != num_nodes_) {
    throw std::logic_error("network simplex basis is not a spanning tree");
  }
}

int TransportSimplex::select_entering(std::span<const double> costs, double tol,
                                      bool bland) const {
  int best = -1;
  double best_violation = 0.0;
  const int total_arcs = static_cast<int>(tail_.size());
  for (int a = 0; a < total_arcs; ++a) {
    if (!eligible_[a] || state_[a] == ArcState::kTree) continue;
    const double rc = costs[a] - potential_[tail_[a]] + potential_[head_[a]];
    double violation = 0.0;
    if (state_[a] == ArcState::kLower) {
      if (rc < -tol) violation = -rc;
    } else if (rc > tol) {
      violation = rc;
    }
    if (violation > best_violation) {
      best = a;
      best_violation = violation;
      if (bland) break;
    }
  }
  return best;
}

LpStatus TransportSimplex::run_phase(std::span<const double> costs) {
  double scale = 1.0;
  for (double c : costs) scale = std::max(scale, std::abs(c));
  const double tol = options_.optimality_tol * scale;

  int degenerate_run = 0;
  std::vector<int> k_side;
  std::vector<int> l_side;
  while (true) {
    rebuild_tree_order();
    for (std::size_t n = 1; n < order_.size(); ++n) {
      const int v = order_[n];
      const int p = parent_[v];
      const int a = parent_arc_[v];
      depth_[v] = depth_[p] + 1;
      potential_[v] = tail_[a] == v ? costs[a] + potential_[p]
                                    : potential_[p] - costs[a];
    }

    const bool bland = degenerate_run >= options_.degenerate_stall;
    const int entering = select_entering(costs, tol, bland);
    if (entering < 0) return LpStatus::kOptimal;
    if (++iterations_ > options_.max_iterations) return LpStatus::kFailed;

    // Flow is pushed from k to l across the entering arc and returns
    // through the tree.
    const bool increase = state_[entering] == ArcState::kLower;
    const int k = increase ? tail_[entering] : head_[entering];
    const int l = increase ? head_[entering] : tail_[entering];

    int u = k;
    int v = l;
    while (u != v) {
      if (depth_[u] > depth_[v]) {
        u = parent_[u];
      } else if (depth_[v] > depth_[u]) {
        v = parent_[v];
      } else {
        u = parent_[u];
        v = parent_[v];
      }
    }
    const int apex = u;
    k_side.clear();
    l_side.clear();
    for (int x = k; x != apex; x = parent_[x]) k_side.push_back(x);
    for (int x = l; x != apex; x = parent_[x]) l_side.push_back(x);

    // Traversal order from the apex: down to k, across, up from l. The last
    // arc attaining the minimum residual leaves.
    auto down_forward = [&](int x) { return tail_[parent_arc_[x]] == parent_[x]; };
    auto up_forward = [&](int x) { return tail_[parent_arc_[x]] == x; };
    auto residual = [&](int a, bool forward) {
      return forward ? upper_[a] - flow_[a] : flow_[a];
    };

    double delta = kInf;
    int leave_node = -1;     // child endpoint of the leaving tree arc
    bool leave_on_k = false;
    bool leave_forward = false;
    for (auto it = k_side.rbegin(); it != k_side.rend(); ++it) {
      const bool fwd = down_forward(*it);
      const double r = residual(parent_arc_[*it], fwd);
      if (r <= delta) {
        delta = r;
        leave_node = *it;
        leave_on_k = true;
        leave_forward = fwd;
      }
    }
    {
      const double r = residual(entering, increase);
      if (r <= delta) {
        delta = r;
        leave_node = -1;
      }
    }
    for (int x : l_side) {
      const bool fwd = up_forward(x);
      const double r = residual(parent_arc_[x], fwd);
      if (r <= delta) {
        delta = r;
        leave_node = x;
        leave_on_k = false;
        leave_forward = fwd;
      }
    }
    if (std::isinf(delta)) return LpStatus::kUnbounded;

    if (delta > 0.0) {
      for (int x : k_side) {
        flow_[parent_arc_[x]] += down_forward(x) ? delta : -delta;
      }
      for (int x : l_side) {
        flow_[parent_arc_[x]] += up_forward(x) ? delta : -delta;
      }
      flow_[entering] += increase ? delta : -delta;
      degenerate_run = 0;
    } else {
      ++degenerate_run;
    }

    if (leave_node < 0) {
      state_[entering] = increase ? ArcState::kUpper : ArcState::kLower;
      flow_[entering] = increase ? upper_[entering] : 0.0;
      continue;
    }

    const int leaving = parent_arc_[leave_node];
    state_[leaving] = leave_forward ? ArcState::kUpper : ArcState::kLower;
    flow_[leaving] = leave_forward ? upper_[leaving] : 0.0;
    state_[entering] = ArcState::kTree;

    // Re-hang the subtree cut off below the leaving arc from the entering
    // endpoint that lies inside it.
    int x = leave_on_k ? k : l;
    int new_parent = leave_on_k ? l : k;
    int new_arc = entering;
    while (true) {
      const int old_parent = parent_[x];
      const int old_arc = parent_arc_[x];
      parent_[x] = new_parent;
      parent_arc_[x] = new_arc;
      if (x == leave_node) break;
      new_parent = x;
      new_arc = old_arc;
      x = old_parent;
    }
  }
}

LpStatus TransportSimplex::solve() {
  if (infeasible_) return LpStatus::kInfeasible;
  if (needs_phase_one_) {
    std::vector<double> phase_one(tail_.size(), 0.0);
    for (int i = 0; i < num_demands_; ++i) phase_one[artificial_arc(i)] = 1.0;
    const LpStatus status = run_phase(phase_one);
    if (status != LpStatus::kOptimal) return status;
    double artificial = 0.0;
    for (int i = 0; i < num_demands_; ++i) artificial += flow_[artificial_arc(i)];
    needs_phase_one_ = false;
    if (artificial > options_.feasibility_tol * demand_scale_) {
      infeasible_ = true;
      return LpStatus::kInfeasible;
    }
    for (int i = 0; i < num_demands_; ++i) {
      upper_[artificial_arc(i)] = 0.0;
      flow_[artificial_arc(i)] = 0.0;
    }
  }
  const LpStatus status = run_phase(cost_);
  if (status == LpStatus::kOptimal) {
    for (double& f : flow_) {
      if (f < 0.0 && f > -options_.feasibility_tol) f = 0.0;
    }
  }
  return status;
}

}  // namespace vpart
