#pragma once

#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "vpart/instance.hpp"

namespace vpart {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kFailed };

std::string_view to_string(LpStatus status);

struct SimplexOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;  // on reduced costs, relative to max |c|
  long max_iterations = 50'000'000;
  // Consecutive degenerate pivots before pricing switches from Dantzig to
  // Bland (lowest eligible index) until the next nondegenerate pivot.
  int degenerate_stall = 50;
};

struct DenseLpResult {
  LpStatus status = LpStatus::kFailed;
  double objective = 0.0;
  std::vector<double> x;
  long iterations = 0;
};

// Two-phase bounded-tableau primal simplex for small general LPs
// (min c'x, A x (sense) b, x >= 0). Dense O(m * n) storage.
DenseLpResult solve_dense(const GeneralProblem& prob,
                          const SimplexOptions& options = {});

struct TransportArc {
  int demand = 0;    // local demand index
  int supplier = 0;  // local supplier index
  double cost = 0.0;
};

// Primal network simplex for transportation LPs
//   min sum c_a x_a
//   s.t. sum_{a out of i} x_a >= demand_i,
//        sum_{a into j} x_a <= capacity_j   (infinite capacity = no row),
//        x >= 0,  c >= 0.
//
// Nodes are demands, suppliers and a root; each supplier drains into the
// root through an arc bounded by its capacity. The starting tree sends every
// demand to its cheapest uncapacitated supplier; demands without one get an
// artificial root arc and a phase-one solve removes it. The tree is kept
// strongly feasible (leaving arc = last blocking arc after the apex).
//
// The basis survives set_costs(), so re-solving after a cost change starts
// from the previous optimum.
class TransportSimplex {
 public:
  TransportSimplex(std::vector<double> demands, std::vector<double> capacities,
                   std::vector<TransportArc> arcs, SimplexOptions options = {});

  // Replaces transport arc costs (same order as construction).
  void set_costs(std::span<const double> costs);
  LpStatus solve();

  double objective() const;
  // Flow per transport arc, construction order.
  std::span<const double> flows() const {
    return std::span<const double>(flow_).first(num_transport_arcs_);
  }
  long iterations() const { return iterations_; }
  int num_demands() const { return num_demands_; }
  int num_suppliers() const { return num_suppliers_; }

 private:
  enum class ArcState : signed char { kLower, kUpper, kTree };

  int root() const { return num_demands_ + num_suppliers_; }
  int supplier_node(int j) const { return num_demands_ + j; }
  int supplier_arc(int j) const { return num_transport_arcs_ + j; }
  int artificial_arc(int i) const {
    return num_transport_arcs_ + num_suppliers_ + i;
  }

  void build_initial_tree();
  void rebuild_tree_order();
  LpStatus run_phase(std::span<const double> costs);
  int select_entering(std::span<const double> costs, double tol, bool bland) const;

  SimplexOptions options_;
  int num_demands_ = 0;
  int num_suppliers_ = 0;
  int num_transport_arcs_ = 0;
  int num_nodes_ = 0;

  std::vector<int> tail_;
  std::vector<int> head_;
  std::vector<double> upper_;
  std::vector<double> cost_;         // phase-two costs, all arcs
  std::vector<double> flow_;
  std::vector<ArcState> state_;
  std::vector<bool> eligible_;       // may enter the basis

  std::vector<int> parent_;
  std::vector<int> parent_arc_;
  std::vector<int> depth_;
  std::vector<double> potential_;
  std::vector<int> order_;           // root-first traversal order
  std::vector<int> child_start_;
  std::vector<int> child_list_;

  double demand_scale_ = 1.0;
  bool needs_phase_one_ = false;
  bool infeasible_ = false;
  long iterations_ = 0;
};

}  // namespace vpart
