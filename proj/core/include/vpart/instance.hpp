#pragma once

#include <span>
#include <string>
#include <vector>

namespace vpart {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

double distance(const Point& a, const Point& b);

struct DemandLocation {
  int id = 0;
  Point position;
  double demand = 0.0;  // m_i
  bool operator==(const DemandLocation&) const = default;
};

struct SupplyLocation {
  int id = 0;
  Point position;
  double capacity = 0.0;  // s_j; ignored for the dummy
  bool is_dummy = false;
  bool operator==(const SupplyLocation&) const = default;
};

// One entry of J_i: a supplier reachable from a demand location and the
// per-unit cost w_ij of serving it.
struct AccessArc {
  int supplier = 0;
  double cost = 0.0;
  bool operator==(const AccessArc&) const = default;
};

// One entry of I_j together with the global index of the arc (i, j).
struct ServedDemand {
  int demand = 0;
  int arc = 0;
  bool operator==(const ServedDemand&) const = default;
};

// Transportation data for
//   min  sum w_ij x_ij
//   s.t. sum_{j in J_i} x_ij >= m_i   for every demand location i
//        sum_{i in I_j} x_ij <= s_j   for every non-dummy supplier j
//        x >= 0.
//
// Demand and supplier ids equal their positions in the respective lists.
// Access arcs are stored in CSR form ordered by (demand, supplier), which
// fixes a global arc index used by every solution vector in the library.
class TransportInstance {
 public:
  TransportInstance() = default;

  // Throws std::invalid_argument when ids do not match positions, when an
  // access list refers to an unknown supplier, or when `access` does not
  // have one list per demand. Semantic checks (costs, dummy access, ...)
  // belong to validate_instance().
  TransportInstance(std::vector<DemandLocation> demands,
                    std::vector<SupplyLocation> supplies,
                    const std::vector<std::vector<AccessArc>>& access,
                    double d_max, double dummy_cost);

  int num_demands() const { return static_cast<int>(demands_.size()); }
  // Includes the dummy supplier when present.
  int num_supplies() const { return static_cast<int>(supplies_.size()); }
  int num_real_supplies() const;
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  std::span<const DemandLocation> demands() const { return demands_; }
  std::span<const SupplyLocation> supplies() const { return supplies_; }
  const DemandLocation& demand(int i) const { return demands_[i]; }
  const SupplyLocation& supply(int j) const { return supplies_[j]; }

  // J_i, ascending by supplier id.
  std::span<const AccessArc> access(int i) const;
  int arc_begin(int i) const { return arc_offsets_[i]; }
  int arc_end(int i) const { return arc_offsets_[i + 1]; }
  const AccessArc& arc(int k) const { return arcs_[k]; }
  int arc_demand(int k) const { return arc_demand_[k]; }

  // I_j, ascending by demand id.
  std::span<const ServedDemand> served_by(int j) const;

  // Id of the first supplier flagged as dummy, or -1.
  int dummy_id() const { return dummy_id_; }
  bool is_dummy(int j) const { return supplies_[j].is_dummy; }

  double d_max() const { return d_max_; }
  double dummy_cost() const { return dummy_cost_; }

  // Mean of |J_i| over demand locations, dummy excluded.
  double average_access() const;
  double total_demand() const;

  bool operator==(const TransportInstance& other) const;

 private:
  std::vector<DemandLocation> demands_;
  std::vector<SupplyLocation> supplies_;
  std::vector<int> arc_offsets_{0};
  std::vector<AccessArc> arcs_;
  std::vector<int> arc_demand_;
  std::vector<int> served_offsets_{0};
  std::vector<ServedDemand> served_;
  int dummy_id_ = -1;
  double d_max_ = 0.0;
  double dummy_cost_ = 0.0;
};

struct Violation {
  std::string code;     // e.g. "negative-cost"
  std::string message;  // names the offending demand / supplier / pair
};

// Empty result means the instance satisfies every model invariant. Never
// throws.
std::vector<Violation> validate_instance(const TransportInstance& inst);

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct MatrixEntry {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// min c'x  s.t.  A x (sense) b,  x >= 0, with A given as sparse triplets.
struct GeneralProblem {
  int num_variables = 0;
  std::vector<double> objective;
  std::vector<MatrixEntry> entries;
  std::vector<double> rhs;
  std::vector<Sense> senses;

  int num_constraints() const { return static_cast<int>(rhs.size()); }
};

// Throws std::invalid_argument on out-of-range indices, size mismatches or
// non-finite data.
void check_problem(const GeneralProblem& prob);

// Variables follow the global arc order; rows are the demand constraints
// (one per demand, in id order) followed by the capacity constraints of the
// non-dummy suppliers (in id order).
GeneralProblem to_general_problem(const TransportInstance& inst);

// Demand location owning each variable of to_general_problem(inst).
std::vector<int> arc_demands(const TransportInstance& inst);

}  // namespace vpart
