#include "vpart/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vpart {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

TransportInstance::TransportInstance(
    std::vector<DemandLocation> demands, std::vector<SupplyLocation> supplies,
    const std::vector<std::vector<AccessArc>>& access, double d_max,
    double dummy_cost)
    : demands_(std::move(demands)),
      supplies_(std::move(supplies)),
      d_max_(d_max),
      dummy_cost_(dummy_cost) {
  if (access.size() != demands_.size()) {
    throw std::invalid_argument("access lists (" +
                                std::to_string(access.size()) +
                                ") do not match demand count (" +
                                std::to_string(demands_.size()) + ")");
  }
  for (std::size_t i = 0; i < demands_.size(); ++i) {
    if (demands_[i].id != static_cast<int>(i)) {
      throw std::invalid_argument("demand at position " + std::to_string(i) +
                                  " has id " +
                                  std::to_string(demands_[i].id));
    }
  }
  for (std::size_t j = 0; j < supplies_.size(); ++j) {
    if (supplies_[j].id != static_cast<int>(j)) {
      throw std::invalid_argument("supplier at position " + std::to_string(j) +
                                  " has id " +
                                  std::to_string(supplies_[j].id));
    }
    if (supplies_[j].is_dummy && dummy_id_ < 0) dummy_id_ = static_cast<int>(j);
  }

  const int n_supply = num_supplies();
  arc_offsets_.reserve(demands_.size() + 1);
  for (std::size_t i = 0; i < access.size(); ++i) {
    std::vector<AccessArc> row = access[i];
    for (const AccessArc& a : row) {
      if (a.supplier < 0 || a.supplier >= n_supply) {
        throw std::invalid_argument("demand " + std::to_string(i) +
                                    " refers to unknown supplier " +
                                    std::to_string(a.supplier));
      }
    }
    std::stable_sort(row.begin(), row.end(),
                     [](const AccessArc& a, const AccessArc& b) {
                       return a.supplier < b.supplier;
                     });
    for (const AccessArc& a : row) {
      arcs_.push_back(a);
      arc_demand_.push_back(static_cast<int>(i));
    }
    arc_offsets_.push_back(static_cast<int>(arcs_.size()));
  }

  // Reverse map I_j by counting sort; demand order is preserved because arcs
  // are visited in ascending demand order.
  std::vector<int> counts(n_supply + 1, 0);
  for (const AccessArc& a : arcs_) ++counts[a.supplier + 1];
  served_offsets_.assign(n_supply + 1, 0);
  for (int j = 0; j < n_supply; ++j) {
    served_offsets_[j + 1] = served_offsets_[j] + counts[j + 1];
  }
  served_.resize(arcs_.size());
  std::vector<int> cursor(served_offsets_.begin(), served_offsets_.end() - 1);
  for (int k = 0; k < num_arcs(); ++k) {
    served_[cursor[arcs_[k].supplier]++] = {arc_demand_[k], k};
  }
}

int TransportInstance::num_real_supplies() const {
  return static_cast<int>(
      std::count_if(supplies_.begin(), supplies_.end(),
                    [](const SupplyLocation& s) { return !s.is_dummy; }));
}

std::span<const AccessArc> TransportInstance::access(int i) const {
  return std::span<const AccessArc>(arcs_).subspan(
      arc_offsets_[i], arc_offsets_[i + 1] - arc_offsets_[i]);
}

std::span<const ServedDemand> TransportInstance::served_by(int j) const {
  return std::span<const ServedDemand>(served_).subspan(
      served_offsets_[j], served_offsets_[j + 1] - served_offsets_[j]);
}

double TransportInstance::average_access() const {
  if (demands_.empty()) return 0.0;
  long count = 0;
  for (const AccessArc& a : arcs_) {
    if (!supplies_[a.supplier].is_dummy) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(demands_.size());
}

double TransportInstance::total_demand() const {
  double total = 0.0;
  for (const DemandLocation& d : demands_) total += d.demand;
  return total;
}

bool TransportInstance::operator==(const TransportInstance& other) const {
  return demands_ == other.demands_ && supplies_ == other.supplies_ &&
         arc_offsets_ == other.arc_offsets_ && arcs_ == other.arcs_ &&
         d_max_ == other.d_max_ && dummy_cost_ == other.dummy_cost_;
}

std::vector<Violation> validate_instance(const TransportInstance& inst) {
  std::vector<Violation> out;
  auto report = [&out](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };

  int dummies = 0;
  for (const SupplyLocation& s : inst.supplies()) {
    if (s.is_dummy) {
      ++dummies;
    } else if (!(s.capacity >= 0.0)) {
      report("negative-capacity",
             "supplier " + std::to_string(s.id) + " has capacity " +
                 std::to_string(s.capacity));
    }
  }
  if (dummies == 0) report("no-dummy", "instance has no dummy supplier");
  if (dummies > 1) {
    report("multiple-dummies",
           "instance has " + std::to_string(dummies) + " dummy suppliers");
  }

  const int dummy = inst.dummy_id();
  for (const DemandLocation& d : inst.demands()) {
    const std::string name = "demand " + std::to_string(d.id);
    if (!(d.demand >= 0.0)) {
      report("negative-demand", name + " has demand " + std::to_string(d.demand));
    }
    const auto row = inst.access(d.id);
    if (row.empty()) report("empty-access", name + " has an empty access set");
    bool reaches_dummy = false;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const AccessArc& a = row[k];
      const std::string pair =
          "(" + std::to_string(d.id) + ", " + std::to_string(a.supplier) + ")";
      if (k > 0 && row[k - 1].supplier == a.supplier) {
        report("duplicate-access", "pair " + pair + " appears more than once");
      }
      if (!std::isfinite(a.cost) || a.cost < 0.0) {
        report("negative-cost",
               "pair " + pair + " has cost " + std::to_string(a.cost));
      }
      if (a.supplier == dummy) {
        reaches_dummy = true;
        if (a.cost != inst.dummy_cost()) {
          report("dummy-cost-mismatch",
                 "pair " + pair + " has cost " + std::to_string(a.cost) +
                     " but dummy cost is " + std::to_string(inst.dummy_cost()));
        }
      }
    }
    if (dummy >= 0 && !reaches_dummy) {
      report("missing-dummy-access", name + " cannot reach the dummy supplier");
    }
  }
  return out;
}

void check_problem(const GeneralProblem& prob) {
  if (prob.num_variables < 0) {
    throw std::invalid_argument("negative variable count");
  }
  if (static_cast<int>(prob.objective.size()) != prob.num_variables) {
    throw std::invalid_argument("objective size does not match variable count");
  }
  if (prob.senses.size() != prob.rhs.size()) {
    throw std::invalid_argument("senses and rhs sizes differ");
  }
  for (double c : prob.objective) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite objective");
  }
  for (double b : prob.rhs) {
    if (!std::isfinite(b)) throw std::invalid_argument("non-finite rhs");
  }
  for (const MatrixEntry& e : prob.entries) {
    if (e.row < 0 || e.row >= prob.num_constraints() || e.col < 0 ||
        e.col >= prob.num_variables) {
      throw std::invalid_argument("matrix entry (" + std::to_string(e.row) +
                                  ", " + std::to_string(e.col) +
                                  ") out of range");
    }
    if (!std::isfinite(e.value)) {
      throw std::invalid_argument("non-finite matrix entry");
    }
  }
}

GeneralProblem to_general_problem(const TransportInstance& inst) {
  GeneralProblem prob;
  prob.num_variables = inst.num_arcs();
  prob.objective.reserve(inst.num_arcs());
  for (int k = 0; k < inst.num_arcs(); ++k) {
    prob.objective.push_back(inst.arc(k).cost);
  }
  for (int i = 0; i < inst.num_demands(); ++i) {
    const int row = prob.num_constraints();
    for (int k = inst.arc_begin(i); k < inst.arc_end(i); ++k) {
      prob.entries.push_back({row, k, 1.0});
    }
    prob.rhs.push_back(inst.demand(i).demand);
    prob.senses.push_back(Sense::kGreaterEqual);
  }
  for (int j = 0; j < inst.num_supplies(); ++j) {
    if (inst.is_dummy(j)) continue;
    const int row = prob.num_constraints();
    for (const ServedDemand& sd : inst.served_by(j)) {
      prob.entries.push_back({row, sd.arc, 1.0});
    }
    prob.rhs.push_back(inst.supply(j).capacity);
    prob.senses.push_back(Sense::kLessEqual);
  }
  return prob;
}

std::vector<int> arc_demands(const TransportInstance& inst) {
  std::vector<int> out(inst.num_arcs());
  for (int k = 0; k < inst.num_arcs(); ++k) out[k] = inst.arc_demand(k);
  return out;
}

}  // namespace vpart
