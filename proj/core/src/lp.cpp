#include "vpart/lp.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "vpart/instance_io.hpp"

namespace vpart {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LocalProblem {
  std::vector<double> demands;
  std::vector<double> capacities;
  std::vector<TransportArc> arcs;
  std::vector<int> global_arc;
};

// Restricts the instance to `demands`; suppliers for which `capacitated`
// holds keep their capacity row, all others are uncapacitated.
template <typename Pred>
LocalProblem restrict_instance(const TransportInstance& inst,
                               std::span<const int> demands, Pred capacitated) {
  LocalProblem lp;
  std::vector<int> local(inst.num_supplies(), -1);
  for (int i : demands) {
    for (const AccessArc& a : inst.access(i)) {
      if (local[a.supplier] >= 0) continue;
      local[a.supplier] = 0;
    }
  }
  int next = 0;
  for (int j = 0; j < inst.num_supplies(); ++j) {
    if (local[j] < 0) continue;
    local[j] = next++;
    lp.capacities.push_back(capacitated(j) ? inst.supply(j).capacity : kInf);
  }
  for (std::size_t li = 0; li < demands.size(); ++li) {
    const int i = demands[li];
    lp.demands.push_back(inst.demand(i).demand);
    for (int k = inst.arc_begin(i); k < inst.arc_end(i); ++k) {
      const AccessArc& a = inst.arc(k);
      lp.arcs.push_back({static_cast<int>(li), local[a.supplier], a.cost});
      lp.global_arc.push_back(k);
    }
  }
  return lp;
}

}  // namespace

LpReport solve_full(const TransportInstance& inst, const SimplexOptions& options) {
  std::vector<int> all(inst.num_demands());
  for (int i = 0; i < inst.num_demands(); ++i) all[i] = i;
  LocalProblem lp = restrict_instance(inst, all, [&inst](int j) { return !inst.is_dummy(j); });

  LpReport report;
  TransportSimplex kernel(std::move(lp.demands), std::move(lp.capacities),
                          std::move(lp.arcs), options);
  report.status = kernel.solve();
  report.iterations = kernel.iterations();
  if (report.status != LpStatus::kOptimal) return report;
  report.solution.x.assign(inst.num_arcs(), 0.0);
  const auto flows = kernel.flows();
  for (std::size_t a = 0; a < flows.size(); ++a) {
    report.solution.x[lp.global_arc[a]] = flows[a];
  }
  report.objective = kernel.objective();
  report.solution.objective = report.objective;
  return report;
}

std::vector<double> expand_multipliers(const Decomposition& dec,
                                       std::span<const double> lambda,
                                       int num_supplies) {
  if (static_cast<int>(lambda.size()) != dec.num_dualized()) {
    throw std::invalid_argument("multiplier vector has " +
                                std::to_string(lambda.size()) +
                                " entries, decomposition dualizes " +
                                std::to_string(dec.num_dualized()));
  }
  std::vector<double> out(num_supplies, 0.0);
  for (int k = 0; k < dec.num_dualized(); ++k) {
    if (!(lambda[k] >= 0.0)) {
      throw std::invalid_argument("multipliers must be nonnegative");
    }
    out[dec.dualized[k]] = lambda[k];
  }
  return out;
}

SubproblemSolution solve_singleton(int demand, const TransportInstance& inst,
                                   std::span<const double> supplier_lambda) {
  const auto row = inst.access(demand);
  if (row.empty()) {
    throw std::invalid_argument("demand " + std::to_string(demand) +
                                " has an empty access set");
  }
  int best = 0;
  double best_cost = kInf;
  for (std::size_t k = 0; k < row.size(); ++k) {
    const double lambda = supplier_lambda[row[k].supplier];
    if (lambda < 0.0) throw std::invalid_argument("multipliers must be nonnegative");
    const double c = row[k].cost + lambda;
    if (c < best_cost) {  // strict: ties keep the lower supplier id
      best_cost = c;
      best = static_cast<int>(k);
    }
  }
  SubproblemSolution sol;
  const double m = inst.demand(demand).demand;
  if (m > 0.0) {
    sol.flows.push_back({inst.arc_begin(demand) + best, m});
    sol.objective = m * best_cost;
  }
  return sol;
}

BlockSolver::BlockSolver(const TransportInstance& inst, const Decomposition& dec,
                         int block, SimplexOptions options)
    : inst_(&inst) {
  if (block < 0 || block >= dec.num_blocks()) {
    throw std::invalid_argument("block " + std::to_string(block) + " out of range");
  }
  const Block& b = dec.blocks[block];
  demands_ = b.demands;
  if (b.interior.empty()) return;

  LocalProblem lp = restrict_instance(inst, demands_, [&dec](int j) {
    return dec.classes[j] == SupplierClass::kInterior;
  });
  arcs_ = std::move(lp.global_arc);
  costs_.resize(arcs_.size());
  kernel_ = std::make_unique<TransportSimplex>(std::move(lp.demands),
                                               std::move(lp.capacities),
                                               std::move(lp.arcs), options);
}

BlockSolver::~BlockSolver() = default;
BlockSolver::BlockSolver(BlockSolver&&) noexcept = default;
BlockSolver& BlockSolver::operator=(BlockSolver&&) noexcept = default;

SubproblemSolution BlockSolver::solve(std::span<const double> supplier_lambda) {
  SubproblemSolution sol;
  if (!kernel_) {
    for (int i : demands_) {
      SubproblemSolution part = solve_singleton(i, *inst_, supplier_lambda);
      sol.flows.insert(sol.flows.end(), part.flows.begin(), part.flows.end());
      sol.objective += part.objective;
    }
    return sol;
  }
  for (std::size_t a = 0; a < arcs_.size(); ++a) {
    const AccessArc& arc = inst_->arc(arcs_[a]);
    costs_[a] = arc.cost + supplier_lambda[arc.supplier];
  }
  kernel_->set_costs(costs_);
  const long before = kernel_->iterations();
  sol.status = kernel_->solve();
  sol.iterations = kernel_->iterations() - before;
  if (sol.status != LpStatus::kOptimal) return sol;
  const auto flows = kernel_->flows();
  for (std::size_t a = 0; a < flows.size(); ++a) {
    if (flows[a] > 0.0) sol.flows.push_back({arcs_[a], flows[a]});
  }
  sol.objective = kernel_->objective();
  return sol;
}

SubproblemSolution solve_block(int block, const TransportInstance& inst,
                               const Decomposition& dec,
                               std::span<const double> lambda,
                               const SimplexOptions& options) {
  const auto supplier_lambda = expand_multipliers(dec, lambda, inst.num_supplies());
  BlockSolver solver(inst, dec, block, options);
  return solver.solve(supplier_lambda);
}

double dual_value(const TransportInstance& inst, const Decomposition& dec,
                  std::span<const double> lambda,
                  std::span<const double> block_objectives) {
  if (static_cast<int>(block_objectives.size()) != dec.num_blocks()) {
    throw std::invalid_argument("expected one objective per block");
  }
  if (static_cast<int>(lambda.size()) != dec.num_dualized()) {
    throw std::invalid_argument("multiplier vector size does not match decomposition");
  }
  double g = 0.0;
  for (double obj : block_objectives) g += obj;
  for (int k = 0; k < dec.num_dualized(); ++k) {
    g -= lambda[k] * inst.supply(dec.dualized[k]).capacity;
  }
  return g;
}

void write_solution_csv(std::ostream& out, const TransportInstance& inst,
                        std::span<const double> x) {
  out << "i,j,x_ij\n";
  for (int k = 0; k < inst.num_arcs() && k < static_cast<int>(x.size()); ++k) {
    if (x[k] == 0.0) continue;
    out << inst.arc_demand(k) << ',' << inst.arc(k).supplier << ','
        << format_real(x[k]) << '\n';
  }
}

}  // namespace vpart
