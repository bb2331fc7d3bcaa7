#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "vpart/decomposition.hpp"
#include "vpart/instance.hpp"
#include "vpart/simplex.hpp"

namespace vpart {

// X as a dense vector over the instance's global arc order.
struct PrimalSolution {
  std::vector<double> x;
  double objective = 0.0;
};

struct LpReport {
  LpStatus status = LpStatus::kFailed;
  double objective = 0.0;
  PrimalSolution solution;
  long iterations = 0;
};

// Optimal solution of the full transportation LP (every non-dummy supply
// constraint enforced).
LpReport solve_full(const TransportInstance& inst,
                    const SimplexOptions& options = {});

struct ArcFlow {
  int arc = 0;  // global arc index
  double value = 0.0;
};

// Sub-problem optimum: nonzero flows (ascending arc index) and the value of
// the sub-problem objective sum (w_ij + lambda_j) x_ij.
struct SubproblemSolution {
  LpStatus status = LpStatus::kOptimal;
  std::vector<ArcFlow> flows;
  double objective = 0.0;
  long iterations = 0;
};

// Multiplier per supplier id: lambda[dual_index[j]] for dualized suppliers,
// zero elsewhere. Throws std::invalid_argument on size mismatch or negative
// multipliers.
std::vector<double> expand_multipliers(const Decomposition& dec,
                                       std::span<const double> lambda,
                                       int num_supplies);

// Closed-form optimum of the single-demand relaxation: all of m_i goes to
// argmin_j (w_ij + lambda_j), ties to the lowest supplier id. Throws
// std::invalid_argument when J_i is empty.
SubproblemSolution solve_singleton(int demand, const TransportInstance& inst,
                                   std::span<const double> supplier_lambda);

// Optimum of block b's relaxation: demands of the block, capacity rows for
// its interior suppliers only, multipliers on its boundary suppliers. Blocks
// without interior suppliers are separable and use the closed form.
SubproblemSolution solve_block(int block, const TransportInstance& inst,
                               const Decomposition& dec,
                               std::span<const double> lambda,
                               const SimplexOptions& options = {});

// g(lambda) = sum_b obj_b - sum_{j in J^out} lambda_j s_j.
double dual_value(const TransportInstance& inst, const Decomposition& dec,
                  std::span<const double> lambda,
                  std::span<const double> block_objectives);

// Reusable solver for one block. Keeps its simplex basis between calls, so
// successive solves under slowly changing multipliers are cheap. Objectives
// match solve_block() to solver tolerance; with several optimal vertices the
// returned flows may differ from a cold solve.
class BlockSolver {
 public:
  BlockSolver(const TransportInstance& inst, const Decomposition& dec,
              int block, SimplexOptions options = {});
  ~BlockSolver();
  BlockSolver(BlockSolver&&) noexcept;
  BlockSolver& operator=(BlockSolver&&) noexcept;

  SubproblemSolution solve(std::span<const double> supplier_lambda);

  bool closed_form() const { return kernel_ == nullptr; }

 private:
  const TransportInstance* inst_;
  std::vector<int> demands_;
  std::vector<int> arcs_;       // global arc per local arc
  std::vector<double> costs_;   // scratch
  std::unique_ptr<TransportSimplex> kernel_;
};

// Writes "i,j,x_ij" rows for the nonzero entries of a dense solution.
void write_solution_csv(std::ostream& out, const TransportInstance& inst,
                        std::span<const double> x);

}  // namespace vpart
