#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vpart/decomposition.hpp"
#include "vpart/instance.hpp"
#include "vpart/lp.hpp"
#include "vpart/simplex.hpp"

namespace vpart {

// alpha_t = c / t. Throws std::invalid_argument for t < 1 or c <= 0.
double step_size(long t, double c);

// h_j = sum_{i in I_j} x_ij - s_j for each dualized supplier, gathered over
// all blocks in block order. Throws std::invalid_argument unless there is
// exactly one solution per block.
std::vector<double> compute_violations(const TransportInstance& inst,
                                       const Decomposition& dec,
                                       std::span<const SubproblemSolution> blocks);

// max(lambda + alpha * h, 0), componentwise.
std::vector<double> update_multipliers(std::span<const double> lambda,
                                       std::span<const double> h, double alpha);

struct SolverParams {
  double step_c = 1.0 / 80.0;
  double gap_target = 0.05;
  long max_iterations = 20'000;
  // f*; solve_full() is called when absent.
  std::optional<double> reference_optimum;
  int width = 1;  // concurrent block solves
  bool record_multipliers = false;
  SimplexOptions lp;
};

// Throws std::invalid_argument when a field is out of range.
void check_params(const SolverParams& params);

enum class Termination { kGapReached, kMaxIterations, kSolverFailure };

std::string_view to_string(Termination reason);

struct TraceRow {
  long t = 0;
  double g = 0.0;
  double g_best = 0.0;
  double gap = 0.0;
  double viol_norm2 = 0.0;
  double seconds = 0.0;  // elapsed since the first iteration started
  std::uint64_t multiplier_digest = 0;  // FNV-1a over the bytes of Lambda^t
};

struct SolverTrace {
  std::vector<TraceRow> rows;
  long iterations = 0;
  Termination termination = Termination::kMaxIterations;
  std::string failure;
  double reference_optimum = 0.0;
  std::vector<double> final_multipliers;
  std::vector<std::vector<double>> multiplier_history;  // when recorded
  // Running average of the primal iterates.
  std::vector<double> average_x;
  double average_objective = 0.0;
  double average_max_violation = 0.0;
  int num_dualized = 0;
  int num_blocks = 0;
  double seconds = 0.0;
};

// Projected subgradient ascent on the Lagrangian dual of `dec`, starting at
// Lambda = 0. Results are identical for every width.
SolverTrace run(const TransportInstance& inst, const Decomposition& dec,
                const SolverParams& params);

// Running sum of primal iterates over the global arc order.
class PrimalAverager {
 public:
  explicit PrimalAverager(int num_arcs) : sum_(num_arcs, 0.0) {}

  void add(std::span<const SubproblemSolution> blocks);
  void add(std::span<const double> x);
  long count() const { return count_; }
  std::vector<double> average() const;

 private:
  std::vector<double> sum_;
  long count_ = 0;
};

struct AverageReport {
  std::vector<double> x;
  double objective = 0.0;
  // Largest positive violation among the dualized supply rows, 0 if none.
  double max_violation = 0.0;
};

// Throws std::invalid_argument when nothing has been added.
AverageReport running_average(const TransportInstance& inst,
                              const Decomposition& dec,
                              const PrimalAverager& averager);

struct BoundParams {
  double R = 0.0;
  double G = 0.0;
};

// (R^2 + G^2 sum_{k<=t} alpha_k^2) / (2 sum_{k<=t} alpha_k) for t = 1..T.
std::vector<double> bound_curve(const BoundParams& bp, double c, long horizon);
std::vector<double> bound_curve(const BoundParams& bp,
                                std::span<const double> alphas);

void write_trace_csv(std::ostream& out, const SolverTrace& trace,
                     bool with_timing = true);
void write_bound_csv(std::ostream& out, std::span<const double> bound);

}  // namespace vpart
