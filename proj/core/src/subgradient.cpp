#include "vpart/subgradient.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "vpart/instance_io.hpp"

namespace vpart {
namespace {

std::uint64_t fnv1a(std::span<const double> values) {
  std::uint64_t h = 14695981039346656037ull;
  for (double v : values) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  }
  return h;
}

// Solves every block under the current multipliers. Blocks are pinned to
// workers (block b -> worker b % width), so each warm-started solver sees
// the same call sequence for any width.
class BlockPool {
 public:
  BlockPool(const TransportInstance& inst, const Decomposition& dec,
            const SimplexOptions& options, int width)
      : results_(dec.num_blocks()),
        errors_(dec.num_blocks()),
        width_(std::max(1, std::min(width, std::max(1, dec.num_blocks())))),
        sync_(width_) {
    solvers_.reserve(dec.num_blocks());
    for (int b = 0; b < dec.num_blocks(); ++b) solvers_.emplace_back(inst, dec, b, options);
    for (int w = 1; w < width_; ++w) {
      workers_.emplace_back([this, w] {
        while (true) {
          sync_.arrive_and_wait();
          if (stop_.load()) return;
          work(w);
          sync_.arrive_and_wait();
        }
      });
    }
  }

  ~BlockPool() {
    if (width_ > 1) {
      stop_.store(true);
      sync_.arrive_and_wait();
    }
  }

  BlockPool(const BlockPool&) = delete;
  BlockPool& operator=(const BlockPool&) = delete;

  void solve(std::span<const double> supplier_lambda) {
    lambda_ = supplier_lambda;
    if (width_ > 1) sync_.arrive_and_wait();
    work(0);
    if (width_ > 1) sync_.arrive_and_wait();
  }

  std::span<const SubproblemSolution> results() const { return results_; }
  const std::string& error(int b) const { return errors_[b]; }

 private:
  void work(int w) {
    for (std::size_t b = w; b < solvers_.size(); b += width_) {
      try {
        results_[b] = solvers_[b].solve(lambda_);
        errors_[b].clear();
      } catch (const std::exception& e) {
        results_[b] = SubproblemSolution{};
        results_[b].status = LpStatus::kFailed;
        errors_[b] = e.what();
      }
    }
  }

  std::vector<BlockSolver> solvers_;
  std::vector<SubproblemSolution> results_;
  std::vector<std::string> errors_;
  std::span<const double> lambda_;
  int width_;
  std::barrier<> sync_;
  std::atomic<bool> stop_{false};
  std::vector<std::jthread> workers_;  // last: joined before the rest is torn down
};

}  // namespace

double step_size(long t, double c) {
  if (t < 1) throw std::invalid_argument("step index must be at least 1");
  if (!(c > 0.0)) throw std::invalid_argument("step constant must be positive");
  return c / static_cast<double>(t);
}

std::vector<double> compute_violations(const TransportInstance& inst,
                                       const Decomposition& dec,
                                       std::span<const SubproblemSolution> blocks) {
  if (static_cast<int>(blocks.size()) != dec.num_blocks()) {
    throw std::invalid_argument("expected " + std::to_string(dec.num_blocks()) +
                                " block solutions, got " +
                                std::to_string(blocks.size()));
  }
  std::vector<double> h(dec.num_dualized());
  for (int k = 0; k < dec.num_dualized(); ++k) {
    h[k] = -inst.supply(dec.dualized[k]).capacity;
  }
  for (const SubproblemSolution& sol : blocks) {
    for (const ArcFlow& f : sol.flows) {
      const int k = dec.dual_index[inst.arc(f.arc).supplier];
      if (k >= 0) h[k] += f.value;
    }
  }
  return h;
}

std::vector<double> update_multipliers(std::span<const double> lambda,
                                       std::span<const double> h, double alpha) {
  if (lambda.size() != h.size()) {
    throw std::invalid_argument("multiplier and violation sizes differ");
  }
  std::vector<double> next(lambda.size());
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    next[k] = std::max(lambda[k] + alpha * h[k], 0.0);
  }
  return next;
}

void check_params(const SolverParams& params) {
  if (!(params.step_c > 0.0)) throw std::invalid_argument("step constant must be positive");
  if (!(params.gap_target > 0.0 && params.gap_target <= 1.0)) {
    throw std::invalid_argument("gap target must lie in (0, 1]");
  }
  if (params.max_iterations < 1) {
    throw std::invalid_argument("max iterations must be at least 1");
  }
  if (params.width < 1) throw std::invalid_argument("width must be at least 1");
}

std::string_view to_string(Termination reason) {
  switch (reason) {
    case Termination::kGapReached: return "gap-reached";
    case Termination::kMaxIterations: return "max-iterations";
    case Termination::kSolverFailure: return "solver-failure";
  }
  return "unknown";
}

SolverTrace run(const TransportInstance& inst, const Decomposition& dec,
                const SolverParams& params) {
  check_params(params);
  SolverTrace trace;
  trace.num_blocks = dec.num_blocks();
  trace.num_dualized = dec.num_dualized();

  if (params.reference_optimum) {
    trace.reference_optimum = *params.reference_optimum;
  } else {
    const LpReport full = solve_full(inst, params.lp);
    if (full.status != LpStatus::kOptimal) {
      trace.termination = Termination::kSolverFailure;
      trace.failure = "full LP: " + std::string(to_string(full.status));
      return trace;
    }
    trace.reference_optimum = full.objective;
  }
  const double f_star = trace.reference_optimum;
  const double scale = f_star != 0.0 ? std::abs(f_star) : 1.0;

  BlockPool pool(inst, dec, params.lp, params.width);
  PrimalAverager averager(inst.num_arcs());
  std::vector<double> lambda(dec.num_dualized(), 0.0);
  std::vector<double> supplier_lambda(inst.num_supplies(), 0.0);
  std::vector<double> objectives(dec.num_blocks());
  double g_best = -std::numeric_limits<double>::infinity();

  const auto start = std::chrono::steady_clock::now();
  for (long t = 1; t <= params.max_iterations; ++t) {
    if (params.record_multipliers) trace.multiplier_history.push_back(lambda);
    for (int k = 0; k < dec.num_dualized(); ++k) supplier_lambda[dec.dualized[k]] = lambda[k];

    pool.solve(supplier_lambda);
    const auto results = pool.results();
    for (int b = 0; b < dec.num_blocks(); ++b) {
      if (results[b].status != LpStatus::kOptimal) {
        trace.termination = Termination::kSolverFailure;
        trace.failure = "iteration " + std::to_string(t) + ", block " +
                        std::to_string(b) + ": " +
                        (pool.error(b).empty() ? std::string(to_string(results[b].status))
                                               : pool.error(b));
        trace.final_multipliers = lambda;
        trace.seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start).count();
        return trace;
      }
      objectives[b] = results[b].objective;
    }

    averager.add(results);
    const double g = dual_value(inst, dec, lambda, objectives);
    g_best = std::max(g_best, g);
    const std::vector<double> h = compute_violations(inst, dec, results);
    double norm2 = 0.0;
    for (double v : h) norm2 += v * v;

    TraceRow row;
    row.t = t;
    row.g = g;
    row.g_best = g_best;
    row.gap = (f_star - g_best) / scale;
    row.viol_norm2 = std::sqrt(norm2);
    row.multiplier_digest = fnv1a(lambda);
    row.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
    trace.rows.push_back(row);
    trace.iterations = t;

    if (row.gap <= params.gap_target) {
      trace.termination = Termination::kGapReached;
      break;
    }
    lambda = update_multipliers(lambda, h, step_size(t, params.step_c));
  }

  trace.final_multipliers = lambda;
  trace.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start).count();
  const AverageReport avg = running_average(inst, dec, averager);
  trace.average_x = avg.x;
  trace.average_objective = avg.objective;
  trace.average_max_violation = avg.max_violation;
  return trace;
}

void PrimalAverager::add(std::span<const SubproblemSolution> blocks) {
  for (const SubproblemSolution& sol : blocks) {
    for (const ArcFlow& f : sol.flows) sum_[f.arc] += f.value;
  }
  ++count_;
}

void PrimalAverager::add(std::span<const double> x) {
  if (x.size() != sum_.size()) throw std::invalid_argument("iterate size mismatch");
  for (std::size_t k = 0; k < x.size(); ++k) sum_[k] += x[k];
  ++count_;
}

std::vector<double> PrimalAverager::average() const {
  std::vector<double> avg(sum_.size(), 0.0);
  if (count_ == 0) return avg;
  for (std::size_t k = 0; k < sum_.size(); ++k) {
    avg[k] = sum_[k] / static_cast<double>(count_);
  }
  return avg;
}

AverageReport running_average(const TransportInstance& inst, const Decomposition& dec,
                              const PrimalAverager& averager) {
  if (averager.count() == 0) throw std::invalid_argument("no primal iterates recorded");
  AverageReport report;
  report.x = averager.average();
  std::vector<double> load(inst.num_supplies(), 0.0);
  for (int k = 0; k < inst.num_arcs(); ++k) {
    report.objective += inst.arc(k).cost * report.x[k];
    load[inst.arc(k).supplier] += report.x[k];
  }
  for (int j : dec.dualized) {
    report.max_violation = std::max(report.max_violation, load[j] - inst.supply(j).capacity);
  }
  return report;
}

std::vector<double> bound_curve(const BoundParams& bp, double c, long horizon) {
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  std::vector<double> alphas(horizon);
  for (long t = 1; t <= horizon; ++t) alphas[t - 1] = step_size(t, c);
  return bound_curve(bp, alphas);
}

std::vector<double> bound_curve(const BoundParams& bp, std::span<const double> alphas) {
  if (!(bp.R >= 0.0) || !(bp.G >= 0.0)) {
    throw std::invalid_argument("R and G must be nonnegative");
  }
  std::vector<double> out;
  out.reserve(alphas.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double a : alphas) {
    if (!(a > 0.0)) throw std::invalid_argument("step sizes must be positive");
    sum += a;
    sum_sq += a * a;
    out.push_back((bp.R * bp.R + bp.G * bp.G * sum_sq) / (2.0 * sum));
  }
  return out;
}

void write_trace_csv(std::ostream& out, const SolverTrace& trace, bool with_timing) {
  out << "t,g,g_best,gap,viol_norm2";
  if (with_timing) out << ",seconds";
  out << '\n';
  for (const TraceRow& r : trace.rows) {
    out << r.t << ',' << format_real(r.g) << ',' << format_real(r.g_best) << ','
        << format_real(r.gap) << ',' << format_real(r.viol_norm2);
    if (with_timing) out << ',' << format_real(r.seconds);
    out << '\n';
  }
}

void write_bound_csv(std::ostream& out, std::span<const double> bound) {
  out << "t,bound\n";
  for (std::size_t t = 0; t < bound.size(); ++t) {
    out << t + 1 << ',' << format_real(bound[t]) << '\n';
  }
}

}  // namespace vpart
