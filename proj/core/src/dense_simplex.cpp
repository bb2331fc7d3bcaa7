#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "vpart/simplex.hpp"

namespace vpart {
namespace {

// Row-major tableau with the objective stored as an extra row. Column
// layout: structural variables, slack/surplus columns, artificials, rhs.
class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(int r, int c) { return data_[r * (cols_ + 1) + c]; }
  double at(int r, int c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(int r) { return at(r, cols_); }
  double rhs(int r) const { return at(r, cols_); }
  // Objective row holds reduced costs; its rhs holds -z.
  double& cost(int c) { return at(rows_, c); }
  double cost(int c) const { return at(rows_, c); }

  void pivot(int pr, int pc) {
    const double inv = 1.0 / at(pr, pc);
    for (int c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    at(pr, pc) = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

struct PhaseOutcome {
  LpStatus status;
  long iterations;
};

PhaseOutcome run_phase(Tableau& t, std::vector<int>& basis,
                       const std::vector<bool>& allowed,
                       const SimplexOptions& options, long budget) {
  double scale = 1.0;
  for (int c = 0; c < t.cols(); ++c) scale = std::max(scale, std::abs(t.cost(c)));
  const double tol = options.optimality_tol * scale;
  const double pivot_tol = 1e-11;

  long iterations = 0;
  int degenerate_run = 0;
  while (true) {
    const bool bland = degenerate_run >= options.degenerate_stall;
    int enter = -1;
    double best = -tol;
    for (int c = 0; c < t.cols(); ++c) {
      if (!allowed[c]) continue;
      const double rc = t.cost(c);
      if (rc < best) {
        enter = c;
        best = rc;
        if (bland) break;
      }
    }
    if (enter < 0) return {LpStatus::kOptimal, iterations};
    if (iterations >= budget) return {LpStatus::kFailed, iterations};

    int leave = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= pivot_tol) continue;
      const double q = std::max(t.rhs(r), 0.0) / a;
      if (leave < 0 || q < ratio - 1e-12 * std::max(1.0, ratio)) {
        leave = r;
        ratio = q;
      } else if (q <= ratio + 1e-12 * std::max(1.0, ratio)) {
        // Ties: lowest basic index under Bland, larger pivot otherwise.
        const bool take = bland ? basis[r] < basis[leave]
                                : a > t.at(leave, enter);
        if (take) {
          leave = r;
          ratio = std::min(ratio, q);
        }
      }
    }
    if (leave < 0) return {LpStatus::kUnbounded, iterations};

    degenerate_run = ratio <= 0.0 ? degenerate_run + 1 : 0;
    t.pivot(leave, enter);
    basis[leave] = enter;
    ++iterations;
  }
}

}  // namespace

DenseLpResult solve_dense(const GeneralProblem& prob, const SimplexOptions& options) {
  check_problem(prob);
  const int m = prob.num_constraints();
  const int n = prob.num_variables;

  std::vector<std::vector<double>> rows(m, std::vector<double>(n, 0.0));
  for (const MatrixEntry& e : prob.entries) rows[e.row][e.col] += e.value;
  std::vector<double> rhs = prob.rhs;
  std::vector<Sense> senses = prob.senses;
  for (int r = 0; r < m; ++r) {
    if (rhs[r] < 0.0) {
      for (double& v : rows[r]) v = -v;
      rhs[r] = -rhs[r];
      if (senses[r] == Sense::kLessEqual) {
        senses[r] = Sense::kGreaterEqual;
      } else if (senses[r] == Sense::kGreaterEqual) {
        senses[r] = Sense::kLessEqual;
      }
    }
  }

  int n_slack = 0;
  int n_art = 0;
  for (Sense s : senses) {
    if (s != Sense::kEqual) ++n_slack;
    if (s != Sense::kLessEqual) ++n_art;
  }
  const int cols = n + n_slack + n_art;
  const int art_begin = n + n_slack;
  Tableau t(m, cols);
  std::vector<int> basis(m, -1);
  int slack = n;
  int art = art_begin;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) t.at(r, c) = rows[r][c];
    t.rhs(r) = rhs[r];
    if (senses[r] == Sense::kLessEqual) {
      t.at(r, slack) = 1.0;
      basis[r] = slack++;
    } else {
      if (senses[r] == Sense::kGreaterEqual) t.at(r, slack++) = -1.0;
      t.at(r, art) = 1.0;
      basis[r] = art++;
    }
  }

  DenseLpResult result;
  std::vector<bool> allowed(cols, true);

  if (n_art > 0) {
    // Phase one: minimize the sum of artificials, priced out of the basis.
    for (int c = art_begin; c < cols; ++c) t.cost(c) = 1.0;
    for (int r = 0; r < m; ++r) {
      if (basis[r] >= art_begin) {
        for (int c = 0; c <= cols; ++c) t.at(m, c) -= t.at(r, c);
      }
    }
    const PhaseOutcome p1 =
        run_phase(t, basis, allowed, options, options.max_iterations);
    result.iterations += p1.iterations;
    if (p1.status != LpStatus::kOptimal) {
      result.status = p1.status == LpStatus::kUnbounded ? LpStatus::kFailed : p1.status;
      return result;
    }
    double rhs_scale = 1.0;
    for (double b : rhs) rhs_scale = std::max(rhs_scale, std::abs(b));
    if (-t.rhs(m) > options.feasibility_tol * rhs_scale) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive remaining (zero-valued) artificials out where possible.
    for (int r = 0; r < m; ++r) {
      if (basis[r] < art_begin) continue;
      int pc = -1;
      for (int c = 0; c < art_begin; ++c) {
        if (std::abs(t.at(r, c)) > 1e-9) {
          pc = c;
          break;
        }
      }
      if (pc >= 0) {
        t.pivot(r, pc);
        basis[r] = pc;
      }
    }
    for (int c = art_begin; c < cols; ++c) allowed[c] = false;
  }

  // Phase two objective, expressed in the current basis.
  for (int c = 0; c <= cols; ++c) t.at(m, c) = 0.0;
  for (int c = 0; c < n; ++c) t.cost(c) = prob.objective[c];
  for (int r = 0; r < m; ++r) {
    const int b = basis[r];
    const double cb = b < n ? prob.objective[b] : 0.0;
    if (cb == 0.0) continue;
    for (int c = 0; c <= cols; ++c) t.at(m, c) -= cb * t.at(r, c);
  }
  const PhaseOutcome p2 = run_phase(t, basis, allowed, options,
                                    options.max_iterations - result.iterations);
  result.iterations += p2.iterations;
  result.status = p2.status;
  if (p2.status != LpStatus::kOptimal) return result;

  result.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) result.x[basis[r]] = std::max(t.rhs(r), 0.0);
  }
  result.objective = 0.0;
  for (int c = 0; c < n; ++c) result.objective += prob.objective[c] * result.x[c];
  return result;
}

}  // namespace vpart
