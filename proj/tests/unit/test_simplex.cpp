#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "vpart/simplex.hpp"

namespace vpart {
namespace {

GeneralProblem lp(int n, std::vector<double> c,
                  std::vector<std::tuple<std::vector<double>, Sense, double>> rows) {
  GeneralProblem p;
  p.num_variables = n;
  p.objective = std::move(c);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& [coef, sense, rhs] = rows[r];
    for (int j = 0; j < n; ++j) {
      if (coef[j] != 0.0) p.entries.push_back({static_cast<int>(r), j, coef[j]});
    }
    p.senses.push_back(sense);
    p.rhs.push_back(rhs);
  }
  return p;
}

TEST(DenseSimplex, TextbookMaximization) {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6).
  const auto r = solve_dense(lp(2, {-3, -5},
                                {{{1, 0}, Sense::kLessEqual, 4},
                                 {{0, 2}, Sense::kLessEqual, 12},
                                 {{3, 2}, Sense::kLessEqual, 18}}));
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -36.0, 1e-9);
  EXPECT_NEAR(r.x[0], 2.0, 1e-9);
  EXPECT_NEAR(r.x[1], 6.0, 1e-9);
}

TEST(DenseSimplex, GreaterEqualAndEquality) {
  // min x + 2y s.t. x + y >= 3, x - y = 1  ->  x = 2, y = 1, obj 4.
  const auto r = solve_dense(lp(2, {1, 2},
                                {{{1, 1}, Sense::kGreaterEqual, 3},
                                 {{1, -1}, Sense::kEqual, 1}}));
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 4.0, 1e-9);
}

TEST(DenseSimplex, NegativeRightHandSide) {
  // -x <= -2 means x >= 2.
  const auto r = solve_dense(lp(1, {1}, {{{-1}, Sense::kLessEqual, -2}}));
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.x[0], 2.0, 1e-12);
}

TEST(DenseSimplex, DetectsInfeasibleAndUnbounded) {
  EXPECT_EQ(solve_dense(lp(1, {1}, {{{1}, Sense::kLessEqual, 1},
                                    {{1}, Sense::kGreaterEqual, 2}})).status,
            LpStatus::kInfeasible);
  EXPECT_EQ(solve_dense(lp(2, {-1, 0}, {{{0, 1}, Sense::kLessEqual, 1}})).status,
            LpStatus::kUnbounded);
}

TEST(DenseSimplex, RedundantEqualities) {
  const auto r = solve_dense(lp(2, {1, 1},
                                {{{1, 1}, Sense::kEqual, 2},
                                 {{2, 2}, Sense::kEqual, 4},
                                 {{1, 0}, Sense::kGreaterEqual, 0.5}}));
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 2.0, 1e-9);
}

TEST(DenseSimplex, DegenerateCyclingExample) {
  // Beale's example cycles under naive Dantzig pricing.
  const auto r = solve_dense(lp(4, {-0.75, 150, -0.02, 6},
                                {{{0.25, -60, -0.04, 9}, Sense::kLessEqual, 0},
                                 {{0.5, -90, -0.02, 3}, Sense::kLessEqual, 0},
                                 {{0, 0, 1, 0}, Sense::kLessEqual, 1}}));
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, -0.05, 1e-9);
}

TEST(TransportSimplex, MatchesMinCostFlowOracle) {
  for (unsigned seed = 0; seed < 60; ++seed) {
    const TransportInstance inst = testing::random_instance(seed, 7, 5, 0.5);
    std::vector<double> demands;
    std::vector<double> caps;
    std::vector<TransportArc> arcs;
    for (int i = 0; i < inst.num_demands(); ++i) demands.push_back(inst.demand(i).demand);
    for (int j = 0; j < inst.num_supplies(); ++j) {
      caps.push_back(inst.is_dummy(j) ? testing::kInf : inst.supply(j).capacity);
    }
    for (int k = 0; k < inst.num_arcs(); ++k) {
      arcs.push_back({inst.arc_demand(k), inst.arc(k).supplier, inst.arc(k).cost});
    }
    TransportSimplex ts(demands, caps, arcs);
    ASSERT_EQ(ts.solve(), LpStatus::kOptimal);
    EXPECT_NEAR(ts.objective(), testing::min_cost_flow_oracle(inst), 1e-6) << seed;
  }
}

TEST(TransportSimplex, PhaseOneWithoutUncapacitatedSupplier) {
  // Demand 0 can only use capacitated suppliers; demand 1 has none at all.
  TransportSimplex ok({3, 2}, {2, 2, 10}, {{0, 0, 1}, {0, 1, 2}, {1, 1, 1}, {1, 2, 5}});
  ASSERT_EQ(ok.solve(), LpStatus::kOptimal);
  // x00 = 2, x01 = 1, x11 = 1, x12 = 1: 2 + 2 + 1 + 5.
  EXPECT_NEAR(ok.objective(), 10.0, 1e-9);

  TransportSimplex bad({3}, {1, 1}, {{0, 0, 1}, {0, 1, 1}});
  EXPECT_EQ(bad.solve(), LpStatus::kInfeasible);
}

TEST(TransportSimplex, WarmStartMatchesColdSolve) {
  std::mt19937 gen(9);
  std::uniform_real_distribution<double> perturb(0.0, 20.0);
  const TransportInstance inst = testing::random_instance(77, 12, 8, 0.5);
  std::vector<double> demands;
  std::vector<double> caps;
  std::vector<TransportArc> arcs;
  for (int i = 0; i < inst.num_demands(); ++i) demands.push_back(inst.demand(i).demand);
  for (int j = 0; j < inst.num_supplies(); ++j) {
    caps.push_back(inst.is_dummy(j) ? testing::kInf : inst.supply(j).capacity);
  }
  for (int k = 0; k < inst.num_arcs(); ++k) {
    arcs.push_back({inst.arc_demand(k), inst.arc(k).supplier, inst.arc(k).cost});
  }
  TransportSimplex warm(demands, caps, arcs);
  ASSERT_EQ(warm.solve(), LpStatus::kOptimal);
  for (int round = 0; round < 20; ++round) {
    std::vector<double> costs;
    for (const TransportArc& a : arcs) costs.push_back(a.cost + perturb(gen));
    warm.set_costs(costs);
    ASSERT_EQ(warm.solve(), LpStatus::kOptimal);
    auto cold_arcs = arcs;
    for (std::size_t a = 0; a < arcs.size(); ++a) cold_arcs[a].cost = costs[a];
    TransportSimplex cold(demands, caps, cold_arcs);
    ASSERT_EQ(cold.solve(), LpStatus::kOptimal);
    EXPECT_NEAR(warm.objective(), cold.objective(), 1e-7 * std::max(1.0, cold.objective()));
  }
  EXPECT_THROW(warm.set_costs(std::vector<double>(3, 1.0)), std::invalid_argument);
}

TEST(TransportSimplex, FlowsSatisfyConstraints) {
  const TransportInstance inst = testing::random_instance(5, 10, 6, 0.6);
  std::vector<double> demands;
  std::vector<double> caps;
  std::vector<TransportArc> arcs;
  for (int i = 0; i < inst.num_demands(); ++i) demands.push_back(inst.demand(i).demand);
  for (int j = 0; j < inst.num_supplies(); ++j) {
    caps.push_back(inst.is_dummy(j) ? testing::kInf : inst.supply(j).capacity);
  }
  for (int k = 0; k < inst.num_arcs(); ++k) {
    arcs.push_back({inst.arc_demand(k), inst.arc(k).supplier, inst.arc(k).cost});
  }
  TransportSimplex ts(demands, caps, arcs);
  ASSERT_EQ(ts.solve(), LpStatus::kOptimal);
  std::vector<double> in(demands.size(), 0.0);
  std::vector<double> out(caps.size(), 0.0);
  const auto x = ts.flows();
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    EXPECT_GE(x[a], 0.0);
    in[arcs[a].demand] += x[a];
    out[arcs[a].supplier] += x[a];
  }
  for (std::size_t i = 0; i < demands.size(); ++i) EXPECT_GE(in[i], demands[i] - 1e-7);
  for (std::size_t j = 0; j < caps.size(); ++j) EXPECT_LE(out[j], caps[j] + 1e-7);
}

TEST(TransportSimplex, ZeroDemandRowsCarryNoFlow) {
  TransportSimplex ts({0, 4}, {testing::kInf}, {{0, 0, 1}, {1, 0, 2}});
  ASSERT_EQ(ts.solve(), LpStatus::kOptimal);
  EXPECT_EQ(ts.flows()[0], 0.0);
  EXPECT_NEAR(ts.objective(), 8.0, 1e-12);
}

}  // namespace
}  // namespace vpart
