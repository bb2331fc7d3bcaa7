#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "vpart/lp.hpp"

namespace vpart {
namespace {

using testing::make_instance;

TEST(SolveFull, SingleCheapRoute) {
  const TransportInstance inst = make_instance({1}, {2}, {{{0, 5.0}}});
  const LpReport r = solve_full(inst);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 5.0, 1e-12);
  EXPECT_NEAR(r.solution.x[0], 1.0, 1e-12);
  EXPECT_EQ(r.solution.x[1], 0.0);
}

TEST(SolveFull, CapacityForcesDummy) {
  const TransportInstance inst = make_instance({1, 1}, {1}, {{{0, 1.0}}, {{0, 2.0}}});
  const LpReport r = solve_full(inst);
  ASSERT_EQ(r.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.objective, 1001.0, 1e-9);
  EXPECT_NEAR(r.solution.x[0], 1.0, 1e-12);  // (0, supplier)
  EXPECT_NEAR(r.solution.x[3], 1.0, 1e-12);  // (1, dummy)
}

TEST(SolveFull, NoDummyFlowWhenSharedSupplierSuffices) {
  for (unsigned seed = 0; seed < 40; ++seed) {
    std::mt19937 gen(seed);
    std::uniform_int_distribution<int> m(1, 5);
    std::uniform_int_distribution<int> w(0, 30);
    const int nd = 1 + seed % 3;
    std::vector<double> demands(nd);
    double total = 0.0;
    for (double& v : demands) total += (v = m(gen));
    std::vector<std::vector<testing::ArcSpec>> access(nd);
    for (int i = 0; i < nd; ++i) {
      access[i].push_back({0, static_cast<double>(w(gen))});
      access[i].push_back({1, static_cast<double>(w(gen))});
    }
    const TransportInstance inst = make_instance(demands, {total, 1.0}, access);
    const LpReport r = solve_full(inst);
    ASSERT_EQ(r.status, LpStatus::kOptimal);
    EXPECT_NEAR(r.objective, testing::min_cost_flow_oracle(inst), 1e-9);
    for (int k = 0; k < inst.num_arcs(); ++k) {
      if (inst.is_dummy(inst.arc(k).supplier)) EXPECT_EQ(r.solution.x[k], 0.0);
    }
  }
}

TEST(SolveFull, AgreesWithDenseSimplex) {
  for (unsigned seed = 0; seed < 25; ++seed) {
    const TransportInstance inst = testing::random_instance(seed, 5, 4, 0.6);
    const LpReport r = solve_full(inst);
    const DenseLpResult d = solve_dense(to_general_problem(inst));
    ASSERT_EQ(r.status, LpStatus::kOptimal);
    ASSERT_EQ(d.status, LpStatus::kOptimal);
    EXPECT_NEAR(r.objective, d.objective, 1e-6 * std::max(1.0, d.objective));
  }
}

TEST(SolveSingleton, ClosedFormExamples) {
  const TransportInstance inst = make_instance({4}, {9, 9}, {{{0, 3.0}, {1, 5.0}}});
  std::vector<double> lambda(3, 0.0);
  auto s = solve_singleton(0, inst, lambda);
  ASSERT_EQ(s.flows.size(), 1u);
  EXPECT_EQ(s.flows[0].arc, 0);
  EXPECT_EQ(s.flows[0].value, 4.0);
  EXPECT_EQ(s.objective, 12.0);

  lambda[0] = 4.0;
  s = solve_singleton(0, inst, lambda);
  EXPECT_EQ(s.flows[0].arc, 1);
  EXPECT_EQ(s.objective, 20.0);

  const TransportInstance tie = make_instance({1}, {9, 9}, {{{0, 3.0}, {1, 3.0}}});
  s = solve_singleton(0, tie, std::vector<double>(3, 0.0));
  EXPECT_EQ(s.flows[0].arc, 0);
  EXPECT_EQ(s.objective, 3.0);
}

TEST(SolveSingleton, ErrorsAndZeroDemand) {
  std::vector<DemandLocation> d{{0, {}, 1.0}};
  std::vector<SupplyLocation> s{{0, {}, 1.0, false}};
  const TransportInstance empty(d, s, {{}}, 0.0, 1000.0);
  EXPECT_THROW(solve_singleton(0, empty, std::vector<double>(1, 0.0)), std::invalid_argument);

  const TransportInstance zero = make_instance({0}, {1}, {{{0, 2.0}}});
  const auto sol = solve_singleton(0, zero, std::vector<double>(2, 0.0));
  EXPECT_TRUE(sol.flows.empty());
  EXPECT_EQ(sol.objective, 0.0);
}

TEST(SolveBlock, NoInteriorIsSumOfSingletons) {
  const TransportInstance inst = testing::random_instance(4, 6, 5, 0.5);
  const Decomposition dec = baseline_decomposition(inst);
  std::vector<double> lambda(dec.num_dualized());
  for (std::size_t k = 0; k < lambda.size(); ++k) lambda[k] = 0.7 * k;
  const auto supplier_lambda = expand_multipliers(dec, lambda, inst.num_supplies());
  for (int b = 0; b < dec.num_blocks(); ++b) {
    const auto block = solve_block(b, inst, dec, lambda);
    double expected = 0.0;
    for (int i : dec.blocks[b].demands) {
      expected += solve_singleton(i, inst, supplier_lambda).objective;
    }
    EXPECT_DOUBLE_EQ(block.objective, expected);
  }
}

TEST(SolveBlock, OneBlockEqualsFullOptimum) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const TransportInstance inst = testing::random_instance(seed, 8, 5, 0.5);
    const Decomposition dec = classify_suppliers(inst, Partition::whole(8));
    const auto block = solve_block(0, inst, dec, {});
    EXPECT_NEAR(block.objective, solve_full(inst).objective, 1e-7);
    EXPECT_NEAR(dual_value(inst, dec, {}, std::vector<double>{block.objective}),
                testing::min_cost_flow_oracle(inst), 1e-6);
  }
}

TEST(SolveBlock, TightInteriorSupplierMatchesRestrictedOracle) {
  // Demands 0 and 1 share interior supplier 0 (capacity 3); demand 2 is
  // alone in block 1 and reaches boundary supplier 1 together with demand 1.
  const TransportInstance inst = make_instance(
      {2, 2, 1}, {3, 10}, {{{0, 1.0}}, {{0, 2.0}, {1, 4.0}}, {{1, 1.0}}});
  const Decomposition dec =
      classify_suppliers(inst, Partition::from_labels(std::vector<int>{0, 0, 1}));
  ASSERT_EQ(dec.dualized, (std::vector<int>{1}));
  const std::vector<double> lambda{0.5};
  const auto sol = solve_block(0, inst, dec, lambda);
  // Restricted LP: supplier 0 cap 3, supplier 1 uncapacitated at cost + 0.5.
  const TransportInstance restricted = make_instance(
      {2, 2}, {3, 1e9}, {{{0, 1.0}}, {{0, 2.0}, {1, 4.5}}});
  EXPECT_NEAR(sol.objective, testing::min_cost_flow_oracle(restricted), 1e-9);
  double into_interior = 0.0;
  for (const ArcFlow& f : sol.flows) {
    if (inst.arc(f.arc).supplier == 0) into_interior += f.value;
  }
  EXPECT_LE(into_interior, 3.0 + 1e-7);
}

TEST(DualValue, HandEvaluatedBaseline) {
  const TransportInstance inst = make_instance({1, 1}, {1}, {{{0, 1.0}}, {{0, 2.0}}});
  const Decomposition dec = baseline_decomposition(inst);
  const std::vector<double> lambda{0.5};
  std::vector<double> objectives;
  for (int b = 0; b < dec.num_blocks(); ++b) {
    objectives.push_back(solve_block(b, inst, dec, lambda).objective);
  }
  EXPECT_EQ(objectives, (std::vector<double>{1.5, 2.5}));
  EXPECT_EQ(dual_value(inst, dec, lambda, objectives), 3.5);
  EXPECT_THROW(dual_value(inst, dec, lambda, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(DualValue, ZeroMultipliersGiveRelaxedOptimum) {
  const TransportInstance inst = testing::random_instance(8, 7, 5, 0.5);
  const Decomposition dec =
      classify_suppliers(inst, Partition::from_labels(std::vector<int>{0, 0, 0, 1, 1, 1, 1}));
  const std::vector<double> lambda(dec.num_dualized(), 0.0);
  std::vector<double> objectives;
  for (int b = 0; b < dec.num_blocks(); ++b) {
    objectives.push_back(solve_block(b, inst, dec, lambda).objective);
  }
  // Same instance with the dualized capacities removed.
  std::vector<double> m;
  std::vector<double> s;
  std::vector<std::vector<testing::ArcSpec>> access(inst.num_demands());
  for (int i = 0; i < inst.num_demands(); ++i) m.push_back(inst.demand(i).demand);
  for (int j = 0; j < inst.num_real_supplies(); ++j) {
    s.push_back(dec.dual_index[j] >= 0 ? 1e12 : inst.supply(j).capacity);
  }
  for (int i = 0; i < inst.num_demands(); ++i) {
    for (const AccessArc& a : inst.access(i)) {
      if (!inst.is_dummy(a.supplier)) access[i].push_back({a.supplier, a.cost});
    }
  }
  const double relaxed = testing::min_cost_flow_oracle(make_instance(m, s, access));
  const double g0 = dual_value(inst, dec, lambda, objectives);
  EXPECT_NEAR(g0, relaxed, 1e-6);
  EXPECT_LE(g0, solve_full(inst).objective + 1e-6);
}

TEST(ExpandMultipliers, Validates) {
  const TransportInstance inst = make_instance({1, 1}, {1, 1}, {{{0, 1.0}}, {{0, 1.0}, {1, 1.0}}});
  const Decomposition dec = baseline_decomposition(inst);
  EXPECT_EQ(expand_multipliers(dec, std::vector<double>{1.0, 2.0}, 3),
            (std::vector<double>{1.0, 2.0, 0.0}));
  EXPECT_THROW(expand_multipliers(dec, std::vector<double>{1.0}, 3), std::invalid_argument);
  EXPECT_THROW(expand_multipliers(dec, std::vector<double>{1.0, -1.0}, 3), std::invalid_argument);
}

TEST(BlockSolver, WarmSolvesMatchColdObjectives) {
  const TransportInstance inst = testing::random_instance(31, 14, 9, 0.35);
  std::vector<int> labels(14);
  for (int i = 0; i < 14; ++i) labels[i] = i / 5;
  const Decomposition dec = classify_suppliers(inst, Partition::from_labels(labels));
  std::vector<BlockSolver> solvers;
  for (int b = 0; b < dec.num_blocks(); ++b) solvers.emplace_back(inst, dec, b);
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> draw(0.0, 15.0);
  for (int round = 0; round < 15; ++round) {
    std::vector<double> lambda(dec.num_dualized());
    for (double& v : lambda) v = draw(gen);
    const auto supplier_lambda = expand_multipliers(dec, lambda, inst.num_supplies());
    for (int b = 0; b < dec.num_blocks(); ++b) {
      const auto warm = solvers[b].solve(supplier_lambda);
      const auto cold = solve_block(b, inst, dec, lambda);
      ASSERT_EQ(warm.status, LpStatus::kOptimal);
      EXPECT_NEAR(warm.objective, cold.objective, 1e-7 * std::max(1.0, cold.objective));
      for (std::size_t k = 1; k < warm.flows.size(); ++k) {
        EXPECT_LT(warm.flows[k - 1].arc, warm.flows[k].arc);
      }
    }
  }
}

TEST(SolutionCsv, NonzeroEntries) {
  const TransportInstance inst = make_instance({1, 1}, {1}, {{{0, 1.0}}, {{0, 2.0}}});
  std::ostringstream out;
  write_solution_csv(out, inst, solve_full(inst).solution.x);
  EXPECT_EQ(out.str(), "i,j,x_ij\n0,0,1\n1,1,1\n");
}

}  // namespace
}  // namespace vpart
