#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "vpart/cli/commands.hpp"
#include "vpart/community.hpp"
#include "vpart/instance_io.hpp"

namespace vpart::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vpart_cli_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  static InstanceSpec small_spec(double target = 6.0) {
    InstanceSpec spec;
    spec.generator.n_demand = 60;
    spec.generator.n_supply = 30;
    spec.generator.seed = 7;
    spec.layout = Layout::kMetro;
    spec.target_access = target;
    return spec;
  }

  fs::path generate(const InstanceSpec& spec, const std::string& name) {
    GenerateOptions opts{spec, dir_ / name};
    std::ostringstream out, err;
    EXPECT_EQ(cmd_generate(opts, out, err), 0);
    return opts.out;
  }

  fs::path dir_;
};

TEST_F(CliTest, GenerateIsDeterministicAndReportsAccess) {
  const auto a = generate(small_spec(), "a.txt");
  const auto b = generate(small_spec(), "b.txt");
  EXPECT_EQ(slurp(a), slurp(b));

  GenerateOptions opts{small_spec(), dir_ / "c.txt"};
  std::ostringstream out, err;
  cmd_generate(opts, out, err);
  EXPECT_NE(out.str().find("demands=60"), std::string::npos);
  EXPECT_NE(out.str().find("avg_access=6"), std::string::npos);
}

TEST_F(CliTest, AccessGrowsWithRadius) {
  double previous = -1.0;
  for (double d : {20.0, 25.0, 30.0}) {
    InstanceSpec spec = small_spec();
    spec.target_access.reset();
    spec.generator.n_demand = 150;
    spec.generator.n_supply = 50;
    spec.generator.d_max = d;
    const auto inst = load_instance(generate(spec, "d.txt"));
    EXPECT_GT(inst.average_access(), previous);
    previous = inst.average_access();
  }
}

TEST_F(CliTest, GenerateRejectsZeroDemands) {
  InstanceSpec spec = small_spec();
  spec.generator.n_demand = 0;
  GenerateOptions opts{spec, dir_ / "x.txt"};
  std::ostringstream out, err;
  EXPECT_THROW(cmd_generate(opts, out, err), UsageError);
}

TEST_F(CliTest, PartitionWritesArtifactsAndFindsCommunities) {
  const auto inst = generate(small_spec(), "a.txt");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_partition({inst, dir_ / "p"}, out, err), 0);
  EXPECT_TRUE(fs::exists(dir_ / "p" / "partition.txt"));
  EXPECT_EQ(slurp(dir_ / "p" / "merge_trace.csv").rfind("step,a,b,delta_q,q\n", 0), 0u);
  EXPECT_EQ(slurp(dir_ / "p" / "decomposition.csv").rfind("supplier_id,class,block\n", 0), 0u);
  const auto pos = out.str().find("modularity=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_GT(std::stod(out.str().substr(pos + 11)), 0.3);
  EXPECT_TRUE(err.str().empty());
}

TEST_F(CliTest, PartitionWarnsOnEdgelessInstance) {
  InstanceSpec spec = small_spec();
  spec.target_access.reset();
  spec.generator.d_max = 0.0;
  const auto inst = generate(spec, "e.txt");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_partition({inst, dir_ / "p"}, out, err), 0);
  EXPECT_NE(err.str().find("warning"), std::string::npos);
  EXPECT_NE(out.str().find("blocks=60"), std::string::npos);
}

TEST_F(CliTest, PartitionOfOneCliqueIsOneBlock) {
  InstanceSpec spec = small_spec();
  spec.target_access.reset();
  spec.generator.n_demand = 8;
  spec.generator.n_supply = 4;
  spec.generator.d_max = 1000.0;  // every demand reaches every supplier
  const auto inst = generate(spec, "k.txt");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_partition({inst, dir_ / "p"}, out, err), 0);
  EXPECT_NE(out.str().find("blocks=1 "), std::string::npos) << out.str();
}

TEST_F(CliTest, PartitionOfMissingFileFails) {
  std::ostringstream out, err;
  EXPECT_ANY_THROW(cmd_partition({dir_ / "missing.txt", dir_}, out, err));
}

TEST_F(CliTest, SolveBothMethodsReachGapAndBlockIsFaster) {
  const auto inst = generate(small_spec(), "a.txt");
  long iters[2] = {0, 0};
  int k = 0;
  for (Method m : {Method::kBaseline, Method::kBlock}) {
    SolveOptions opts;
    opts.instance = inst;
    opts.method = m;
    opts.config.params.step_c = 0.1;
    opts.config.out_dir = dir_;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_solve(opts, out, err), 0);
    EXPECT_NE(out.str().find("status=gap-reached"), std::string::npos) << out.str();
    const auto pos = out.str().find("iterations=");
    iters[k++] = std::stol(out.str().substr(pos + 11));
    EXPECT_TRUE(fs::exists(dir_ / ("trace_" + std::string(to_string(m)) + ".csv")));
  }
  EXPECT_LT(iters[1], iters[0]);
}

TEST_F(CliTest, SolveStopsAtIterationLimit) {
  const auto inst = generate(small_spec(), "a.txt");
  SolveOptions opts;
  opts.instance = inst;
  opts.method = Method::kBaseline;
  opts.config.params.max_iterations = 10;
  opts.config.out_dir = dir_;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_solve(opts, out, err), 0);
  EXPECT_NE(out.str().find("iterations=10 status=max-iterations"), std::string::npos)
      << out.str();
}

TEST_F(CliTest, DistributedBlockMatchesBlock) {
  const auto inst = generate(small_spec(10.0), "a.txt");
  std::string traces[2];
  int k = 0;
  for (Method m : {Method::kBlock, Method::kDistributedBlock}) {
    SolveOptions opts;
    opts.instance = inst;
    opts.method = m;
    opts.config.params.step_c = 0.02;
    opts.config.params.gap_target = 0.001;
    opts.config.params.max_iterations = 200;
    opts.trace_out = dir_ / ("t" + std::to_string(k) + ".csv");
    std::ostringstream out, err;
    ASSERT_EQ(cmd_solve(opts, out, err), 0);
    std::ostringstream stripped;
    const auto trace = slurp(*opts.trace_out);
    std::istringstream lines(trace);
    for (std::string line; std::getline(lines, line);) {
      // drop the timing column before comparing
      std::istringstream cells(line);
      std::string cell;
      int col = 0;
      while (std::getline(cells, cell, ',')) {
        if (col++ != 5) stripped << cell << ',';
      }
      stripped << '\n';
    }
    traces[k++] = stripped.str();
  }
  EXPECT_EQ(traces[0], traces[1]);
}

TEST_F(CliTest, CompareMatchesSeparateSolves) {
  ExperimentConfig config;
  config.instance = small_spec();
  config.params.step_c = 0.1;
  config.out_dir = dir_ / "cmp";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_compare(config, out, err), 0);
  const std::string table = slurp(dir_ / "cmp" / "compare.csv");
  std::istringstream lines(table);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header,
            "n_demand,n_supply,n_vars,iters_baseline,iters_block,time_baseline,"
            "time_block,time_dist_block,n_blocks");
  std::vector<std::string> cells;
  std::istringstream rs(row);
  for (std::string c; std::getline(rs, c, ',');) cells.push_back(c);
  ASSERT_EQ(cells.size(), 9u);

  const auto inst = generate(small_spec(), "a.txt");
  for (auto [m, col] : {std::pair{Method::kBaseline, 3}, std::pair{Method::kBlock, 4}}) {
    SolveOptions opts;
    opts.instance = inst;
    opts.method = m;
    opts.config = config;
    opts.config.out_dir = dir_;
    std::ostringstream o, e;
    ASSERT_EQ(cmd_solve(opts, o, e), 0);
    EXPECT_NE(o.str().find("iterations=" + cells[col] + " "), std::string::npos) << o.str();
  }
}

TEST_F(CliTest, SingleMethodCompareHasOneRow) {
  ExperimentConfig config;
  config.instance = small_spec();
  config.methods = {Method::kBlock};
  config.params.step_c = 0.1;
  config.out_dir = dir_;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_compare(config, out, err), 0);
  const std::string table = slurp(dir_ / "compare.csv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 2);
  EXPECT_NE(table.find(",,"), std::string::npos);  // baseline cells empty
}

TEST_F(CliTest, CompareRunsEverySize) {
  ExperimentConfig config;
  config.instance = small_spec();
  config.sizes = {{30, 20}, {60, 30}};
  config.methods = {Method::kBlock};
  config.params.step_c = 0.1;
  config.out_dir = dir_;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_compare(config, out, err), 0);
  const std::string table = slurp(dir_ / "compare.csv");
  EXPECT_NE(table.find("\n30,20,"), std::string::npos);
  EXPECT_NE(table.find("\n60,30,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "30x20_trace_block.csv"));
}

TEST_F(CliTest, BoundWritesCurveAndRejectsBadStep) {
  BoundOptions opts;
  opts.params = {1.0, 1.0};
  opts.step_c = 1.0;
  opts.horizon = 2;
  opts.out = dir_ / "b.csv";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_bound(opts, out, err), 0);
  EXPECT_EQ(slurp(opts.out), "t,bound\n1,1\n2,0.75\n");
  opts.step_c = 0.0;
  EXPECT_THROW(cmd_bound(opts, out, err), UsageError);
}

TEST(ConfigTest, ParsesSectionsFractionsAndLists) {
  std::istringstream in(
      "[instance]\nn_demand = 120\nn_supply=40\nlayout = metro\nsupply_exponent = 0.75\n"
      "target_access = 12\nsizes = 100x50, 200x80\n"
      "[solver]\nstep_c = 1/50\ngap = 0.02\nmax_iters = 300\nwidth = 2\nsmart_baseline = yes\n"
      "[experiment]\nmethods = baseline, block\nout_dir = results\n");
  const ExperimentConfig c = parse_config(in);
  EXPECT_EQ(c.instance.generator.n_demand, 120);
  EXPECT_EQ(c.instance.layout, Layout::kMetro);
  EXPECT_EQ(*c.instance.supply_exponent, 0.75);
  EXPECT_EQ(*c.instance.target_access, 12.0);
  EXPECT_EQ(c.sizes, (std::vector<std::pair<int, int>>{{100, 50}, {200, 80}}));
  EXPECT_DOUBLE_EQ(c.params.step_c, 0.02);
  EXPECT_EQ(c.params.max_iterations, 300);
  EXPECT_EQ(c.distributed_width, 2);
  EXPECT_TRUE(c.smart_baseline);
  EXPECT_EQ(c.methods, (std::vector<Method>{Method::kBaseline, Method::kBlock}));
  EXPECT_EQ(c.out_dir, "results");
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  std::istringstream unknown("[solver]\nstepsize = 1\n");
  EXPECT_THROW(parse_config(unknown), UsageError);
  std::istringstream section("[output]\nx = 1\n");
  EXPECT_THROW(parse_config(section), UsageError);
  std::istringstream value("[instance]\nn_demand = many\n");
  EXPECT_THROW(parse_config(value), UsageError);
  std::istringstream method("[experiment]\nmethods = admm\n");
  EXPECT_THROW(parse_config(method), UsageError);
}

TEST(ConfigTest, ChecksMethodsAndFiles) {
  ExperimentConfig c;
  c.methods.clear();
  EXPECT_THROW(check_experiment(c), UsageError);
  c.methods = {Method::kBlock};
  c.instance.file = "/nonexistent/instance.txt";
  EXPECT_THROW(check_experiment(c), UsageError);
  c.instance.file.reset();
  EXPECT_NO_THROW(check_experiment(c));
  c.params.step_c = -1.0;
  EXPECT_THROW(check_experiment(c), UsageError);
}

TEST(ConfigTest, ParsesNumbers) {
  EXPECT_DOUBLE_EQ(parse_number("1/80"), 0.0125);
  EXPECT_DOUBLE_EQ(parse_number(" 2.5 "), 2.5);
  EXPECT_THROW(parse_number("1/0"), UsageError);
  EXPECT_THROW(parse_number("abc"), UsageError);
  EXPECT_THROW(parse_sizes("100by50"), UsageError);
}

}  // namespace
}  // namespace vpart::cli
