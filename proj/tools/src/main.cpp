#include <CLI11.hpp>

#include <iostream>

#include "vpart/cli/commands.hpp"

namespace {

using namespace vpart;
using namespace vpart::cli;

// Flags shared by generate and compare that shape the generated instance.
struct InstanceFlags {
  GeneratorConfig defaults;
  std::uint64_t seed = defaults.seed;
  int demands = defaults.n_demand;
  int supplies = defaults.n_supply;
  double dmax = defaults.d_max;
  double target_access = 0.0;
  std::string layout = "uniform";
  double metro_exponent = 1.0;
  double supply_exponent = 1.0;
  std::vector<CLI::Option*> opts;

  void attach(CLI::App* app) {
    opts = {
        app->add_option("--seed", seed, "Generator seed")->capture_default_str(),
        app->add_option("--demands", demands, "Number of demand locations")->capture_default_str(),
        app->add_option("--supplies", supplies, "Number of real suppliers")->capture_default_str(),
        app->add_option("--dmax", dmax, "Access radius in miles")->capture_default_str(),
        app->add_option("--target-access", target_access,
                        "Calibrate the radius to this average |J_i| (overrides --dmax)"),
        app->add_option("--layout", layout, "Cell weights: uniform or metro")->capture_default_str(),
        app->add_option("--metro-exponent", metro_exponent,
                        "Exponent applied to metro demand weights")->capture_default_str(),
        app->add_option("--supply-exponent", supply_exponent,
                        "Exponent applied to metro supply weights (default: metro exponent)"),
    };
  }

  void apply(InstanceSpec& spec) const {
    if (opts[0]->count()) spec.generator.seed = seed;
    if (opts[1]->count()) spec.generator.n_demand = demands;
    if (opts[2]->count()) spec.generator.n_supply = supplies;
    if (opts[3]->count()) {
      spec.generator.d_max = dmax;
      spec.target_access.reset();
    }
    if (opts[4]->count()) spec.target_access = target_access;
    if (opts[5]->count()) spec.layout = parse_layout(layout);
    if (opts[6]->count()) spec.metro_exponent = metro_exponent;
    if (opts[7]->count()) spec.supply_exponent = supply_exponent;
  }
};

// Flags that set solver parameters.
struct SolverFlags {
  SolverParams defaults;
  std::string step_c = "1/80";
  double gap = defaults.gap_target;
  long max_iters = defaults.max_iterations;
  int width = 3;
  bool smart = false;
  std::vector<CLI::Option*> opts;

  void attach(CLI::App* app) {
    opts = {
        app->add_option("--step-c", step_c, "Step constant c in alpha_t = c/t; fractions allowed")
            ->capture_default_str(),
        app->add_option("--gap", gap, "Relative optimality gap target")->capture_default_str(),
        app->add_option("--max-iters", max_iters, "Iteration limit")->capture_default_str(),
        app->add_option("--width", width, "Concurrent block solves for distributed-block")
            ->capture_default_str(),
        app->add_flag("--smart-baseline", smart,
                      "Keep suppliers that serve a single demand inside its block"),
    };
  }

  void apply(ExperimentConfig& config) const {
    if (opts[0]->count()) config.params.step_c = parse_number(step_c);
    if (opts[1]->count()) config.params.gap_target = gap;
    if (opts[2]->count()) config.params.max_iterations = max_iters;
    if (opts[3]->count()) config.distributed_width = width;
    if (opts[4]->count()) config.smart_baseline = smart;
  }
};

ExperimentConfig base_config(const std::string& path) {
  return path.empty() ? ExperimentConfig{} : load_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block dual decomposition for transportation LPs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  std::function<int()> action;

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a synthetic instance");
  std::string gen_config, gen_out = "instance.txt";
  InstanceFlags gen_flags;
  gen->add_option("--config", gen_config, "INI config ([instance] section)");
  gen->add_option("--out", gen_out, "Instance file to write")->capture_default_str();
  gen_flags.attach(gen);
  gen->callback([&] {
    action = [&] {
      GenerateOptions opts;
      opts.instance = base_config(gen_config).instance;
      gen_flags.apply(opts.instance);
      opts.out = gen_out;
      return cmd_generate(opts, std::cout, std::cerr);
    };
  });

  // partition
  auto* part = app.add_subcommand("partition", "Detect communities and classify suppliers");
  PartitionOptions part_opts;
  std::string part_instance, part_out = ".";
  part->add_option("instance", part_instance, "Instance file")->required();
  part->add_option("--out", part_out, "Output directory")->capture_default_str();
  part->callback([&] {
    action = [&] {
      part_opts.instance = part_instance;
      part_opts.out_dir = part_out;
      return cmd_partition(part_opts, std::cout, std::cerr);
    };
  });

  // solve
  auto* solve = app.add_subcommand("solve", "Run one method to the gap target");
  std::string solve_instance, solve_method = "block", solve_out, solve_config;
  SolverFlags solve_flags;
  solve->add_option("instance", solve_instance, "Instance file")->required();
  solve->add_option("--method", solve_method, "baseline, block or distributed-block")
      ->capture_default_str();
  solve->add_option("--out", solve_out, "Trace CSV (default: trace_<method>.csv)");
  solve->add_option("--config", solve_config, "INI config ([solver] section)");
  solve_flags.attach(solve);
  solve->callback([&] {
    action = [&] {
      SolveOptions opts;
      opts.instance = solve_instance;
      opts.method = parse_method(solve_method);
      opts.config = base_config(solve_config);
      solve_flags.apply(opts.config);
      if (!solve_out.empty()) opts.trace_out = solve_out;
      return cmd_solve(opts, std::cout, std::cerr);
    };
  });

  // compare
  auto* cmp = app.add_subcommand("compare", "Run several methods and tabulate iterations and times");
  std::string cmp_config, cmp_out, cmp_instance, cmp_sizes;
  std::vector<std::string> cmp_methods;
  InstanceFlags cmp_inst_flags;
  SolverFlags cmp_solver_flags;
  cmp->add_option("--config", cmp_config, "INI config");
  cmp->add_option("--out", cmp_out, "Output directory (default: current directory)");
  cmp->add_option("--instance", cmp_instance, "Use this instance file instead of generating");
  cmp->add_option("--sizes", cmp_sizes, "Generated sizes, e.g. 500x500,1000x300");
  cmp->add_option("--method", cmp_methods, "Methods to run (default: all three)");
  cmp_inst_flags.attach(cmp);
  cmp_solver_flags.attach(cmp);
  cmp->callback([&] {
    action = [&] {
      ExperimentConfig config = base_config(cmp_config);
      cmp_inst_flags.apply(config.instance);
      cmp_solver_flags.apply(config);
      if (!cmp_out.empty()) config.out_dir = cmp_out;
      if (!cmp_instance.empty()) config.instance.file = cmp_instance;
      if (!cmp_sizes.empty()) config.sizes = parse_sizes(cmp_sizes);
      if (!cmp_methods.empty()) {
        config.methods.clear();
        for (const auto& m : cmp_methods) config.methods.push_back(parse_method(m));
      }
      return cmd_compare(config, std::cout, std::cerr);
    };
  });

  // bound
  auto* bound = app.add_subcommand("bound", "Tabulate the subgradient error bound");
  BoundOptions bound_opts;
  std::string bound_c = "1/80", bound_out = "bound.csv";
  bound->add_option("--R", bound_opts.params.R, "Distance from start to an optimum")->required();
  bound->add_option("--G", bound_opts.params.G, "Subgradient norm bound")->required();
  bound->add_option("--step-c", bound_c, "Step constant c")->capture_default_str();
  bound->add_option("--horizon,-T", bound_opts.horizon, "Iterations")->capture_default_str();
  bound->add_option("--out", bound_out, "Bound CSV")->capture_default_str();
  bound->callback([&] {
    action = [&] {
      bound_opts.step_c = parse_number(bound_c);
      bound_opts.out = bound_out;
      return cmd_bound(bound_opts, std::cout, std::cerr);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
