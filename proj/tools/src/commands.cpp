#include "vpart/cli/commands.hpp"

#include <fstream>
#include <ostream>
#include <string>

#include "vpart/instance_io.hpp"
#include "vpart/lp.hpp"

namespace vpart::cli {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_trace_file(const std::filesystem::path& path, const SolverTrace& trace) {
  std::ofstream out = open_output(path);
  write_trace_csv(out, trace);
  finish(out, path);
}

std::string trace_name(Method method) {
  return "trace_" + std::string(to_string(method)) + ".csv";
}

}  // namespace

int cmd_generate(const GenerateOptions& opts, std::ostream& out, std::ostream&) {
  if (opts.instance.file) throw UsageError("generate needs a generator config, not a file");
  const TransportInstance inst = materialize(opts.instance);
  save_instance(inst, opts.out);
  out << "wrote " << opts.out.string() << ": demands=" << inst.num_demands()
      << " supplies=" << inst.num_real_supplies() << " arcs=" << inst.num_arcs()
      << " d_max=" << format_real(inst.d_max())
      << " avg_access=" << format_real(inst.average_access()) << '\n';
  return 0;
}

int cmd_partition(const PartitionOptions& opts, std::ostream& out, std::ostream& err) {
  const TransportInstance inst = load_instance(opts.instance);
  const BlockPipeline p = block_pipeline(inst);
  if (p.graph.num_edges() == 0) {
    err << "warning: demand graph has no edges; every demand is its own block\n";
  }
  std::filesystem::create_directories(opts.out_dir);
  const auto partition_path = opts.out_dir / "partition.txt";
  const auto trace_path = opts.out_dir / "merge_trace.csv";
  const auto dec_path = opts.out_dir / "decomposition.csv";
  {
    auto f = open_output(partition_path);
    write_partition(f, p.agglomeration.partition);
    finish(f, partition_path);
  }
  {
    auto f = open_output(trace_path);
    write_merge_trace_csv(f, p.agglomeration.trace);
    finish(f, trace_path);
  }
  {
    auto f = open_output(dec_path);
    write_decomposition_csv(f, p.decomposition);
    finish(f, dec_path);
  }
  out << "blocks=" << p.decomposition.num_blocks()
      << " modularity=" << format_real(p.modularity)
      << " dualized=" << p.decomposition.num_dualized()
      << " interior=" << p.decomposition.interior.size() << '\n';
  return 0;
}

int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  check_experiment(opts.config);
  const TransportInstance inst = load_instance(opts.instance);
  const MethodRun run = run_method(inst, opts.method, opts.config);
  const auto path = opts.trace_out.value_or(opts.config.out_dir / trace_name(opts.method));
  write_trace_file(path, run.trace);
  out << summary_line(run) << '\n';
  if (run.trace.termination == Termination::kSolverFailure) {
    err << "error: " << run.trace.failure << '\n';
    return 1;
  }
  return 0;
}

int cmd_compare(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  check_experiment(config);
  std::vector<std::pair<int, int>> sizes = config.sizes;
  if (sizes.empty()) {
    sizes.emplace_back(config.instance.generator.n_demand,
                       config.instance.generator.n_supply);
  }
  std::filesystem::create_directories(config.out_dir);
  const auto table_path = config.out_dir / "compare.csv";
  std::ofstream table = open_output(table_path);
  const std::string header =
      "n_demand,n_supply,n_vars,iters_baseline,iters_block,time_baseline,"
      "time_block,time_dist_block,n_blocks";
  table << header << '\n';
  out << header << '\n';

  bool failed = false;
  for (const auto& [nd, ns] : sizes) {
    ExperimentConfig cfg = config;
    cfg.instance.generator.n_demand = nd;
    cfg.instance.generator.n_supply = ns;
    const TransportInstance inst = materialize(cfg.instance);
    if (!cfg.params.reference_optimum) {
      const LpReport full = solve_full(inst, cfg.params.lp);
      if (full.status != LpStatus::kOptimal) {
        throw std::runtime_error("full LP did not solve: " +
                                 std::string(to_string(full.status)));
      }
      cfg.params.reference_optimum = full.objective;
    }

    std::string iters[2], times[3], n_blocks;
    for (Method m : cfg.methods) {
      const MethodRun run = run_method(inst, m, cfg);
      const std::string tag = std::to_string(inst.num_demands()) + "x" +
                              std::to_string(inst.num_real_supplies());
      write_trace_file(cfg.out_dir / (tag + "_" + trace_name(m)), run.trace);
      err << tag << ' ' << summary_line(run) << '\n';
      if (run.trace.termination == Termination::kSolverFailure) {
        err << "error: " << run.trace.failure << '\n';
        failed = true;
      }
      const std::string secs = format_real(run.seconds);
      switch (m) {
        case Method::kBaseline:
          iters[0] = std::to_string(run.trace.iterations);
          times[0] = secs;
          break;
        case Method::kBlock:
          iters[1] = std::to_string(run.trace.iterations);
          times[1] = secs;
          n_blocks = std::to_string(run.num_blocks);
          break;
        case Method::kDistributedBlock:
          times[2] = secs;
          n_blocks = std::to_string(run.num_blocks);
          break;
      }
    }
    const std::string row = std::to_string(inst.num_demands()) + "," +
                            std::to_string(inst.num_real_supplies()) + "," +
                            std::to_string(inst.num_arcs()) + "," + iters[0] + "," +
                            iters[1] + "," + times[0] + "," + times[1] + "," +
                            times[2] + "," + n_blocks;
    table << row << '\n';
    out << row << '\n';
  }
  finish(table, table_path);
  return failed ? 1 : 0;
}

int cmd_bound(const BoundOptions& opts, std::ostream& out, std::ostream&) {
  if (!(opts.step_c > 0.0)) throw UsageError("step constant c must be positive");
  if (opts.horizon < 1) throw UsageError("horizon must be at least 1");
  if (!(opts.params.R >= 0.0) || !(opts.params.G >= 0.0)) {
    throw UsageError("R and G must be nonnegative");
  }
  const auto curve = bound_curve(opts.params, opts.step_c, opts.horizon);
  auto f = open_output(opts.out);
  write_bound_csv(f, curve);
  finish(f, opts.out);
  out << "wrote " << opts.out.string() << ": T=" << opts.horizon
      << " final=" << format_real(curve.back()) << '\n';
  return 0;
}

}  // namespace vpart::cli
