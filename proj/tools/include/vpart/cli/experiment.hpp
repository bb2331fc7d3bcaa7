#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vpart/community.hpp"
#include "vpart/decomposition.hpp"
#include "vpart/generator.hpp"
#include "vpart/instance.hpp"
#include "vpart/subgradient.hpp"

namespace vpart::cli {

// Bad arguments or configuration; the tool exits with status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { kBaseline, kBlock, kDistributedBlock };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

enum class Layout { kUniform, kMetro };

std::string_view to_string(Layout layout);
Layout parse_layout(std::string_view name);

struct InstanceSpec {
  GeneratorConfig generator;
  Layout layout = Layout::kUniform;
  double metro_exponent = 1.0;
  // Defaults to metro_exponent.
  std::optional<double> supply_exponent;
  // When set, d_max is calibrated to reach this average |J_i|.
  std::optional<double> target_access;
  // When set, the instance is read from this file instead of generated.
  std::optional<std::filesystem::path> file;
};

struct ExperimentConfig {
  InstanceSpec instance;
  // (n_demand, n_supply) pairs for compare; empty means the generator sizes.
  std::vector<std::pair<int, int>> sizes;
  std::vector<Method> methods = {Method::kBaseline, Method::kBlock,
                                 Method::kDistributedBlock};
  SolverParams params;
  // Worker count for distributed-block; block and baseline run with one.
  int distributed_width = 3;
  bool smart_baseline = false;
  std::filesystem::path out_dir = ".";
};

// Flat INI text with [instance], [solver] and [experiment] sections.
// Unknown sections or keys and malformed values raise UsageError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);
void check_experiment(const ExperimentConfig& config);

// Accepts plain reals and fractions such as "1/80".
double parse_number(std::string_view text);
// "500x500,1000x300"
std::vector<std::pair<int, int>> parse_sizes(std::string_view text);

// Generator config with the layout's weight tables filled in.
GeneratorConfig resolved_generator(const InstanceSpec& spec);
TransportInstance materialize(const InstanceSpec& spec);

struct BlockPipeline {
  WeightedGraph graph;
  Agglomeration agglomeration;
  Decomposition decomposition;
  double modularity = 0.0;
};

BlockPipeline block_pipeline(const TransportInstance& inst);

struct MethodRun {
  Method method = Method::kBlock;
  SolverTrace trace;
  int num_blocks = 0;
  int num_dualized = 0;
  double modularity = 0.0;  // of the block partition; 0 for baseline
  double seconds = 0.0;     // decomposition plus solve
};

// f* is taken from params.reference_optimum when set.
MethodRun run_method(const TransportInstance& inst, Method method,
                     const ExperimentConfig& config);

// Summary line: method, iterations, termination, seconds, |J^out|, B.
std::string summary_line(const MethodRun& run);

}  // namespace vpart::cli
