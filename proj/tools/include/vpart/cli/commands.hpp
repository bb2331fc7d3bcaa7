#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "vpart/cli/experiment.hpp"

namespace vpart::cli {

// Each command writes its artifacts, prints a summary to `out` and
// diagnostics to `err`, and returns the process exit code. Argument
// problems throw UsageError.

struct GenerateOptions {
  InstanceSpec instance;
  std::filesystem::path out = "instance.txt";
};
int cmd_generate(const GenerateOptions& opts, std::ostream& out, std::ostream& err);

struct PartitionOptions {
  std::filesystem::path instance;
  std::filesystem::path out_dir = ".";
};
// Writes partition.txt, merge_trace.csv and decomposition.csv.
int cmd_partition(const PartitionOptions& opts, std::ostream& out, std::ostream& err);

struct SolveOptions {
  std::filesystem::path instance;
  Method method = Method::kBlock;
  ExperimentConfig config;  // params, widths and out_dir
  // Defaults to <out_dir>/trace_<method>.csv.
  std::optional<std::filesystem::path> trace_out;
};
int cmd_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);

// Writes <out_dir>/compare.csv plus one trace per instance and method.
int cmd_compare(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

struct BoundOptions {
  BoundParams params;
  double step_c = 1.0 / 80.0;
  long horizon = 1000;
  std::filesystem::path out = "bound.csv";
};
int cmd_bound(const BoundOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace vpart::cli
