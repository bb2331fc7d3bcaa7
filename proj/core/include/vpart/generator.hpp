#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vpart/instance.hpp"

namespace vpart {

struct Region {
  double width = 300.0;   // miles
  double height = 300.0;  // miles
};

// Spatial blocks; cell index = row * columns + column, row 0 at y = 0.
struct GridShape {
  int columns = 10;
  int rows = 5;
  int cells() const { return columns * rows; }
};

enum class CapacityMode {
  kRatio,    // draw spreads in [capacity_min, capacity_max], rescale so
             // that total capacity = capacity_ratio * total demand
  kUniform,  // draw integers in [capacity_min, capacity_max] as-is
};

struct GeneratorConfig {
  int n_demand = 500;
  int n_supply = 500;
  double d_max = 20.0;
  Region region;
  GridShape grid;
  // Per-cell weights for location counts. Empty demand weights mean uniform;
  // empty supply weights mean "same as demand weights".
  std::vector<double> demand_weights;
  std::vector<double> supply_weights;
  int demand_min = 2500;
  int demand_max = 8000;
  CapacityMode capacity_mode = CapacityMode::kRatio;
  double capacity_ratio = 1.2;
  int capacity_min = 2500;
  int capacity_max = 8000;
  double dummy_cost = 1000.0;
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument describing the first problem found.
void check_config(const GeneratorConfig& config);

// Largest-remainder apportionment of `total` over `weights`; remainder ties
// go to the lower index. Throws on zero or negative total weight.
std::vector<int> allocate_counts(int total, std::span<const double> weights);

// A weight table with a few dense, mutually separated metro cells over a
// sparse background, for the 10x5 default grid (other shapes get the table
// resampled onto their cells). Each weight is raised to `exponent`; values
// below 1 flatten the metros, 0 gives uniform weights.
std::vector<double> metro_weights(const GridShape& grid, double exponent = 1.0);

// Deterministic in config.seed. Locations are drawn cell by cell; positions,
// demands and capacities do not depend on d_max, so two configs that differ
// only in d_max produce nested access sets. The dummy supplier is the last
// supplier (id n_supply) with infinite capacity.
TransportInstance generate_instance(const GeneratorConfig& config);

// Smallest d_max whose generated instance has average |J_i| (dummy
// excluded) of at least `target_access`. Exact: it is an order statistic of
// the demand-supplier distances, which do not depend on d_max.
double calibrate_dmax(const GeneratorConfig& config, double target_access);

}  // namespace vpart
