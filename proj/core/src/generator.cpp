#include "vpart/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "vpart/rng.hpp"

namespace vpart {
namespace {

struct SampledLocations {
  std::vector<Point> demand_positions;
  std::vector<Point> supply_positions;
  std::vector<double> demands;
  std::vector<double> capacities;
};

std::vector<double> resolve_weights(const std::vector<double>& weights,
                                    const GridShape& grid) {
  if (weights.empty()) return std::vector<double>(grid.cells(), 1.0);
  return weights;
}

void check_weights(const std::vector<double>& weights, const GridShape& grid,
                   const char* what) {
  if (weights.empty()) return;
  if (static_cast<int>(weights.size()) != grid.cells()) {
    throw std::invalid_argument(std::string(what) + " has " +
                                std::to_string(weights.size()) +
                                " entries, grid has " +
                                std::to_string(grid.cells()) + " cells");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument(std::string(what) +
                                  " contains a negative or non-finite weight");
    }
    total += w;
  }
  if (total <= 0.0) {
    throw std::invalid_argument(std::string(what) + " has zero total weight");
  }
}

std::vector<Point> sample_positions(Rng& rng, const std::vector<int>& counts,
                                    const GeneratorConfig& config) {
  const double cell_w = config.region.width / config.grid.columns;
  const double cell_h = config.region.height / config.grid.rows;
  std::vector<Point> out;
  for (int cell = 0; cell < config.grid.cells(); ++cell) {
    const double x0 = (cell % config.grid.columns) * cell_w;
    const double y0 = (cell / config.grid.columns) * cell_h;
    for (int k = 0; k < counts[cell]; ++k) {
      const double x = x0 + cell_w * rng.uniform01();
      const double y = y0 + cell_h * rng.uniform01();
      out.push_back({x, y});
    }
  }
  return out;
}

SampledLocations sample_locations(const GeneratorConfig& config) {
  check_config(config);
  const auto demand_weights = resolve_weights(config.demand_weights, config.grid);
  const auto supply_weights =
      config.supply_weights.empty() ? demand_weights : config.supply_weights;

  Rng rng(config.seed);
  SampledLocations s;
  s.demand_positions =
      sample_positions(rng, allocate_counts(config.n_demand, demand_weights), config);
  s.supply_positions =
      sample_positions(rng, allocate_counts(config.n_supply, supply_weights), config);

  s.demands.reserve(config.n_demand);
  for (int i = 0; i < config.n_demand; ++i) {
    s.demands.push_back(
        static_cast<double>(rng.uniform_int(config.demand_min, config.demand_max)));
  }

  s.capacities.reserve(config.n_supply);
  for (int j = 0; j < config.n_supply; ++j) {
    s.capacities.push_back(static_cast<double>(
        rng.uniform_int(config.capacity_min, config.capacity_max)));
  }
  if (config.capacity_mode == CapacityMode::kRatio) {
    const double total_demand =
        std::accumulate(s.demands.begin(), s.demands.end(), 0.0);
    const double total_spread =
        std::accumulate(s.capacities.begin(), s.capacities.end(), 0.0);
    const double scale = config.capacity_ratio * total_demand / total_spread;
    for (double& c : s.capacities) c = std::round(c * scale);
  }
  return s;
}

}  // namespace

void check_config(const GeneratorConfig& config) {
  if (config.n_demand <= 0) {
    throw std::invalid_argument("n_demand must be positive");
  }
  if (config.n_supply <= 0) {
    throw std::invalid_argument("n_supply must be positive");
  }
  if (!(config.d_max >= 0.0)) {
    throw std::invalid_argument("d_max must be nonnegative");
  }
  if (!(config.region.width > 0.0) || !(config.region.height > 0.0)) {
    throw std::invalid_argument("region must have positive width and height");
  }
  if (config.grid.columns <= 0 || config.grid.rows <= 0) {
    throw std::invalid_argument("grid must have positive columns and rows");
  }
  check_weights(config.demand_weights, config.grid, "demand_weights");
  check_weights(config.supply_weights, config.grid, "supply_weights");
  if (config.demand_min < 0 || config.demand_max < config.demand_min) {
    throw std::invalid_argument("demand range must satisfy 0 <= min <= max");
  }
  if (config.capacity_min < 0 || config.capacity_max < config.capacity_min) {
    throw std::invalid_argument("capacity range must satisfy 0 <= min <= max");
  }
  if (config.capacity_mode == CapacityMode::kRatio) {
    if (!(config.capacity_ratio > 0.0)) {
      throw std::invalid_argument("capacity_ratio must be positive");
    }
    if (config.capacity_max == 0) {
      throw std::invalid_argument("capacity spread range must not be all zero");
    }
  }
  if (!(config.dummy_cost >= 0.0) || !std::isfinite(config.dummy_cost)) {
    throw std::invalid_argument("dummy_cost must be finite and nonnegative");
  }
}

std::vector<int> allocate_counts(int total, std::span<const double> weights) {
  if (total < 0) throw std::invalid_argument("negative total");
  double weight_sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative block weight");
    weight_sum += w;
  }
  if (!(weight_sum > 0.0)) {
    throw std::invalid_argument("zero total block weight");
  }

  const std::size_t n = weights.size();
  std::vector<int> counts(n);
  std::vector<double> remainder(n);
  int assigned = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double quota = total * weights[k] / weight_sum;
    counts[k] = static_cast<int>(std::floor(quota));
    remainder[k] = quota - counts[k];
    assigned += counts[k];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b];
  });
  // The floor sum falls short of total by fewer than n units.
  for (std::size_t r = 0; assigned < total; r = (r + 1) % n) {
    ++counts[order[r]];
    ++assigned;
  }
  return counts;
}

std::vector<double> metro_weights(const GridShape& grid, double exponent) {
  if (!std::isfinite(exponent)) throw std::invalid_argument("exponent must be finite");
  // Rows listed bottom to top; five metros over a unit background.
  static constexpr double kTable[5][10] = {
      {1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
      {1, 8, 1, 1, 1, 1, 1, 1, 10, 1},
      {1, 1, 1, 1, 1, 30, 1, 1, 1, 1},
      {1, 1, 12, 1, 1, 1, 1, 18, 1, 1},
      {1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
  };
  std::vector<double> out(grid.cells());
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.columns; ++c) {
      const int tr = (2 * r + 1) * 5 / (2 * grid.rows);
      const int tc = (2 * c + 1) * 10 / (2 * grid.columns);
      out[r * grid.columns + c] = std::pow(kTable[tr][tc], exponent);
    }
  }
  return out;
}

TransportInstance generate_instance(const GeneratorConfig& config) {
  const SampledLocations s = sample_locations(config);

  std::vector<DemandLocation> demands;
  demands.reserve(config.n_demand);
  for (int i = 0; i < config.n_demand; ++i) {
    demands.push_back({i, s.demand_positions[i], s.demands[i]});
  }
  std::vector<SupplyLocation> supplies;
  supplies.reserve(config.n_supply + 1);
  for (int j = 0; j < config.n_supply; ++j) {
    supplies.push_back({j, s.supply_positions[j], s.capacities[j], false});
  }
  const int dummy = config.n_supply;
  supplies.push_back({dummy, Point{}, std::numeric_limits<double>::infinity(), true});

  std::vector<std::vector<AccessArc>> access(config.n_demand);
  for (int i = 0; i < config.n_demand; ++i) {
    for (int j = 0; j < config.n_supply; ++j) {
      const double d = distance(s.demand_positions[i], s.supply_positions[j]);
      if (d <= config.d_max) access[i].push_back({j, d});
    }
    access[i].push_back({dummy, config.dummy_cost});
  }
  return TransportInstance(std::move(demands), std::move(supplies), access,
                           config.d_max, config.dummy_cost);
}

double calibrate_dmax(const GeneratorConfig& config, double target_access) {
  if (!(target_access >= 0.0)) {
    throw std::invalid_argument("target access must be nonnegative");
  }
  const SampledLocations s = sample_locations(config);
  std::vector<double> distances;
  distances.reserve(static_cast<std::size_t>(config.n_demand) * config.n_supply);
  for (const Point& p : s.demand_positions) {
    for (const Point& q : s.supply_positions) distances.push_back(distance(p, q));
  }
  const double needed = std::ceil(target_access * config.n_demand - 1e-9);
  if (needed <= 0.0) return 0.0;
  const auto k = static_cast<std::size_t>(
      std::min<double>(needed, static_cast<double>(distances.size())));
  std::nth_element(distances.begin(), distances.begin() + (k - 1), distances.end());
  return distances[k - 1];
}

}  // namespace vpart
