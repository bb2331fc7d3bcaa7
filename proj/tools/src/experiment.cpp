#include "vpart/cli/experiment.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "vpart/instance_io.hpp"
#include "vpart/lp.hpp"

namespace vpart::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

long parse_long(std::string_view text) {
  const std::string t = trim(text);
  long value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw UsageError("expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw UsageError("expected a boolean, got '" + std::string(text) + "'");
}

CapacityMode parse_capacity_mode(std::string_view text) {
  const std::string t = trim(text);
  if (t == "ratio") return CapacityMode::kRatio;
  if (t == "uniform") return CapacityMode::kUniform;
  throw UsageError("unknown capacity mode '" + t + "' (expected ratio or uniform)");
}

std::vector<Method> parse_methods(std::string_view text) {
  std::vector<Method> out;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    std::istringstream words(token);
    std::string word;
    while (words >> word) out.push_back(parse_method(word));
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& config_keys() {
  static const std::map<std::string, std::map<std::string, Setter>> keys = {
      {"instance",
       {
           {"file", [](ExperimentConfig& c, const std::string& v) { c.instance.file = trim(v); }},
           {"n_demand", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.n_demand = static_cast<int>(parse_long(v)); }},
           {"n_supply", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.n_supply = static_cast<int>(parse_long(v)); }},
           {"d_max", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.d_max = parse_number(v); }},
           {"target_access", [](ExperimentConfig& c, const std::string& v) {
              c.instance.target_access = parse_number(v); }},
           {"seed", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.seed = static_cast<std::uint64_t>(parse_long(v)); }},
           {"layout", [](ExperimentConfig& c, const std::string& v) {
              c.instance.layout = parse_layout(trim(v)); }},
           {"metro_exponent", [](ExperimentConfig& c, const std::string& v) {
              c.instance.metro_exponent = parse_number(v); }},
           {"supply_exponent", [](ExperimentConfig& c, const std::string& v) {
              c.instance.supply_exponent = parse_number(v); }},
           {"region_width", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.region.width = parse_number(v); }},
           {"region_height", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.region.height = parse_number(v); }},
           {"grid_columns", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.grid.columns = static_cast<int>(parse_long(v)); }},
           {"grid_rows", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.grid.rows = static_cast<int>(parse_long(v)); }},
           {"demand_min", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.demand_min = static_cast<int>(parse_long(v)); }},
           {"demand_max", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.demand_max = static_cast<int>(parse_long(v)); }},
           {"capacity_mode", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.capacity_mode = parse_capacity_mode(v); }},
           {"capacity_ratio", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.capacity_ratio = parse_number(v); }},
           {"capacity_min", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.capacity_min = static_cast<int>(parse_long(v)); }},
           {"capacity_max", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.capacity_max = static_cast<int>(parse_long(v)); }},
           {"dummy_cost", [](ExperimentConfig& c, const std::string& v) {
              c.instance.generator.dummy_cost = parse_number(v); }},
           {"sizes", [](ExperimentConfig& c, const std::string& v) { c.sizes = parse_sizes(v); }},
       }},
      {"solver",
       {
           {"step_c", [](ExperimentConfig& c, const std::string& v) { c.params.step_c = parse_number(v); }},
           {"gap", [](ExperimentConfig& c, const std::string& v) { c.params.gap_target = parse_number(v); }},
           {"max_iters", [](ExperimentConfig& c, const std::string& v) { c.params.max_iterations = parse_long(v); }},
           {"width", [](ExperimentConfig& c, const std::string& v) {
              c.distributed_width = static_cast<int>(parse_long(v)); }},
           {"smart_baseline", [](ExperimentConfig& c, const std::string& v) { c.smart_baseline = parse_bool(v); }},
       }},
      {"experiment",
       {
           {"methods", [](ExperimentConfig& c, const std::string& v) { c.methods = parse_methods(v); }},
           {"out_dir", [](ExperimentConfig& c, const std::string& v) { c.out_dir = trim(v); }},
       }},
  };
  return keys;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kBaseline: return "baseline";
    case Method::kBlock: return "block";
    case Method::kDistributedBlock: return "distributed-block";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "baseline") return Method::kBaseline;
  if (name == "block") return Method::kBlock;
  if (name == "distributed-block") return Method::kDistributedBlock;
  throw UsageError("unknown method '" + std::string(name) +
                   "' (expected baseline, block or distributed-block)");
}

std::string_view to_string(Layout layout) {
  return layout == Layout::kMetro ? "metro" : "uniform";
}

Layout parse_layout(std::string_view name) {
  if (name == "uniform") return Layout::kUniform;
  if (name == "metro") return Layout::kMetro;
  throw UsageError("unknown layout '" + std::string(name) + "' (expected uniform or metro)");
}

double parse_number(std::string_view text) {
  const std::string t = trim(text);
  auto parse_plain = [&text](std::string_view s) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("expected a number, got '" + std::string(text) + "'");
    }
    return value;
  };
  const auto slash = t.find('/');
  if (slash == std::string::npos) return parse_plain(t);
  const double den = parse_plain(std::string_view(t).substr(slash + 1));
  if (den == 0.0) throw UsageError("zero denominator in '" + t + "'");
  return parse_plain(std::string_view(t).substr(0, slash)) / den;
}

std::vector<std::pair<int, int>> parse_sizes(std::string_view text) {
  std::vector<std::pair<int, int>> out;
  std::istringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto x = item.find('x');
    if (x == std::string::npos) {
      throw UsageError("size '" + item + "' is not of the form <demands>x<supplies>");
    }
    out.emplace_back(static_cast<int>(parse_long(item.substr(0, x))),
                     static_cast<int>(parse_long(item.substr(x + 1))));
  }
  return out;
}

ExperimentConfig parse_config(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw UsageError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  ExperimentConfig config;
  const auto& keys = config_keys();
  for (const auto& [section, body] : tree) {
    const auto sec = keys.find(section);
    if (sec == keys.end()) {
      if (body.empty()) throw UsageError("config key '" + section + "' is outside any section");
      throw UsageError("unknown config section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      const auto setter = sec->second.find(key);
      if (setter == sec->second.end()) {
        throw UsageError("unknown config key '" + key + "' in [" + section + "]");
      }
      try {
        setter->second(config, value.data());
      } catch (const UsageError& e) {
        throw UsageError(section + "." + key + ": " + e.what());
      }
    }
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path.string());
  ExperimentConfig config = parse_config(in);
  // Relative instance paths are taken relative to the config file.
  if (config.instance.file && config.instance.file->is_relative()) {
    config.instance.file = path.parent_path() / *config.instance.file;
  }
  return config;
}

void check_experiment(const ExperimentConfig& config) {
  if (config.methods.empty()) throw UsageError("at least one method is required");
  if (config.instance.file) {
    if (!std::filesystem::exists(*config.instance.file)) {
      throw UsageError("instance file " + config.instance.file->string() + " does not exist");
    }
    if (!config.sizes.empty()) {
      throw UsageError("sizes apply to generated instances only");
    }
  } else {
    try {
      check_config(resolved_generator(config.instance));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("generator: ") + e.what());
    }
  }
  if (config.instance.target_access && !(*config.instance.target_access >= 0.0)) {
    throw UsageError("target access must be nonnegative");
  }
  for (const auto& [nd, ns] : config.sizes) {
    if (nd <= 0 || ns < 0) throw UsageError("sizes need positive demand counts");
  }
  if (config.distributed_width < 1) throw UsageError("width must be at least 1");
  try {
    check_params(config.params);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("solver: ") + e.what());
  }
}

GeneratorConfig resolved_generator(const InstanceSpec& spec) {
  GeneratorConfig g = spec.generator;
  if (spec.layout == Layout::kMetro) {
    g.demand_weights = metro_weights(g.grid, spec.metro_exponent);
    g.supply_weights =
        metro_weights(g.grid, spec.supply_exponent.value_or(spec.metro_exponent));
  }
  return g;
}

TransportInstance materialize(const InstanceSpec& spec) {
  if (spec.file) return load_instance(*spec.file);
  GeneratorConfig g = resolved_generator(spec);
  try {
    if (spec.target_access) g.d_max = calibrate_dmax(g, *spec.target_access);
    return generate_instance(g);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("generator: ") + e.what());
  }
}

BlockPipeline block_pipeline(const TransportInstance& inst) {
  BlockPipeline p;
  p.graph = build_demand_graph(inst);
  p.agglomeration = greedy_agglomerate(p.graph);
  p.decomposition = classify_suppliers(inst, p.agglomeration.partition);
  p.modularity = p.graph.total_weight() > 0.0
                     ? modularity(p.graph, p.agglomeration.partition)
                     : 0.0;
  return p;
}

MethodRun run_method(const TransportInstance& inst, Method method,
                     const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  MethodRun result;
  result.method = method;
  Decomposition dec;
  if (method == Method::kBaseline) {
    dec = baseline_decomposition(inst, config.smart_baseline);
  } else {
    BlockPipeline p = block_pipeline(inst);
    result.modularity = p.modularity;
    dec = std::move(p.decomposition);
  }
  SolverParams params = config.params;
  params.width = method == Method::kDistributedBlock ? config.distributed_width : 1;
  result.trace = run(inst, dec, params);
  result.num_blocks = dec.num_blocks();
  result.num_dualized = dec.num_dualized();
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string summary_line(const MethodRun& run) {
  std::ostringstream s;
  s << "method=" << to_string(run.method) << " iterations=" << run.trace.iterations
    << " status=" << to_string(run.trace.termination)
    << std::fixed << std::setprecision(3) << " seconds=" << run.seconds
    << " dualized=" << run.num_dualized << " blocks=" << run.num_blocks;
  if (!run.trace.rows.empty()) {
    s << std::setprecision(4) << " gap=" << run.trace.rows.back().gap;
  }
  return s.str();
}

}  // namespace vpart::cli
