#include "aoi/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "aoi/error.hpp"

namespace aoi {

namespace {

namespace pt = boost::property_tree;

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(Errc::ConfigInvalid, field + ": " + what);
}

template <typename T>
T parse_number(const std::string& field, std::string_view text) {
  std::string s(boost::algorithm::trim_copy(std::string(text)));
  T value{};
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc{} || ptr != last) {
    bad(field, "cannot parse '" + s + "' as a number");
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(const std::string& field, const std::string& text) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::is_any_of(","));
  std::vector<T> out;
  for (const auto& p : parts) out.push_back(parse_number<T>(field, p));
  return out;
}

std::vector<Edge> parse_edges(const std::string& field, const std::string& text) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::is_any_of(","));
  std::vector<Edge> out;
  for (const auto& raw : parts) {
    const auto p = boost::algorithm::trim_copy(raw);
    const auto dash = p.find('-');
    if (dash == std::string::npos) bad(field, "edge '" + p + "' is not of the form u-v");
    out.emplace_back(parse_number<int>(field, std::string_view(p).substr(0, dash)),
                     parse_number<int>(field, std::string_view(p).substr(dash + 1)));
  }
  return out;
}

// Writes doubles so that they parse back to the identical value.
std::string exact(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt(xs[i]);
  }
  return out;
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"graph", {"nodes", "edges"}},
      {"sensing", {"alphas", "allocation", "budget", "m", "max_m"}},
      {"conveyors", {"strategy", "count", "phase_seed", "compare", "random_sets"}},
      {"simulation", {"horizon", "warmup", "seeds", "seed", "total_robots", "threads"}},
      {"energy", {"b_max", "e_move", "r_chg"}},
      {"output", {"csv", "trace"}},
  };
  return keys;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(Errc::ConfigInvalid, "line " + std::to_string(e.line()) + ": " + e.message());
  }

  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) bad(section, "unknown section, or key outside of any section");
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) bad("[" + section + "] " + key, "unknown key");
    }
  }

  auto get = [&](const std::string& section, const std::string& key) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(section + "/" + key, '/'))) {
      return boost::algorithm::trim_copy(*v);
    }
    return std::nullopt;
  };
  auto field = [](const std::string& section, const std::string& key) {
    return "[" + section + "] " + key;
  };
  auto require = [&](const std::string& section, const std::string& key) {
    auto v = get(section, key);
    if (!v || v->empty()) bad(field(section, key), "required");
    return *v;
  };

  ExperimentConfig cfg;
  cfg.nodes = parse_number<int>(field("graph", "nodes"), require("graph", "nodes"));
  cfg.edges = parse_edges(field("graph", "edges"), require("graph", "edges"));

  cfg.alphas = parse_list<double>(field("sensing", "alphas"), require("sensing", "alphas"));
  if (auto v = get("sensing", "allocation")) {
    try {
      cfg.allocation = parse_allocation_strategy(*v);
    } catch (const Error&) {
      bad(field("sensing", "allocation"), "expected waterfill, uniform or explicit, got '" + *v + "'");
    }
  }
  if (auto v = get("sensing", "budget")) cfg.budget = parse_number<int>(field("sensing", "budget"), *v);
  if (auto v = get("sensing", "m")) cfg.m = parse_list<int>(field("sensing", "m"), *v);
  if (auto v = get("sensing", "max_m")) cfg.max_m = parse_number<int>(field("sensing", "max_m"), *v);

  if (auto v = get("conveyors", "strategy")) {
    try {
      cfg.phase_strategy = parse_phase_strategy(*v);
    } catch (const Error&) {
      bad(field("conveyors", "strategy"), "expected uniform, clustered or random, got '" + *v + "'");
    }
  }
  if (auto v = get("conveyors", "count")) cfg.count = parse_number<int>(field("conveyors", "count"), *v);
  if (auto v = get("conveyors", "phase_seed")) {
    cfg.phase_seed = parse_number<std::uint64_t>(field("conveyors", "phase_seed"), *v);
  }
  if (auto v = get("conveyors", "compare")) {
    cfg.compare_counts = parse_list<int>(field("conveyors", "compare"), *v);
  }
  if (auto v = get("conveyors", "random_sets")) {
    cfg.random_sets = parse_number<int>(field("conveyors", "random_sets"), *v);
  }

  if (auto v = get("simulation", "horizon")) cfg.horizon = parse_number<Slot>(field("simulation", "horizon"), *v);
  if (auto v = get("simulation", "warmup")) cfg.warmup = parse_number<Slot>(field("simulation", "warmup"), *v);
  if (auto v = get("simulation", "seeds")) cfg.seeds = parse_number<int>(field("simulation", "seeds"), *v);
  if (auto v = get("simulation", "seed")) cfg.seed = parse_number<std::uint64_t>(field("simulation", "seed"), *v);
  if (auto v = get("simulation", "total_robots")) {
    cfg.total_robots = parse_number<int>(field("simulation", "total_robots"), *v);
  }
  if (auto v = get("simulation", "threads")) cfg.threads = parse_number<int>(field("simulation", "threads"), *v);

  if (tree.get_child_optional("energy")) {
    EnergyParams e;
    e.b_max = parse_number<double>(field("energy", "b_max"), require("energy", "b_max"));
    e.e_move = parse_number<double>(field("energy", "e_move"), require("energy", "e_move"));
    e.r_chg = parse_number<double>(field("energy", "r_chg"), require("energy", "r_chg"));
    cfg.energy = e;
  }

  if (auto v = get("output", "csv"); v && !v->empty()) cfg.csv = *v;
  if (auto v = get("output", "trace"); v && !v->empty()) cfg.trace = *v;

  if (cfg.seeds < 1) bad(field("simulation", "seeds"), "must be >= 1");
  if (cfg.threads < 0) bad(field("simulation", "threads"), "must be >= 0");
  if (cfg.random_sets < 0) bad(field("conveyors", "random_sets"), "must be >= 0");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ConfigInvalid, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const ExperimentConfig& cfg) {
  auto str = [](auto x) { return std::to_string(x); };
  std::ostringstream out;
  out << "[graph]\n";
  out << "nodes = " << cfg.nodes << "\n";
  out << "edges = "
      << join(cfg.edges, [](const Edge& e) { return std::to_string(e.first) + "-" + std::to_string(e.second); })
      << "\n\n";

  out << "[sensing]\n";
  out << "alphas = " << join(cfg.alphas, exact) << "\n";
  out << "allocation = " << to_string(cfg.allocation) << "\n";
  if (cfg.budget) out << "budget = " << *cfg.budget << "\n";
  if (!cfg.m.empty()) out << "m = " << join(cfg.m, str) << "\n";
  if (cfg.max_m) out << "max_m = " << *cfg.max_m << "\n";
  out << "\n";

  out << "[conveyors]\n";
  out << "strategy = " << to_string(cfg.phase_strategy) << "\n";
  if (cfg.count) out << "count = " << *cfg.count << "\n";
  out << "phase_seed = " << cfg.phase_seed << "\n";
  if (!cfg.compare_counts.empty()) out << "compare = " << join(cfg.compare_counts, str) << "\n";
  out << "random_sets = " << cfg.random_sets << "\n\n";

  out << "[simulation]\n";
  out << "horizon = " << cfg.horizon << "\n";
  if (cfg.warmup) out << "warmup = " << *cfg.warmup << "\n";
  out << "seeds = " << cfg.seeds << "\n";
  out << "seed = " << cfg.seed << "\n";
  if (cfg.total_robots) out << "total_robots = " << *cfg.total_robots << "\n";
  out << "threads = " << cfg.threads << "\n";

  if (cfg.energy) {
    out << "\n[energy]\n";
    out << "b_max = " << exact(cfg.energy->b_max) << "\n";
    out << "e_move = " << exact(cfg.energy->e_move) << "\n";
    out << "r_chg = " << exact(cfg.energy->r_chg) << "\n";
  }
  if (cfg.csv || cfg.trace) {
    out << "\n[output]\n";
    if (cfg.csv) out << "csv = " << *cfg.csv << "\n";
    if (cfg.trace) out << "trace = " << *cfg.trace << "\n";
  }
  return out.str();
}

Scenario build_scenario(const ExperimentConfig& cfg) {
  // Re-throws module errors with the config field that caused them.
  auto in_field = [](const std::string& field, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      throw Error(e.code(), field + ": " + e.detail());
    }
  };

  auto graph = in_field("[graph]", [&] { return build_graph(cfg.nodes, cfg.edges); });
  const int sensing_nodes = cfg.nodes - 1;
  if (static_cast<int>(cfg.alphas.size()) != sensing_nodes) {
    bad("[sensing] alphas", "expected " + std::to_string(sensing_nodes) + " values, got " +
                                std::to_string(cfg.alphas.size()));
  }

  int n_s = cfg.budget.value_or(sensing_nodes);
  if (cfg.allocation == AllocationStrategy::Explicit) {
    if (cfg.m.empty()) bad("[sensing] m", "required when allocation = explicit");
    if (static_cast<int>(cfg.m.size()) != sensing_nodes) {
      bad("[sensing] m", "expected " + std::to_string(sensing_nodes) + " values");
    }
    n_s = std::accumulate(cfg.m.begin(), cfg.m.end(), 0);
    if (cfg.budget && *cfg.budget != n_s) bad("[sensing] budget", "does not match sum of m");
  } else if (!cfg.m.empty()) {
    bad("[sensing] m", "only allowed when allocation = explicit");
  }
  const int max_m = cfg.max_m.value_or(std::max({n_s, cfg.total_robots.value_or(0), 1}));
  auto model = in_field("[sensing] alphas", [&] { return make_model(cfg.alphas, max_m); });

  auto alloc = in_field("[sensing] allocation", [&] {
    switch (cfg.allocation) {
      case AllocationStrategy::WaterFill: return water_fill(model, n_s);
      case AllocationStrategy::Uniform: return uniform_alloc(model, n_s);
      case AllocationStrategy::Explicit: break;
    }
    SensingAllocation a{cfg.m};
    check_allocation(model, a);
    return a;
  });

  auto distances = bfs_distances(graph);
  auto tree = shortest_path_tree(graph);
  auto walk = euler_walk(tree);
  const int walk_length = walk.length();
  const int n_c = cfg.count.value_or(walk_length);
  auto phases = in_field("[conveyors] count", [&] {
    return make_phases(cfg.phase_strategy, n_c, walk_length, cfg.phase_seed);
  });
  for (int c : cfg.compare_counts) {
    if (c < 1 || c > walk_length) {
      bad("[conveyors] compare", "count " + std::to_string(c) + " not in 1.." + std::to_string(walk_length));
    }
  }
  if (cfg.total_robots && *cfg.total_robots < sensing_nodes + 1) {
    throw Error(Errc::BudgetTooSmall, "[simulation] total_robots: need at least " +
                                          std::to_string(sensing_nodes + 1));
  }

  auto sim = make_sim_config(graph, model, alloc, conveyor_phases_of(phases), cfg.horizon,
                             cfg.warmup, cfg.seed, cfg.energy);
  in_field("[simulation]", [&] {
    auto timing = sim;
    timing.energy.reset();
    validate(timing);
    return 0;
  });
  if (sim.energy) {
    in_field("[energy]", [&] {
      validate(sim);
      return 0;
    });
  }
  return Scenario{std::move(graph), std::move(distances), std::move(tree), std::move(walk),
                  std::move(model), std::move(alloc), std::move(phases), std::move(sim)};
}

}  // namespace aoi
