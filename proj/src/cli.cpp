#include "aoi/cli.hpp"

#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "aoi/analysis.hpp"
#include "aoi/error.hpp"

namespace aoi::cli {

namespace {

void preamble(std::ostream& out, const std::string& command) {
  out << std::setprecision(6);
  out << "# aoisim " << kVersion << "\n";
  out << "# command: " << command << "\n";
}

void seed_line(std::ostream& out, std::uint64_t first, int count) {
  out << "# seeds:";
  for (int s = 0; s < count; ++s) out << ' ' << first + static_cast<std::uint64_t>(s);
  out << "\n";
}

std::string phases_str(const std::vector<int>& phases) {
  std::string s;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(phases[i]);
  }
  return s;
}

}  // namespace

void cmd_bound(const ExperimentConfig& cfg, std::ostream& out) {
  const auto sc = build_scenario(cfg);
  const auto report = lower_bound(sc.model, sc.alloc, sc.distances);
  preamble(out, "bound");
  out << "# allocation: " << to_string(cfg.allocation) << ", N_s = " << sc.alloc.total() << "\n";
  out << "node,alpha,m,mu,depth,bound\n";
  for (NodeId v = 1; v < sc.graph.node_count(); ++v) {
    out << v << ',' << cfg.alphas[v - 1] << ',' << sc.alloc[v] << ',' << sc.model.mu(v, sc.alloc[v])
        << ',' << sc.distances[v] << ',' << report.per_node_bound[v] << "\n";
  }
  out << "network,,,,," << report.network_bound << "\n";
}

void cmd_waterfill(const ExperimentConfig& cfg, std::ostream& out) {
  const auto sc = build_scenario(cfg);
  preamble(out, "waterfill");
  out << "# allocation: " << to_string(cfg.allocation) << ", N_s = " << sc.alloc.total() << "\n";
  out << "node,alpha,m,mu\n";
  for (NodeId v = 1; v < sc.graph.node_count(); ++v) {
    out << v << ',' << cfg.alphas[v - 1] << ',' << sc.alloc[v] << ',' << sc.model.mu(v, sc.alloc[v])
        << "\n";
  }
  out << "total,," << sc.alloc.total() << ',' << sensing_objective(sc.model, sc.alloc) << "\n";
}

void cmd_walk(const ExperimentConfig& cfg, std::ostream& out) {
  const auto sc = build_scenario(cfg);
  preamble(out, "walk");
  out << "# L = " << sc.walk.length() << "\n";
  out << "index,node\n";
  const auto& seq = sc.walk.sequence();
  for (std::size_t t = 0; t < seq.size(); ++t) out << t << ',' << seq[t] << "\n";
}

void cmd_phases(const ExperimentConfig& cfg, std::ostream& out) {
  const auto sc = build_scenario(cfg);
  std::vector<int> counts = cfg.compare_counts;
  if (counts.empty()) {
    for (int c = 1; c <= sc.walk.length(); ++c) counts.push_back(c);
  }
  const auto rows = phase_comparison(sc.sim, default_strategies(cfg.random_sets, cfg.phase_seed),
                                     counts, cfg.seeds, cfg.threads);
  preamble(out, "phases");
  seed_line(out, cfg.seed, cfg.seeds);
  out << "strategy,n_c,mean_aoi,std_aoi\n";
  for (const auto& r : rows) {
    out << r.strategy << ',' << r.n_c << ',' << r.mean_aoi << ',' << r.std_aoi << "\n";
  }
}

void cmd_audit(const ExperimentConfig& cfg, std::ostream& out) {
  const auto sc = build_scenario(cfg);
  const auto report = coverage_audit(sc.walk, sc.phases);
  preamble(out, "audit");
  out << "# L = " << sc.walk.length() << ", phases = " << phases_str(sc.phases.phases()) << "\n";
  out << "full coverage: " << (report.full_coverage ? "true" : "false") << "\n";
  if (!report.full_coverage) {
    out << "violations: " << report.violations.size() << "\n";
    out << "node,slot\n";
    for (const auto& [node, slot] : report.violations) out << node << ',' << slot << "\n";
  }
}

void cmd_simulate(const ExperimentConfig& cfg, std::ostream& out, std::ostream* trace) {
  const auto sc = build_scenario(cfg);
  const auto bound = lower_bound(sc.model, sc.alloc, sc.distances);
  bool traced = false;
  ResultObserver observer;
  if (trace) {
    observer = [&](const SimConfig& c, const SimResult& r) {
      if (c.seed == cfg.seed && !traced) {
        write_trace(*trace, r.delivery_log);
        traced = true;
      }
    };
  }
  const auto stats = run_seeds(sc.sim, cfg.seeds, cfg.threads, observer);
  preamble(out, "simulate");
  seed_line(out, cfg.seed, cfg.seeds);
  out << "# conveyors: " << sc.sim.conveyor_phases.size() << " (" << to_string(cfg.phase_strategy)
      << "), phases = " << phases_str(sc.phases.phases()) << "\n";
  out << "node,aoi,bound,delta\n";
  for (NodeId v = 1; v < sc.graph.node_count(); ++v) {
    const double aoi = stats.per_node_mean[v];
    out << v << ',' << aoi << ',' << bound.per_node_bound[v] << ',' << aoi - bound.per_node_bound[v]
        << "\n";
  }
  out << "network," << stats.mean << ',' << bound.network_bound << ','
      << stats.mean - bound.network_bound << "\n";
  out << "# network std across seeds: " << stats.std_dev << "\n";
}

void cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  const auto sc = build_scenario(cfg);
  if (!cfg.total_robots) {
    throw Error(Errc::ConfigInvalid, "[simulation] total_robots: required for sweep");
  }
  SweepOptions opts;
  opts.horizon = cfg.horizon;
  opts.warmup = cfg.warmup;
  opts.seed = cfg.seed;
  opts.seeds = cfg.seeds;
  opts.threads = cfg.threads;
  const auto sweep = split_sweep(*cfg.total_robots, cfg.alphas, sc.graph, opts);
  preamble(out, "sweep");
  seed_line(out, cfg.seed, cfg.seeds);
  out << "# N = " << *cfg.total_robots << ", argmin ties prefer larger n_s\n";
  out << "n_s,n_c,mean_aoi,std_aoi,bound,n_c_nominal,argmin\n";
  for (std::size_t i = 0; i < sweep.cells.size(); ++i) {
    const auto& c = sweep.cells[i];
    out << c.n_s << ',' << c.n_c << ',' << c.mean_aoi << ',' << c.std_aoi << ',' << c.bound << ','
        << c.n_c_nominal << ',' << (i == sweep.argmin ? 1 : 0) << "\n";
  }
}

void cmd_config(const ExperimentConfig& cfg, std::ostream& out) {
  build_scenario(cfg);
  out << format_config(cfg);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Age-of-information multi-robot simulator and planner", "aoisim"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  app.add_option("--config", config_path, "experiment config file")->required();
  app.add_option("--seed", seed, "base seed (overrides [simulation] seed)");
  app.add_option("--out", out_path, "output file (overrides [output] csv)");
  app.set_version_flag("--version", std::string(kVersion));

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"bound", "analytic per-node and network AoI lower bound"},
      {"waterfill", "sensing-robot allocation"},
      {"walk", "Euler walk of the shortest-path tree"},
      {"phases", "phase-strategy comparison table"},
      {"audit", "full-conveyor coverage audit"},
      {"simulate", "seed-averaged simulation of the joint policy"},
      {"sweep", "sensing/conveyor split sweep"},
      {"config", "echo the normalised config"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (!out_path.empty()) cfg.csv = out_path;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    std::unique_ptr<std::ofstream> file;
    std::ostream* sink = &out;
    if (cfg.csv && command != "config") {
      file = std::make_unique<std::ofstream>(*cfg.csv);
      if (!*file) {
        err << "error: cannot write '" << *cfg.csv << "'\n";
        return kRuntimeError;
      }
      sink = file.get();
    }
    std::unique_ptr<std::ofstream> trace;
    if (cfg.trace && command == "simulate") {
      trace = std::make_unique<std::ofstream>(*cfg.trace);
      if (!*trace) {
        err << "error: cannot write '" << *cfg.trace << "'\n";
        return kRuntimeError;
      }
    }

    if (command == "bound") cmd_bound(cfg, *sink);
    else if (command == "waterfill") cmd_waterfill(cfg, *sink);
    else if (command == "walk") cmd_walk(cfg, *sink);
    else if (command == "phases") cmd_phases(cfg, *sink);
    else if (command == "audit") cmd_audit(cfg, *sink);
    else if (command == "simulate") cmd_simulate(cfg, *sink, trace.get());
    else if (command == "sweep") cmd_sweep(cfg, *sink);
    else cmd_config(cfg, *sink);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}

}  // namespace aoi::cli
