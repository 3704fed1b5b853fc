#include "aoi/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include "aoi/error.hpp"

namespace aoi {

namespace {

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

int resolve_threads(int threads, std::size_t tasks) {
  int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(tasks, 1)));
}

// Runs body(0..count-1) over a small pool. Results must be written to
// per-index slots so assembly order does not matter.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  const int workers = resolve_threads(threads, count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct SeedJob {
  SimConfig cfg;
  std::size_t group = 0;
};

// Runs every job and folds results into one SeedStats per group.
std::vector<SeedStats> run_jobs(const std::vector<SeedJob>& jobs, std::size_t groups, int threads,
                                const ResultObserver& observer) {
  struct Outcome {
    double network = 0.0;
    double wait = 0.0;
    std::vector<double> per_node;
  };
  std::vector<Outcome> outcomes(jobs.size());
  std::mutex observer_mutex;
  parallel_for(jobs.size(), threads, [&](std::size_t i) {
    const SimResult r = run(jobs[i].cfg);
    outcomes[i] = Outcome{r.network_aoi, r.mean_pickup_wait(), r.per_node_aoi};
    if (observer) {
      std::lock_guard lock(observer_mutex);
      observer(jobs[i].cfg, r);
    }
  });

  std::vector<SeedStats> stats(groups);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto& s = stats[jobs[i].group];
    s.network_aoi.push_back(outcomes[i].network);
    s.pickup_wait.push_back(outcomes[i].wait);
    if (s.per_node_mean.empty()) s.per_node_mean.assign(outcomes[i].per_node.size(), 0.0);
    for (std::size_t v = 0; v < outcomes[i].per_node.size(); ++v) {
      s.per_node_mean[v] += outcomes[i].per_node[v];
    }
  }
  for (auto& s : stats) {
    for (double& x : s.per_node_mean) x /= static_cast<double>(std::max(s.seeds(), 1));
    s.mean = mean_of(s.network_aoi);
    s.std_dev = sample_std(s.network_aoi);
    s.pickup_wait_mean = mean_of(s.pickup_wait);
    s.pickup_wait_std = sample_std(s.pickup_wait);
  }
  return stats;
}

void add_seed_jobs(std::vector<SeedJob>& jobs, const SimConfig& cfg, int seeds, std::size_t group) {
  for (int s = 0; s < seeds; ++s) {
    SimConfig c = cfg;
    c.seed = cfg.seed + static_cast<std::uint64_t>(s);
    jobs.push_back(SeedJob{std::move(c), group});
  }
}

}  // namespace

BoundReport lower_bound(const SensingModel& model, const SensingAllocation& alloc,
                        const DistanceMap& distances) {
  const int nodes = static_cast<int>(distances.dist.size());
  if (model.node_count() != nodes - 1 || static_cast<int>(alloc.m.size()) != nodes - 1) {
    throw Error(Errc::DimensionMismatch, "model, allocation and distance map disagree on node count");
  }
  BoundReport report;
  report.per_node_bound.assign(nodes, 0.0);
  double sum = 0.0;
  for (NodeId v = 1; v < nodes; ++v) {
    report.per_node_bound[v] = 2.0 * model.mu(v, alloc[v]) - 2.0 + distances[v];
    sum += report.per_node_bound[v];
  }
  report.network_bound = sum / (nodes - 1);
  return report;
}

PenaltyReport transport_penalty(const SimResult& result, const BoundReport& bound) {
  if (result.per_node_aoi.size() != bound.per_node_bound.size() || bound.per_node_bound.size() < 2) {
    throw Error(Errc::DimensionMismatch, "simulation and bound cover different node sets");
  }
  PenaltyReport report;
  const std::size_t nodes = bound.per_node_bound.size();
  report.per_node_delta.assign(nodes, 0.0);
  double sum = 0.0;
  for (std::size_t v = 1; v < nodes; ++v) {
    report.per_node_delta[v] = result.per_node_aoi[v] - bound.per_node_bound[v];
    sum += report.per_node_delta[v];
  }
  report.delta_avg = sum / static_cast<double>(nodes - 1);
  return report;
}

double SeedStats::sem() const {
  return seeds() > 0 ? std_dev / std::sqrt(static_cast<double>(seeds())) : 0.0;
}

double SeedStats::pickup_wait_sem() const {
  return seeds() > 0 ? pickup_wait_std / std::sqrt(static_cast<double>(seeds())) : 0.0;
}

SeedStats run_seeds(const SimConfig& cfg, int seeds, int threads, const ResultObserver& observer) {
  if (seeds < 1) throw Error(Errc::ConfigInvalid, "need at least one seed");
  validate(cfg);
  std::vector<SeedJob> jobs;
  add_seed_jobs(jobs, cfg, seeds, 0);
  return run_jobs(jobs, 1, threads, observer).front();
}

bool leq_within(const SeedStats& a, const SeedStats& b, double k) {
  return a.mean <= b.mean + k * std::hypot(a.sem(), b.sem());
}

SweepResult split_sweep(int total, const std::vector<double>& alphas, const Graph& graph,
                        const SweepOptions& options) {
  const int sensing_nodes = graph.node_count() - 1;
  if (static_cast<int>(alphas.size()) != sensing_nodes) {
    throw Error(Errc::DimensionMismatch, "one alpha per non-base node is required");
  }
  if (total < sensing_nodes + 1) {
    throw Error(Errc::BudgetTooSmall, "total " + std::to_string(total) + " robots cannot cover " +
                                          std::to_string(sensing_nodes) +
                                          " sensing nodes plus one conveyor");
  }
  const auto model = make_model(alphas, total);
  const auto distances = bfs_distances(graph);
  const int walk_length = 2 * sensing_nodes;

  SweepResult out;
  std::vector<SeedJob> jobs;
  for (int n_s = sensing_nodes; n_s <= total - 1; ++n_s) {
    SweepCell cell;
    cell.n_s = n_s;
    cell.n_c_nominal = total - n_s;
    cell.n_c = std::min(cell.n_c_nominal, walk_length);
    cell.seeds = options.seeds;
    auto alloc = water_fill(model, n_s);
    cell.bound = lower_bound(model, alloc, distances).network_bound;
    const auto phases = uniform_phases(walk_length, cell.n_c);
    auto cfg = make_sim_config(graph, model, std::move(alloc), conveyor_phases_of(phases),
                               options.horizon, options.warmup, options.seed);
    validate(cfg);
    add_seed_jobs(jobs, cfg, options.seeds, out.cells.size());
    out.cells.push_back(cell);
  }

  const auto stats = run_jobs(jobs, out.cells.size(), options.threads, options.observer);
  for (std::size_t i = 0; i < out.cells.size(); ++i) {
    out.cells[i].mean_aoi = stats[i].mean;
    out.cells[i].std_aoi = stats[i].std_dev;
    if (out.cells[i].mean_aoi <= out.cells[out.argmin].mean_aoi) out.argmin = i;
  }
  return out;
}

std::vector<StrategySpec> default_strategies(int random_sets, std::uint64_t seed) {
  std::vector<StrategySpec> out{{PhaseStrategy::Uniform, 0, "uniform"},
                                {PhaseStrategy::Clustered, 0, "clustered"}};
  for (int j = 0; j < random_sets; ++j) {
    out.push_back({PhaseStrategy::Random, seed + static_cast<std::uint64_t>(j),
                   "random" + std::to_string(j + 1)});
  }
  return out;
}

std::vector<PhaseRow> phase_comparison(const SimConfig& cfg,
                                       const std::vector<StrategySpec>& strategies,
                                       const std::vector<int>& n_c_values, int seeds, int threads,
                                       const ResultObserver& observer) {
  if (seeds < 1) throw Error(Errc::ConfigInvalid, "need at least one seed");
  if (strategies.empty() || n_c_values.empty()) {
    throw Error(Errc::ConfigInvalid, "phase comparison needs strategies and conveyor counts");
  }
  const int walk_length = cfg.walk.length();
  std::vector<PhaseRow> rows;
  std::vector<SeedJob> jobs;
  for (int n_c : n_c_values) {
    if (n_c < 1 || n_c > walk_length) {
      throw Error(Errc::ConfigInvalid, "conveyor count " + std::to_string(n_c) + " not in 1.." +
                                           std::to_string(walk_length));
    }
    for (const auto& spec : strategies) {
      const auto phases = make_phases(spec.strategy, n_c, walk_length, spec.seed);
      SimConfig c = cfg;
      c.conveyor_phases = conveyor_phases_of(phases);
      validate(c);
      add_seed_jobs(jobs, c, seeds, rows.size());
      rows.push_back(PhaseRow{spec.label.empty() ? std::string(to_string(spec.strategy)) : spec.label,
                              n_c, 0.0, 0.0, 0.0, phases.phases()});
    }
  }
  const auto stats = run_jobs(jobs, rows.size(), threads, observer);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].mean_aoi = stats[i].mean;
    rows[i].std_aoi = stats[i].std_dev;
    rows[i].sem = stats[i].sem();
  }
  const double bound = lower_bound(cfg.model, cfg.alloc, bfs_distances(cfg.graph)).network_bound;
  for (int n_c : n_c_values) rows.push_back(PhaseRow{"bound", n_c, bound, 0.0, 0.0, {}});
  return rows;
}

}  // namespace aoi
