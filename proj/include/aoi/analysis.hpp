#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aoi/conveyor_plan.hpp"
#include "aoi/graph.hpp"
#include "aoi/sensing.hpp"
#include "aoi/sim.hpp"

namespace aoi {

// Per-node vectors below are indexed by node id; entry 0 (the base) is zero.

struct BoundReport {
  std::vector<double> per_node_bound;  // 2 mu_i(m_i) - 2 + d_i
  double network_bound = 0.0;
};

struct PenaltyReport {
  std::vector<double> per_node_delta;  // simulated AoI minus bound, unclamped
  double delta_avg = 0.0;
};

// Throws Error{DimensionMismatch}.
BoundReport lower_bound(const SensingModel& model, const SensingAllocation& alloc,
                        const DistanceMap& distances);

// Throws Error{DimensionMismatch}.
PenaltyReport transport_penalty(const SimResult& result, const BoundReport& bound);

// Seed-averaged outcome of one configuration. Seeds are cfg.seed + 0..n-1.
struct SeedStats {
  std::vector<double> network_aoi;  // one entry per seed
  std::vector<double> pickup_wait;  // one entry per seed
  std::vector<double> per_node_mean;
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation across seeds
  double pickup_wait_mean = 0.0;
  double pickup_wait_std = 0.0;

  int seeds() const { return static_cast<int>(network_aoi.size()); }
  // Standard error of the seed mean.
  double sem() const;
  double pickup_wait_sem() const;
};

// Called once per finished run, serialised across worker threads.
using ResultObserver = std::function<void(const SimConfig&, const SimResult&)>;

// Runs `seeds` independent replications of cfg, up to `threads` at once.
SeedStats run_seeds(const SimConfig& cfg, int seeds, int threads = 0,
                    const ResultObserver& observer = {});

// a <= b allowing k combined standard errors of slack.
bool leq_within(const SeedStats& a, const SeedStats& b, double k = 3.0);

struct SweepOptions {
  Slot horizon = 200000;
  std::optional<Slot> warmup;
  std::uint64_t seed = 1;
  int seeds = 10;
  int threads = 0;
  ResultObserver observer;
};

struct SweepCell {
  int n_s = 0;
  int n_c = 0;          // conveyors actually deployed (capped at L)
  int n_c_nominal = 0;  // N - n_s
  double mean_aoi = 0.0;
  double std_aoi = 0.0;
  double bound = 0.0;
  int seeds = 0;
  bool capped() const { return n_c != n_c_nominal; }
};

struct SweepResult {
  std::vector<SweepCell> cells;  // ascending n_s
  std::size_t argmin = 0;        // ties resolve to the larger n_s
};

// Every split n_s + n_c = total with n_s >= |V_s| and n_c >= 1: water-filled
// sensing, uniform phases on min(n_c, L) conveyors.
// Throws Error{BudgetTooSmall}.
SweepResult split_sweep(int total, const std::vector<double>& alphas, const Graph& graph,
                        const SweepOptions& options);

struct StrategySpec {
  PhaseStrategy strategy = PhaseStrategy::Uniform;
  std::uint64_t seed = 0;  // only used by Random
  std::string label;
};

// uniform, clustered, then `random_sets` random strategies labelled random1..k.
std::vector<StrategySpec> default_strategies(int random_sets, std::uint64_t seed);

struct PhaseRow {
  std::string strategy;  // "bound" rows carry the analytic network bound
  int n_c = 0;
  double mean_aoi = 0.0;
  double std_aoi = 0.0;
  double sem = 0.0;
  std::vector<int> phases;
};

// Seed-averaged network AoI for every (strategy, n_c). cfg supplies graph,
// sensing and timing; its conveyor phases are replaced per row.
// Throws Error{ConfigInvalid}.
std::vector<PhaseRow> phase_comparison(const SimConfig& cfg,
                                       const std::vector<StrategySpec>& strategies,
                                       const std::vector<int>& n_c_values, int seeds,
                                       int threads = 0, const ResultObserver& observer = {});

}  // namespace aoi
