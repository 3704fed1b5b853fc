#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "aoi/conveyor_plan.hpp"
#include "aoi/graph.hpp"
#include "aoi/sensing.hpp"

namespace aoi {

struct EnergyParams {
  double b_max = 0.0;   // battery capacity
  double e_move = 0.0;  // energy per edge traversal
  double r_chg = 0.0;   // recharge per slot at the base

  friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

// Everything a run needs. `conveyor_phases` may repeat offsets (extra
// conveyors riding an already-occupied phase); use conveyor_phases_of() to
// build it from a PhaseSet.
struct SimConfig {
  Graph graph;
  ShortestPathTree tree;
  EulerWalk walk;
  std::vector<int> conveyor_phases;
  SensingModel model;
  SensingAllocation alloc;
  Slot horizon = 0;
  Slot warmup = 0;
  std::uint64_t seed = 0;
  std::optional<EnergyParams> energy;
};

std::vector<int> conveyor_phases_of(const PhaseSet& p);

// Builds graph-derived fields (tree, walk) and picks warmup = 10 * L when
// `warmup` is empty.
SimConfig make_sim_config(const Graph& graph, SensingModel model, SensingAllocation alloc,
                          std::vector<int> conveyor_phases, Slot horizon,
                          std::optional<Slot> warmup, std::uint64_t seed,
                          std::optional<EnergyParams> energy = std::nullopt);

struct Sample {
  NodeId origin = 0;
  Slot sensing_start = 0;
  Slot generated = -1;  // -1 marks an empty store slot
};

// First arrival of a distinct sample at the base.
struct DeliveryEvent {
  NodeId origin = 0;
  Slot sensing_start = 0;
  Slot generated = 0;
  Slot delivered = 0;
  bool became_freshest = false;

  friend bool operator==(const DeliveryEvent&, const DeliveryEvent&) = default;
};

struct ConveyorEnergyStats {
  int recharge_trips = 0;
  Slot detour_slots = 0;    // slots spent heading back to the base off-schedule
  Slot charging_slots = 0;
  Slot waiting_slots = 0;   // full, holding at the base for phase alignment
  double min_battery = 0.0;

  friend bool operator==(const ConveyorEnergyStats&, const ConveyorEnergyStats&) = default;
};

struct SimResult {
  // Indexed by node id; entry 0 (the base) is unused and left at zero.
  std::vector<double> per_node_aoi;
  double network_aoi = 0.0;
  // Integer sum of Delta_i(t) over t in [warmup, horizon).
  std::vector<std::int64_t> per_node_area;
  Slot averaged_slots = 0;

  std::vector<DeliveryEvent> delivery_log;

  // Wait from sensing completion to the next baseward departure at the
  // origin, over completions at or after warmup that were picked up.
  std::vector<std::int64_t> pickup_wait_sum;
  std::vector<std::int64_t> pickup_wait_count;

  std::optional<std::vector<ConveyorEnergyStats>> energy_trace;

  double mean_pickup_wait() const;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

// Per-node sensing stream: one Bernoulli trial per slot, seeded from
// (seed, node) so streams do not depend on iteration order.
class SensingStream {
 public:
  SensingStream(std::uint64_t seed, NodeId node);

  // Uniform double in [0, 1) from the top 53 bits of one engine draw.
  double uniform();
  bool trial(double q) { return uniform() < q; }

 private:
  std::mt19937_64 engine_;
};

// Number of Bernoulli(q) trials up to and including the first success.
// Throws Error{InvalidProbability}.
int draw_sensing_time(double q, SensingStream& rng);

// Throws Error{ConfigInvalid}.
void validate(const SimConfig& cfg);

// Runs the joint policy. When cfg.energy is set this is run_energy.
// Throws Error{ConfigInvalid, BatteryTooSmall}.
SimResult run(const SimConfig& cfg);

// Throws Error{ConfigInvalid} if cfg.energy is missing.
SimResult run_energy(const SimConfig& cfg);

// Rebuilds per-node time averages over [warmup, horizon) from freshest
// deliveries only (events with became_freshest == false are ignored). Node
// ids index the result; `node_count` includes the base.
// Throws Error{UnsortedLog}.
struct LogAverages {
  std::vector<double> per_node_aoi;
  std::vector<std::int64_t> per_node_area;
};
LogAverages aoi_from_event_log(std::span<const DeliveryEvent> log, int node_count, Slot horizon,
                               Slot warmup);

// One JSON object per line.
void write_trace(std::ostream& out, std::span<const DeliveryEvent> log);

}  // namespace aoi
