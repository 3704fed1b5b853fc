#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aoi/analysis.hpp"
#include "aoi/conveyor_plan.hpp"
#include "aoi/graph.hpp"
#include "aoi/sensing.hpp"
#include "aoi/sim.hpp"

namespace aoi {

// Experiment description read from an INI-style file with the sections
// [graph] [sensing] [conveyors] [simulation] [energy] [output]. Unknown
// sections or keys are rejected.
struct ExperimentConfig {
  // [graph]
  int nodes = 0;
  std::vector<Edge> edges;

  // [sensing]
  std::vector<double> alphas;
  AllocationStrategy allocation = AllocationStrategy::WaterFill;
  std::optional<int> budget;  // N_s; defaults to one robot per node
  std::vector<int> m;         // explicit allocation
  std::optional<int> max_m;

  // [conveyors]
  PhaseStrategy phase_strategy = PhaseStrategy::Uniform;
  std::optional<int> count;  // N_c; defaults to the walk length
  std::uint64_t phase_seed = 0;
  std::vector<int> compare_counts;  // n_c values for `phases`
  int random_sets = 5;

  // [simulation]
  Slot horizon = 200000;
  std::optional<Slot> warmup;  // defaults to 10 * L
  int seeds = 10;
  std::uint64_t seed = 1;
  std::optional<int> total_robots;  // N for `sweep`
  int threads = 0;

  // [energy]
  std::optional<EnergyParams> energy;

  // [output]
  std::optional<std::string> csv;
  std::optional<std::string> trace;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Throws Error{ConfigInvalid} naming the offending section and key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical text form; parse_config(format_config(c)) == c.
std::string format_config(const ExperimentConfig& cfg);

// Everything derived from a config, with every module precondition checked.
struct Scenario {
  Graph graph;
  DistanceMap distances;
  ShortestPathTree tree;
  EulerWalk walk;
  SensingModel model;
  SensingAllocation alloc;
  PhaseSet phases;
  SimConfig sim;
};

// Throws Error (ConfigInvalid, or the module error) with the field named in
// the message.
Scenario build_scenario(const ExperimentConfig& cfg);

}  // namespace aoi
