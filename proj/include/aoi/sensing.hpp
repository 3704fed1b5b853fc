#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace aoi {

// Mean group-sensing times mu_i(m) for every non-base node and m = 1..max_m.
// Node i of the graph is entry i-1. The table is validated at construction:
// every mean is >= 1 (success probability in (0,1]), nonincreasing in m, and
// has nonincreasing marginal benefit.
class SensingModel {
 public:
  // Parametric family mu_i(m) = max(alpha_i / m, 1), i.e. q_i(m) = min(m / alpha_i, 1).
  // Throws Error{NonPositiveAlpha, OutOfRange, ConvexityViolation}.
  static SensingModel parametric(std::vector<double> alphas, int max_m);

  // Tabulated family: mu_tables[k][m-1] is the mean for node k+1 with m robots.
  // All rows must have equal length. Throws Error{OutOfRange, ConvexityViolation}.
  static SensingModel from_table(std::vector<std::vector<double>> mu_tables);

  int node_count() const noexcept { return static_cast<int>(mu_.size()); }
  int max_m() const noexcept { return max_m_; }

  // Empty for tabulated models.
  const std::vector<double>& alphas() const noexcept { return alphas_; }

  // `node` is a graph node id in 1..node_count(). Throws Error{OutOfRange}.
  double mu(int node, int m) const;
  double success_probability(int node, int m) const { return 1.0 / mu(node, m); }
  // mu(node, m) - mu(node, m + 1), for 1 <= m < max_m.
  double marginal_benefit(int node, int m) const;

 private:
  SensingModel(std::vector<double> alphas, std::vector<std::vector<double>> mu);

  std::vector<double> alphas_;
  std::vector<std::vector<double>> mu_;
  int max_m_ = 0;
};

// Robot count per non-base node (entry k is node k+1).
struct SensingAllocation {
  std::vector<int> m;

  int total() const;
  int operator[](int node) const { return m.at(node - 1); }
};

SensingModel make_model(std::vector<double> alphas, int max_m);

double mu(const SensingModel& model, int node, int m);
double marginal_benefit(const SensingModel& model, int node, int m);

// Sum of mu_i(m_i) over all nodes.
double sensing_objective(const SensingModel& model, const SensingAllocation& alloc);

// Throws Error{DimensionMismatch, OutOfRange} if the allocation does not fit the model.
void check_allocation(const SensingModel& model, const SensingAllocation& alloc);

// Greedy water-filling. Starting from one robot per node, each remaining
// robot goes to the node with the largest current marginal benefit (lowest
// node id on ties). If `benefits` is non-null, the consumed marginal benefits
// are appended in grant order.
// Throws Error{InsufficientBudget, MaxMExceeded}.
SensingAllocation water_fill(const SensingModel& model, int n_s,
                             std::vector<double>* benefits = nullptr);

// Exhaustive minimiser of the sensing objective; ties resolve to the
// lexicographically smallest allocation. Refuses more than 1e7 candidates.
// Throws Error{InsufficientBudget, InstanceTooLarge}.
SensingAllocation brute_force_alloc(const SensingModel& model, int n_s);

// floor(n_s / K) per node; the first n_s mod K nodes get one extra.
// Throws Error{InsufficientBudget, MaxMExceeded}.
SensingAllocation uniform_alloc(const SensingModel& model, int n_s);

enum class AllocationStrategy { WaterFill, Uniform, Explicit };

std::string_view to_string(AllocationStrategy s) noexcept;
AllocationStrategy parse_allocation_strategy(std::string_view name);

}  // namespace aoi
