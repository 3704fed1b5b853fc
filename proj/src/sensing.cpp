#include "aoi/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aoi/error.hpp"

namespace aoi {

namespace {

constexpr double kConvexityTol = 1e-12;
constexpr double kTieTol = 1e-9;
constexpr double kMaxCompositions = 1e7;

void validate_table(const std::vector<std::vector<double>>& mu) {
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const auto& row = mu[k];
    const int node = static_cast<int>(k) + 1;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!(row[j] >= 1.0) || !std::isfinite(row[j])) {
        throw Error(Errc::OutOfRange, "node " + std::to_string(node) + ": mean " +
                                          std::to_string(row[j]) + " at m=" +
                                          std::to_string(j + 1) + " is below one slot");
      }
    }
    for (std::size_t j = 0; j + 1 < row.size(); ++j) {
      const double benefit = row[j] - row[j + 1];
      if (benefit < -kConvexityTol) {
        throw Error(Errc::ConvexityViolation, "node " + std::to_string(node) +
                                                  ": mean increases at m=" + std::to_string(j + 1));
      }
      if (j + 2 < row.size()) {
        const double next = row[j + 1] - row[j + 2];
        if (next > benefit + kConvexityTol) {
          throw Error(Errc::ConvexityViolation,
                      "node " + std::to_string(node) + ": marginal benefit increases at m=" +
                          std::to_string(j + 2));
        }
      }
    }
  }
}

// Number of compositions of n into k positive parts, C(n-1, k-1), as a double.
double composition_count(int n, int k) {
  if (k < 1 || n < k) return 0.0;
  double c = 1.0;
  for (int j = 1; j <= k - 1; ++j) c = c * (n - k + j) / j;
  return c;
}

struct Search {
  const SensingModel& model;
  std::vector<int> current;
  std::vector<int> best;
  double best_value = 0.0;
  bool found = false;

  void recurse(int k, int remaining, double partial) {
    const int nodes = model.node_count();
    if (k == nodes - 1) {
      if (remaining < 1 || remaining > model.max_m()) return;
      current[k] = remaining;
      const double value = partial + model.mu(k + 1, remaining);
      // Lexicographic enumeration: only a strictly better value replaces.
      if (!found || value < best_value - kTieTol) {
        best = current;
        best_value = value;
        found = true;
      }
      return;
    }
    const int upper = std::min(model.max_m(), remaining - (nodes - 1 - k));
    for (int m = 1; m <= upper; ++m) {
      current[k] = m;
      recurse(k + 1, remaining - m, partial + model.mu(k + 1, m));
    }
  }
};

}  // namespace

SensingModel::SensingModel(std::vector<double> alphas, std::vector<std::vector<double>> mu)
    : alphas_(std::move(alphas)), mu_(std::move(mu)) {
  max_m_ = mu_.empty() ? 0 : static_cast<int>(mu_.front().size());
}

SensingModel SensingModel::parametric(std::vector<double> alphas, int max_m) {
  if (alphas.empty()) throw Error(Errc::OutOfRange, "no sensing nodes");
  if (max_m < 1) throw Error(Errc::OutOfRange, "max_m must be >= 1");
  std::vector<std::vector<double>> table;
  table.reserve(alphas.size());
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const double a = alphas[k];
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw Error(Errc::NonPositiveAlpha,
                  "alpha for node " + std::to_string(k + 1) + " must be positive and finite");
    }
    std::vector<double> row(max_m);
    for (int m = 1; m <= max_m; ++m) row[m - 1] = std::max(a / m, 1.0);
    table.push_back(std::move(row));
  }
  validate_table(table);
  return SensingModel(std::move(alphas), std::move(table));
}

SensingModel SensingModel::from_table(std::vector<std::vector<double>> mu_tables) {
  if (mu_tables.empty() || mu_tables.front().empty()) {
    throw Error(Errc::OutOfRange, "empty mean table");
  }
  for (const auto& row : mu_tables) {
    if (row.size() != mu_tables.front().size()) {
      throw Error(Errc::OutOfRange, "mean table rows differ in length");
    }
  }
  validate_table(mu_tables);
  return SensingModel({}, std::move(mu_tables));
}

double SensingModel::mu(int node, int m) const {
  if (node < 1 || node > node_count()) {
    throw Error(Errc::OutOfRange, "node " + std::to_string(node) + " is not a sensing node");
  }
  if (m < 1 || m > max_m_) {
    throw Error(Errc::OutOfRange,
                "m=" + std::to_string(m) + " outside 1.." + std::to_string(max_m_));
  }
  return mu_[node - 1][m - 1];
}

double SensingModel::marginal_benefit(int node, int m) const {
  if (m < 1 || m >= max_m_) {
    throw Error(Errc::OutOfRange,
                "marginal benefit needs 1 <= m < " + std::to_string(max_m_) + ", got " +
                    std::to_string(m));
  }
  return mu(node, m) - mu(node, m + 1);
}

int SensingAllocation::total() const { return std::accumulate(m.begin(), m.end(), 0); }

SensingModel make_model(std::vector<double> alphas, int max_m) {
  return SensingModel::parametric(std::move(alphas), max_m);
}

double mu(const SensingModel& model, int node, int m) { return model.mu(node, m); }

double marginal_benefit(const SensingModel& model, int node, int m) {
  return model.marginal_benefit(node, m);
}

double sensing_objective(const SensingModel& model, const SensingAllocation& alloc) {
  check_allocation(model, alloc);
  double total = 0.0;
  for (int k = 0; k < model.node_count(); ++k) total += model.mu(k + 1, alloc.m[k]);
  return total;
}

void check_allocation(const SensingModel& model, const SensingAllocation& alloc) {
  if (static_cast<int>(alloc.m.size()) != model.node_count()) {
    throw Error(Errc::DimensionMismatch, "allocation has " + std::to_string(alloc.m.size()) +
                                             " entries, model has " +
                                             std::to_string(model.node_count()) + " nodes");
  }
  for (std::size_t k = 0; k < alloc.m.size(); ++k) {
    if (alloc.m[k] < 1 || alloc.m[k] > model.max_m()) {
      throw Error(Errc::OutOfRange, "node " + std::to_string(k + 1) + " gets m=" +
                                        std::to_string(alloc.m[k]) + ", allowed 1.." +
                                        std::to_string(model.max_m()));
    }
  }
}

SensingAllocation water_fill(const SensingModel& model, int n_s, std::vector<double>* benefits) {
  const int nodes = model.node_count();
  if (n_s < nodes) {
    throw Error(Errc::InsufficientBudget, "budget " + std::to_string(n_s) + " below " +
                                              std::to_string(nodes) + " sensing nodes");
  }
  SensingAllocation alloc{std::vector<int>(nodes, 1)};
  for (int remaining = n_s - nodes; remaining > 0; --remaining) {
    int chosen = -1;
    double best = 0.0;
    for (int k = 0; k < nodes; ++k) {
      if (alloc.m[k] >= model.max_m()) continue;
      const double b = model.marginal_benefit(k + 1, alloc.m[k]);
      if (chosen < 0 || b > best) {
        chosen = k;
        best = b;
      }
    }
    if (chosen < 0) {
      throw Error(Errc::MaxMExceeded, "every node already has max_m=" +
                                          std::to_string(model.max_m()) + " robots");
    }
    ++alloc.m[chosen];
    if (benefits) benefits->push_back(best);
  }
  return alloc;
}

SensingAllocation brute_force_alloc(const SensingModel& model, int n_s) {
  const int nodes = model.node_count();
  if (n_s < nodes) {
    throw Error(Errc::InsufficientBudget, "budget " + std::to_string(n_s) + " below " +
                                              std::to_string(nodes) + " sensing nodes");
  }
  if (composition_count(n_s, nodes) > kMaxCompositions) {
    throw Error(Errc::InstanceTooLarge, "more than 1e7 allocations to enumerate");
  }
  Search search{model, std::vector<int>(nodes, 1), {}, 0.0, false};
  search.recurse(0, n_s, 0.0);
  if (!search.found) {
    throw Error(Errc::MaxMExceeded, "no allocation fits within max_m=" +
                                        std::to_string(model.max_m()));
  }
  return SensingAllocation{std::move(search.best)};
}

SensingAllocation uniform_alloc(const SensingModel& model, int n_s) {
  const int nodes = model.node_count();
  if (n_s < nodes) {
    throw Error(Errc::InsufficientBudget, "budget " + std::to_string(n_s) + " below " +
                                              std::to_string(nodes) + " sensing nodes");
  }
  SensingAllocation alloc{std::vector<int>(nodes, n_s / nodes)};
  for (int k = 0; k < n_s % nodes; ++k) ++alloc.m[k];
  if (alloc.m.front() > model.max_m()) {
    throw Error(Errc::MaxMExceeded, "uniform share " + std::to_string(alloc.m.front()) +
                                        " exceeds max_m=" + std::to_string(model.max_m()));
  }
  return alloc;
}

std::string_view to_string(AllocationStrategy s) noexcept {
  switch (s) {
    case AllocationStrategy::WaterFill: return "waterfill";
    case AllocationStrategy::Uniform: return "uniform";
    case AllocationStrategy::Explicit: return "explicit";
  }
  return "unknown";
}

AllocationStrategy parse_allocation_strategy(std::string_view name) {
  if (name == "waterfill") return AllocationStrategy::WaterFill;
  if (name == "uniform") return AllocationStrategy::Uniform;
  if (name == "explicit") return AllocationStrategy::Explicit;
  throw Error(Errc::ConfigInvalid, "unknown allocation strategy '" + std::string(name) + "'");
}

}  // namespace aoi
