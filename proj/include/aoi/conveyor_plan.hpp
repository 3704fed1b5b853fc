#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "aoi/graph.hpp"

namespace aoi {

// Closed walk w_0..w_L on the shortest-path tree, w_0 = w_L = base, visiting
// every tree edge once in each direction.
class EulerWalk {
 public:
  explicit EulerWalk(std::vector<NodeId> sequence);

  // Includes the closing base entry, so sequence().size() == length() + 1.
  const std::vector<NodeId>& sequence() const noexcept { return sequence_; }
  int length() const noexcept { return static_cast<int>(sequence_.size()) - 1; }
  int node_count() const noexcept { return length() / 2 + 1; }

  // Position of a conveyor with phase `phase` at slot t: w_{(t + phase) mod L}.
  NodeId at(Slot t, int phase) const;

  // Parent of v as read off the walk (the node visited just before v's first
  // appearance).
  NodeId parent_of(NodeId v) const { return parent_.at(v); }

  // Walk index t with w_t = v and w_{t+1} = parent(v).
  int baseward_index(NodeId v) const;

 private:
  std::vector<NodeId> sequence_;
  std::vector<NodeId> parent_;
  std::vector<int> up_index_;
};

// Distinct conveyor offsets into an Euler walk of length L, kept sorted.
class PhaseSet {
 public:
  // Throws Error{BudgetOutOfRange} when phases is empty, larger than L,
  // contains duplicates, or has values outside 0..L-1.
  PhaseSet(std::vector<int> phases, int walk_length);

  const std::vector<int>& phases() const noexcept { return phases_; }
  int size() const noexcept { return static_cast<int>(phases_.size()); }
  int walk_length() const noexcept { return walk_length_; }

  friend bool operator==(const PhaseSet&, const PhaseSet&) = default;

 private:
  std::vector<int> phases_;
  int walk_length_;
};

struct CoverageReport {
  bool full_coverage = false;
  // (node, slot residue) pairs with no baseward departure.
  std::vector<std::pair<NodeId, int>> violations;
};

enum class PhaseStrategy { Uniform, Clustered, Random };

std::string_view to_string(PhaseStrategy s) noexcept;
// Throws Error{ConfigInvalid} for unknown names.
PhaseStrategy parse_phase_strategy(std::string_view name);

// Depth-first from the base, children in ascending id order.
EulerWalk euler_walk(const ShortestPathTree& tree);

// { floor(l * L / n_c) : l = 0..n_c-1 }
PhaseSet uniform_phases(int walk_length, int n_c);
// { 0, 1, ..., n_c-1 }
PhaseSet clustered_phases(int n_c, int walk_length);
// n_c distinct offsets drawn uniformly without replacement; fixed by seed.
PhaseSet random_phases(int n_c, int walk_length, std::uint64_t seed);

PhaseSet make_phases(PhaseStrategy strategy, int n_c, int walk_length, std::uint64_t seed);

// h_l = (phi^(l+1) - phi^(l)) mod L over the sorted phases, cyclically.
std::vector<int> cyclic_gaps(const PhaseSet& p);

// Largest cyclic gap: the worst-case baseward inter-visit time at any node.
int gamma_max(const PhaseSet& p);

// Mean residual life of the periodic baseward-visit pattern, sum(h^2) / (2L).
boost::rational<std::int64_t> residual_life_mean(const PhaseSet& p);

// Sorted residues t mod L at which some conveyor leaves `node` towards its
// parent. Throws Error{NodeIsBase}.
std::vector<int> baseward_departure_slots(const EulerWalk& w, NodeId node, const PhaseSet& p);

CoverageReport coverage_audit(const EulerWalk& w, const PhaseSet& p);

}  // namespace aoi
