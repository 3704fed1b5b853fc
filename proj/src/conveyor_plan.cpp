#include "aoi/conveyor_plan.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "aoi/error.hpp"

namespace aoi {

EulerWalk::EulerWalk(std::vector<NodeId> sequence) : sequence_(std::move(sequence)) {
  const int len = length();
  if (len < 2 || len % 2 != 0 || sequence_.front() != kBase || sequence_.back() != kBase) {
    throw Error(Errc::ConfigInvalid, "walk must be closed at the base with even length >= 2");
  }
  const int n = node_count();
  parent_.assign(n, -1);
  up_index_.assign(n, -1);
  std::vector<bool> seen(n, false);
  seen[kBase] = true;
  for (int t = 1; t <= len; ++t) {
    const NodeId v = sequence_[t];
    if (v < 0 || v >= n) {
      throw Error(Errc::IndexOutOfRange, "walk node " + std::to_string(v));
    }
    if (!seen[v]) {
      seen[v] = true;
      parent_[v] = sequence_[t - 1];
    }
  }
  for (int t = 0; t < len; ++t) {
    const NodeId v = sequence_[t];
    if (v != kBase && sequence_[t + 1] == parent_[v]) {
      if (up_index_[v] >= 0) {
        throw Error(Errc::ConfigInvalid, "parent edge of " + std::to_string(v) +
                                             " traversed baseward twice");
      }
      up_index_[v] = t;
    }
  }
  for (NodeId v = 1; v < n; ++v) {
    if (up_index_[v] < 0) {
      throw Error(Errc::ConfigInvalid, "node " + std::to_string(v) + " never left baseward");
    }
  }
}

NodeId EulerWalk::at(Slot t, int phase) const {
  const Slot len = length();
  return sequence_[static_cast<std::size_t>((t + phase) % len)];
}

int EulerWalk::baseward_index(NodeId v) const {
  if (v == kBase) throw Error(Errc::NodeIsBase, "the base has no parent edge");
  return up_index_.at(v);
}

PhaseSet::PhaseSet(std::vector<int> phases, int walk_length)
    : phases_(std::move(phases)), walk_length_(walk_length) {
  const int n = static_cast<int>(phases_.size());
  if (walk_length_ < 1 || n < 1 || n > walk_length_) {
    throw Error(Errc::BudgetOutOfRange, "phase count " + std::to_string(n) + " not in 1.." +
                                            std::to_string(walk_length_));
  }
  std::sort(phases_.begin(), phases_.end());
  if (std::adjacent_find(phases_.begin(), phases_.end()) != phases_.end()) {
    throw Error(Errc::BudgetOutOfRange, "duplicate phase");
  }
  if (phases_.front() < 0 || phases_.back() >= walk_length_) {
    throw Error(Errc::BudgetOutOfRange, "phase outside 0.." + std::to_string(walk_length_ - 1));
  }
}

std::string_view to_string(PhaseStrategy s) noexcept {
  switch (s) {
    case PhaseStrategy::Uniform: return "uniform";
    case PhaseStrategy::Clustered: return "clustered";
    case PhaseStrategy::Random: return "random";
  }
  return "unknown";
}

PhaseStrategy parse_phase_strategy(std::string_view name) {
  if (name == "uniform") return PhaseStrategy::Uniform;
  if (name == "clustered") return PhaseStrategy::Clustered;
  if (name == "random") return PhaseStrategy::Random;
  throw Error(Errc::ConfigInvalid, "unknown phase strategy '" + std::string(name) + "'");
}

namespace {

void walk_subtree(const std::vector<std::vector<NodeId>>& children, NodeId v,
                  std::vector<NodeId>& out) {
  for (NodeId c : children[v]) {
    out.push_back(c);
    walk_subtree(children, c, out);
    out.push_back(v);
  }
}

void check_budget(int n_c, int walk_length) {
  if (n_c < 1 || n_c > walk_length) {
    throw Error(Errc::BudgetOutOfRange, "conveyor count " + std::to_string(n_c) + " not in 1.." +
                                            std::to_string(walk_length));
  }
}

}  // namespace

EulerWalk euler_walk(const ShortestPathTree& tree) {
  std::vector<std::vector<NodeId>> children(tree.node_count());
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    if (v != kBase) children[tree.parent[v]].push_back(v);
  }
  std::vector<NodeId> seq{kBase};
  walk_subtree(children, kBase, seq);
  return EulerWalk(std::move(seq));
}

PhaseSet uniform_phases(int walk_length, int n_c) {
  check_budget(n_c, walk_length);
  std::vector<int> phases;
  phases.reserve(n_c);
  for (int l = 0; l < n_c; ++l) {
    phases.push_back(static_cast<int>(static_cast<std::int64_t>(l) * walk_length / n_c));
  }
  return PhaseSet(std::move(phases), walk_length);
}

PhaseSet clustered_phases(int n_c, int walk_length) {
  check_budget(n_c, walk_length);
  std::vector<int> phases(n_c);
  for (int l = 0; l < n_c; ++l) phases[l] = l;
  return PhaseSet(std::move(phases), walk_length);
}

PhaseSet random_phases(int n_c, int walk_length, std::uint64_t seed) {
  check_budget(n_c, walk_length);
  std::vector<int> all(walk_length);
  for (int l = 0; l < walk_length; ++l) all[l] = l;
  std::vector<int> picked;
  picked.reserve(n_c);
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), n_c, rng);
  return PhaseSet(std::move(picked), walk_length);
}

PhaseSet make_phases(PhaseStrategy strategy, int n_c, int walk_length, std::uint64_t seed) {
  switch (strategy) {
    case PhaseStrategy::Uniform: return uniform_phases(walk_length, n_c);
    case PhaseStrategy::Clustered: return clustered_phases(n_c, walk_length);
    case PhaseStrategy::Random: return random_phases(n_c, walk_length, seed);
  }
  throw Error(Errc::ConfigInvalid, "unknown phase strategy");
}

std::vector<int> cyclic_gaps(const PhaseSet& p) {
  const auto& ph = p.phases();
  const int n = p.size();
  const int len = p.walk_length();
  std::vector<int> gaps(n);
  for (int l = 0; l < n; ++l) {
    gaps[l] = ((ph[(l + 1) % n] - ph[l]) % len + len) % len;
  }
  // A single phase wraps onto itself: the gap is the whole period.
  if (n == 1) gaps[0] = len;
  return gaps;
}

int gamma_max(const PhaseSet& p) {
  const auto gaps = cyclic_gaps(p);
  return *std::max_element(gaps.begin(), gaps.end());
}

boost::rational<std::int64_t> residual_life_mean(const PhaseSet& p) {
  std::int64_t sum_sq = 0;
  for (int h : cyclic_gaps(p)) sum_sq += static_cast<std::int64_t>(h) * h;
  return {sum_sq, 2 * static_cast<std::int64_t>(p.walk_length())};
}

std::vector<int> baseward_departure_slots(const EulerWalk& w, NodeId node, const PhaseSet& p) {
  if (p.walk_length() != w.length()) {
    throw Error(Errc::DimensionMismatch, "phase set and walk lengths differ");
  }
  const int up = w.baseward_index(node);
  const int len = w.length();
  std::vector<int> slots;
  slots.reserve(p.size());
  for (int phi : p.phases()) slots.push_back(((up - phi) % len + len) % len);
  std::sort(slots.begin(), slots.end());
  return slots;
}

CoverageReport coverage_audit(const EulerWalk& w, const PhaseSet& p) {
  CoverageReport report;
  const int len = w.length();
  for (NodeId v = 1; v < w.node_count(); ++v) {
    const auto slots = baseward_departure_slots(w, v, p);
    std::vector<bool> covered(len, false);
    for (int s : slots) covered[s] = true;
    for (int r = 0; r < len; ++r) {
      if (!covered[r]) report.violations.emplace_back(v, r);
    }
  }
  report.full_coverage = report.violations.empty();
  return report;
}

}  // namespace aoi
