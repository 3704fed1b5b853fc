#include "aoi/sim.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "aoi/error.hpp"

namespace aoi {

std::vector<int> conveyor_phases_of(const PhaseSet& p) { return p.phases(); }

SimConfig make_sim_config(const Graph& graph, SensingModel model, SensingAllocation alloc,
                          std::vector<int> conveyor_phases, Slot horizon,
                          std::optional<Slot> warmup, std::uint64_t seed,
                          std::optional<EnergyParams> energy) {
  auto tree = shortest_path_tree(graph);
  auto walk = euler_walk(tree);
  const Slot w = warmup.value_or(10 * static_cast<Slot>(walk.length()));
  return SimConfig{graph,
                   std::move(tree),
                   std::move(walk),
                   std::move(conveyor_phases),
                   std::move(model),
                   std::move(alloc),
                   horizon,
                   w,
                   seed,
                   energy};
}

double SimResult::mean_pickup_wait() const {
  std::int64_t sum = 0;
  std::int64_t count = 0;
  for (std::size_t v = 0; v < pickup_wait_sum.size(); ++v) {
    sum += pickup_wait_sum[v];
    count += pickup_wait_count[v];
  }
  return count == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(count);
}

SensingStream::SensingStream(std::uint64_t seed, NodeId node) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(node)};
  engine_.seed(seq);
}

double SensingStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int draw_sensing_time(double q, SensingStream& rng) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw Error(Errc::InvalidProbability, "success probability " + std::to_string(q));
  }
  int k = 1;
  while (!rng.trial(q)) ++k;
  return k;
}

void validate(const SimConfig& cfg) {
  auto fail = [](const std::string& what) { throw Error(Errc::ConfigInvalid, what); };
  const int n = cfg.graph.node_count();
  if (cfg.warmup < 0) fail("warmup must be >= 0");
  if (cfg.horizon <= cfg.warmup) fail("horizon must exceed warmup");
  if (cfg.tree.node_count() != n) fail("tree does not match graph");
  if (cfg.walk.length() != 2 * (n - 1)) fail("walk length is not 2(|V|-1)");
  const auto dist = bfs_distances(cfg.graph);
  for (NodeId v = 1; v < n; ++v) {
    const NodeId p = cfg.tree.parent[v];
    if (!cfg.graph.has_edge(v, p) || cfg.tree.depth[v] != dist[v] || dist[p] != dist[v] - 1) {
      fail("tree is not a shortest-path tree of the graph at node " + std::to_string(v));
    }
    if (cfg.walk.parent_of(v) != p) fail("walk does not follow the tree at node " + std::to_string(v));
  }
  if (cfg.conveyor_phases.empty()) fail("at least one conveyor is required");
  for (int phi : cfg.conveyor_phases) {
    if (phi < 0 || phi >= cfg.walk.length()) fail("conveyor phase " + std::to_string(phi) + " outside the walk");
  }
  if (cfg.model.node_count() != n - 1) fail("sensing model does not cover every non-base node");
  try {
    check_allocation(cfg.model, cfg.alloc);
  } catch (const Error& e) {
    fail(e.what());
  }
  if (cfg.energy) {
    const auto& e = *cfg.energy;
    if (!(e.b_max > 0.0)) fail("b_max must be positive");
    if (!(e.e_move >= 0.0)) fail("e_move must be nonnegative");
    if (!(e.r_chg > 0.0)) fail("r_chg must be positive");
    if (e.b_max < e.e_move * cfg.tree.max_depth()) {
      throw Error(Errc::BatteryTooSmall, "b_max is below e_move times the maximum depth " +
                                             std::to_string(cfg.tree.max_depth()));
    }
  }
}

namespace {

enum class Mode { Nominal, Returning, Charging, Waiting };

struct Conveyor {
  int phase = 0;
  NodeId pos = kBase;
  Mode mode = Mode::Nominal;
  double battery = 0.0;
};

class Engine {
 public:
  explicit Engine(const SimConfig& cfg)
      : cfg_(cfg),
        n_(cfg.graph.node_count()),
        stores_(static_cast<std::size_t>(n_ + static_cast<int>(cfg.conveyor_phases.size())) * n_),
        q_(n_, 1.0),
        next_start_(n_, 0),
        freshest_start_(n_, 0),
        freshest_gen_(n_, -1),
        delivered_(n_),
        pending_count_(n_, 0),
        pending_sum_(n_, 0) {
    for (NodeId v = 1; v < n_; ++v) {
      q_[v] = cfg.model.success_probability(v, cfg.alloc[v]);
      streams_.emplace_back(cfg.seed, v);
    }
    const double full = cfg.energy ? cfg.energy->b_max : 0.0;
    for (int phi : cfg.conveyor_phases) {
      conveyors_.push_back(Conveyor{phi, cfg.walk.at(0, phi), Mode::Nominal, full});
    }
    result_.per_node_aoi.assign(n_, 0.0);
    result_.per_node_area.assign(n_, 0);
    result_.pickup_wait_sum.assign(n_, 0);
    result_.pickup_wait_count.assign(n_, 0);
    if (cfg.energy) {
      result_.energy_trace.emplace(conveyors_.size(), ConveyorEnergyStats{0, 0, 0, 0, full});
    }
  }

  SimResult run() {
    for (Slot t = 0; t < cfg_.horizon; ++t) {
      if (t > 0) move(t);
      deliver(t);
      sense(t);
      gossip();
      if (t >= cfg_.warmup) {
        for (NodeId v = 1; v < n_; ++v) result_.per_node_area[v] += t - freshest_start_[v];
      }
    }
    const Slot span = cfg_.horizon - cfg_.warmup;
    result_.averaged_slots = span;
    double sum = 0.0;
    for (NodeId v = 1; v < n_; ++v) {
      result_.per_node_aoi[v] =
          static_cast<double>(result_.per_node_area[v]) / static_cast<double>(span);
      sum += result_.per_node_aoi[v];
    }
    result_.network_aoi = sum / (n_ - 1);
    return std::move(result_);
  }

 private:
  Sample* store(int entity) { return &stores_[static_cast<std::size_t>(entity) * n_]; }
  Sample* node_store(NodeId v) { return store(v); }
  Sample* conveyor_store(std::size_t c) { return store(n_ + static_cast<int>(c)); }

  // Transition t-1 -> t.
  void move(Slot t) {
    for (std::size_t c = 0; c < conveyors_.size(); ++c) {
      auto& cv = conveyors_[c];
      const NodeId from = cv.pos;
      cv.pos = cfg_.energy ? energy_step(c, t) : cfg_.walk.at(t, cv.phase);
      if (from != kBase && cv.pos == cfg_.tree.parent[from]) resolve_pickups(from, t - 1);
    }
  }

  NodeId energy_step(std::size_t c, Slot t) {
    auto& cv = conveyors_[c];
    auto& stats = (*result_.energy_trace)[c];
    const auto& e = *cfg_.energy;
    auto step_home = [&] {
      cv.battery -= e.e_move;
      cv.pos = cfg_.tree.parent[cv.pos];
      ++stats.detour_slots;
      if (cv.pos == kBase) cv.mode = Mode::Charging;
    };
    switch (cv.mode) {
      case Mode::Nominal: {
        const NodeId next = cfg_.walk.at(t, cv.phase);
        if (cv.battery - e.e_move >= e.e_move * cfg_.tree.depth[next]) {
          cv.battery -= e.e_move;
          cv.pos = next;
          break;
        }
        ++stats.recharge_trips;
        if (cv.pos == kBase) {
          cv.mode = Mode::Charging;
          charge(cv, stats, t);
        } else {
          cv.mode = Mode::Returning;
          step_home();
        }
        break;
      }
      case Mode::Returning:
        step_home();
        break;
      case Mode::Charging:
        charge(cv, stats, t);
        break;
      case Mode::Waiting:
        ++stats.waiting_slots;
        if (cfg_.walk.at(t, cv.phase) == kBase) cv.mode = Mode::Nominal;
        break;
    }
    stats.min_battery = std::min(stats.min_battery, cv.battery);
    return cv.pos;
  }

  void charge(Conveyor& cv, ConveyorEnergyStats& stats, Slot t) {
    const double b_max = cfg_.energy->b_max;
    ++stats.charging_slots;
    cv.battery = std::min(b_max, cv.battery + cfg_.energy->r_chg);
    if (cv.battery >= b_max) {
      cv.mode = cfg_.walk.at(t, cv.phase) == kBase ? Mode::Nominal : Mode::Waiting;
    }
  }

  void resolve_pickups(NodeId v, Slot departure) {
    if (pending_count_[v] == 0) return;
    result_.pickup_wait_sum[v] += pending_count_[v] * departure - pending_sum_[v];
    result_.pickup_wait_count[v] += pending_count_[v];
    pending_count_[v] = 0;
    pending_sum_[v] = 0;
  }

  void deliver(Slot t) {
    for (std::size_t c = 0; c < conveyors_.size(); ++c) {
      if (conveyors_[c].pos != kBase) continue;
      Sample* s = conveyor_store(c);
      for (NodeId o = 1; o < n_; ++o) {
        if (s[o].generated < 0) continue;
        if (delivered_[o].insert(s[o].generated).second) {
          const bool freshest = s[o].generated > freshest_gen_[o];
          if (freshest) {
            freshest_gen_[o] = s[o].generated;
            freshest_start_[o] = s[o].sensing_start;
          }
          result_.delivery_log.push_back(
              DeliveryEvent{o, s[o].sensing_start, s[o].generated, t, freshest});
        }
        s[o] = Sample{};
      }
    }
  }

  void sense(Slot t) {
    for (NodeId v = 1; v < n_; ++v) {
      if (!streams_[v - 1].trial(q_[v])) continue;
      node_store(v)[v] = Sample{v, next_start_[v], t};
      next_start_[v] = t + 1;
      if (t >= cfg_.warmup) {
        ++pending_count_[v];
        pending_sum_[v] += t;
      }
    }
  }

  // Every non-base node hosts at least one sensing robot, so its store acts
  // as the hub: fold all co-located conveyors into it, then copy it back.
  void gossip() {
    for (std::size_t c = 0; c < conveyors_.size(); ++c) {
      const NodeId v = conveyors_[c].pos;
      if (v == kBase) continue;
      Sample* hub = node_store(v);
      const Sample* s = conveyor_store(c);
      for (NodeId o = 1; o < n_; ++o) {
        if (s[o].generated > hub[o].generated) hub[o] = s[o];
      }
    }
    for (std::size_t c = 0; c < conveyors_.size(); ++c) {
      const NodeId v = conveyors_[c].pos;
      if (v == kBase) continue;
      std::copy_n(node_store(v), n_, conveyor_store(c));
    }
  }

  const SimConfig& cfg_;
  int n_;
  std::vector<Sample> stores_;
  std::vector<Conveyor> conveyors_;
  std::vector<SensingStream> streams_;
  std::vector<double> q_;
  std::vector<Slot> next_start_;
  std::vector<Slot> freshest_start_;
  std::vector<Slot> freshest_gen_;
  std::vector<std::unordered_set<Slot>> delivered_;
  std::vector<std::int64_t> pending_count_;
  std::vector<std::int64_t> pending_sum_;
  SimResult result_;
};

}  // namespace

SimResult run(const SimConfig& cfg) {
  validate(cfg);
  return Engine(cfg).run();
}

SimResult run_energy(const SimConfig& cfg) {
  if (!cfg.energy) throw Error(Errc::ConfigInvalid, "energy parameters are required");
  return run(cfg);
}

LogAverages aoi_from_event_log(std::span<const DeliveryEvent> log, int node_count, Slot horizon,
                               Slot warmup) {
  if (horizon <= warmup || warmup < 0) {
    throw Error(Errc::ConfigInvalid, "horizon must exceed warmup");
  }
  std::vector<std::vector<const DeliveryEvent*>> by_node(node_count);
  for (const auto& ev : log) {
    if (!ev.became_freshest) continue;
    if (ev.origin < 1 || ev.origin >= node_count) {
      throw Error(Errc::IndexOutOfRange, "event origin " + std::to_string(ev.origin));
    }
    auto& seq = by_node[ev.origin];
    if (!seq.empty() && ev.delivered < seq.back()->delivered) {
      throw Error(Errc::UnsortedLog, "deliveries for node " + std::to_string(ev.origin) +
                                         " go back in time at slot " +
                                         std::to_string(ev.delivered));
    }
    seq.push_back(&ev);
  }

  // Area of the sawtooth over [from, to) clipped to [warmup, horizon), where
  // Delta(t) = t - anchor on that stretch.
  auto clipped_area = [&](Slot from, Slot to, Slot anchor) -> std::int64_t {
    const Slot a = std::max(from, warmup);
    const Slot b = std::min(to, horizon);
    if (b <= a) return 0;
    const Slot width = b - a;
    // Cycle area with initial age (a - anchor) over `width` slots.
    return (a - anchor) * width + width * (width - 1) / 2;
  };

  LogAverages out;
  out.per_node_aoi.assign(node_count, 0.0);
  out.per_node_area.assign(node_count, 0);
  const Slot span = horizon - warmup;
  for (NodeId v = 1; v < node_count; ++v) {
    // Before the first delivery the age grows from zero.
    Slot anchor = 0;
    Slot cycle_start = 0;
    std::int64_t area = 0;
    for (const DeliveryEvent* ev : by_node[v]) {
      area += clipped_area(cycle_start, ev->delivered, anchor);
      cycle_start = ev->delivered;
      anchor = ev->sensing_start;
    }
    area += clipped_area(cycle_start, horizon, anchor);
    out.per_node_area[v] = area;
    out.per_node_aoi[v] = static_cast<double>(area) / static_cast<double>(span);
  }
  return out;
}

void write_trace(std::ostream& out, std::span<const DeliveryEvent> log) {
  for (const auto& ev : log) {
    const nlohmann::json j = {{"origin", ev.origin},
                              {"sensing_start", ev.sensing_start},
                              {"generated", ev.generated},
                              {"delivered", ev.delivered},
                              {"became_freshest", ev.became_freshest}};
    out << j.dump() << '\n';
  }
}

}  // namespace aoi
