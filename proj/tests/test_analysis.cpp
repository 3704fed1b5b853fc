#include <doctest.h>

#include <cmath>
#include <numeric>

#include "aoi/analysis.hpp"
#include "aoi/error.hpp"
#include "support.hpp"

using namespace aoi;

namespace {

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidGraph;
}

SimConfig ref_config(std::vector<int> phases, Slot horizon, std::uint64_t seed = 1) {
  return make_sim_config(test::ref_graph(), make_model(test::kRefAlphas, 1),
                         SensingAllocation{std::vector<int>(7, 1)}, std::move(phases), horizon,
                         140, seed);
}

}  // namespace

TEST_CASE("lower_bound examples") {
  const auto g = test::ref_graph();
  const auto report = lower_bound(make_model(test::kRefAlphas, 1),
                                  SensingAllocation{std::vector<int>(7, 1)}, bfs_distances(g));
  CHECK(report.per_node_bound == std::vector<double>{0, 7, 11, 6, 18, 11, 16, 15});
  CHECK(report.network_bound == 12.0);

  const std::vector<Edge> path = {{0, 1}, {1, 2}};
  const auto d = bfs_distances(build_graph(3, path));
  const auto small = lower_bound(make_model({1.0, 3.0}, 1), SensingAllocation{{1, 1}}, d);
  CHECK(small.per_node_bound[1] == 1.0);
  CHECK(small.per_node_bound[2] == 6.0);
  CHECK(small.network_bound == 3.5);

  CHECK(error_of([&] { lower_bound(make_model({1.0}, 1), SensingAllocation{{1}}, d); }) ==
        Errc::DimensionMismatch);
}

TEST_CASE("property: bound is at least the depth and falls with the sensing budget") {
  const auto g = test::ref_graph();
  const auto d = bfs_distances(g);
  const auto model = make_model(test::kRefAlphas, 40);
  double prev = 1e300;
  for (int n_s = 7; n_s <= 40; ++n_s) {
    const auto report = lower_bound(model, water_fill(model, n_s), d);
    for (NodeId v = 1; v < 8; ++v) CHECK(report.per_node_bound[v] >= d[v]);
    const double mean = std::accumulate(report.per_node_bound.begin() + 1,
                                        report.per_node_bound.end(), 0.0) / 7;
    CHECK(report.network_bound == doctest::Approx(mean).epsilon(1e-12));
    CHECK(report.network_bound <= prev);
    prev = report.network_bound;
  }
}

TEST_CASE("transport_penalty") {
  const auto g = test::ref_graph();
  const auto bound = lower_bound(make_model(test::kRefAlphas, 1),
                                 SensingAllocation{std::vector<int>(7, 1)}, bfs_distances(g));
  SimResult same;
  same.per_node_aoi = bound.per_node_bound;
  const auto zero = transport_penalty(same, bound);
  CHECK(zero.per_node_delta == std::vector<double>(8, 0.0));
  CHECK(zero.delta_avg == 0.0);

  const auto full = run(ref_config([] {
    std::vector<int> p(14);
    std::iota(p.begin(), p.end(), 0);
    return p;
  }(), 200000));
  const auto pf = transport_penalty(full, bound);
  for (NodeId v = 1; v < 8; ++v) CHECK(std::abs(pf.per_node_delta[v]) <= 0.02 * bound.per_node_bound[v]);

  const auto sparse = transport_penalty(run(ref_config({0}, 50000)), bound);
  for (NodeId v = 1; v < 8; ++v) CHECK(sparse.per_node_delta[v] > 0.0);
  CHECK(sparse.delta_avg > 0.0);

  SimResult wrong;
  wrong.per_node_aoi = {0, 1};
  CHECK(error_of([&] { transport_penalty(wrong, bound); }) == Errc::DimensionMismatch);
}

TEST_CASE("run_seeds statistics and thread independence") {
  const auto cfg = ref_config({0, 4, 9}, 20000, 5);
  std::vector<double> observed(4, -1);
  const auto stats = run_seeds(cfg, 4, 1, [&](const SimConfig& c, const SimResult& r) {
    observed.at(c.seed - 5) = r.network_aoi;
  });
  CHECK(stats.seeds() == 4);
  CHECK(stats.network_aoi == observed);
  for (int s = 0; s < 4; ++s) {
    auto one = cfg;
    one.seed = cfg.seed + s;
    CHECK(run(one).network_aoi == stats.network_aoi[s]);
  }
  const double mean = std::accumulate(observed.begin(), observed.end(), 0.0) / 4;
  double ss = 0;
  for (double x : observed) ss += (x - mean) * (x - mean);
  CHECK(stats.mean == doctest::Approx(mean).epsilon(1e-12));
  CHECK(stats.std_dev == doctest::Approx(std::sqrt(ss / 3)).epsilon(1e-12));
  CHECK(stats.sem() == doctest::Approx(std::sqrt(ss / 3) / 2).epsilon(1e-12));

  const auto threaded = run_seeds(cfg, 4, 3);
  CHECK(threaded.network_aoi == stats.network_aoi);
  CHECK(threaded.per_node_mean == stats.per_node_mean);
  CHECK(threaded.pickup_wait == stats.pickup_wait);

  CHECK(error_of([&] { run_seeds(cfg, 0); }) == Errc::ConfigInvalid);
}

TEST_CASE("leq_within") {
  SeedStats a, b;
  a.network_aoi = {10, 10.2, 9.8};
  a.mean = 10;
  a.std_dev = 0.2;
  b.network_aoi = {9.9, 9.9, 9.9};
  b.mean = 9.9;
  b.std_dev = 0.0;
  CHECK(leq_within(a, b));
  CHECK_FALSE(leq_within(a, b, 0.0));
  b.mean = 9.0;
  CHECK_FALSE(leq_within(a, b));
}

TEST_CASE("split_sweep examples") {
  SweepOptions opts;
  opts.horizon = 50000;
  opts.seeds = 4;

  const auto g = test::ref_graph();
  const auto single = split_sweep(8, test::kRefAlphas, g, opts);
  REQUIRE(single.cells.size() == 1);
  CHECK(single.cells[0].n_s == 7);
  CHECK(single.cells[0].n_c == 1);
  CHECK(single.argmin == 0);

  const auto net8 = split_sweep(21, test::kRefAlphas, g, opts);
  REQUIRE(net8.cells.size() == 14);
  const auto& full = net8.cells.front();
  CHECK(full.n_s == 7);
  CHECK(full.n_c == 14);
  CHECK(full.n_c_nominal == 14);
  CHECK(std::abs(full.mean_aoi - 12.0) <= 0.02 * 12.0);
  CHECK(full.bound == 12.0);
  for (const auto& c : net8.cells) {
    CHECK(c.n_s + c.n_c_nominal == 21);
    CHECK(c.mean_aoi >= c.bound - 3 * c.std_aoi / std::sqrt(c.seeds));
  }

  CHECK(error_of([&] { split_sweep(7, test::kRefAlphas, g, opts); }) == Errc::BudgetTooSmall);
}

TEST_CASE("split_sweep on a single edge") {
  const std::vector<Edge> edge = {{0, 1}};
  SweepOptions opts;
  opts.horizon = 200000;
  opts.seeds = 4;
  const auto sweep = split_sweep(4, {2.0}, build_graph(2, edge), opts);
  REQUIRE(sweep.cells.size() == 3);
  // (n_s, n_c) = (1, 3 -> 2), (2, 2), (3, 1)
  CHECK(sweep.cells[0].capped());
  CHECK(sweep.cells[0].n_c == 2);
  CHECK(std::abs(sweep.cells[0].mean_aoi - 3.0) <= 0.02 * 3.0);
  CHECK(sweep.cells[1].mean_aoi == 1.0);
  CHECK(std::abs(sweep.cells[2].mean_aoi - 1.5) <= 0.02 * 1.5);
  CHECK(sweep.argmin == 1);
}

TEST_CASE("split_sweep argmin ties go to the larger sensing budget") {
  // With alpha = 1 sensing is instant, so every full-coverage cell ties.
  const std::vector<Edge> edge = {{0, 1}};
  SweepOptions opts;
  opts.horizon = 1000;
  opts.seeds = 2;
  const auto sweep = split_sweep(4, {1.0}, build_graph(2, edge), opts);
  REQUIRE(sweep.cells.size() == 3);
  CHECK(sweep.cells[0].mean_aoi == sweep.cells[1].mean_aoi);
  CHECK(sweep.argmin == 1);
}

TEST_CASE("phase_comparison") {
  const auto cfg = ref_config({0}, 30000);
  const auto strategies = default_strategies(3, 11);
  REQUIRE(strategies.size() == 5);
  CHECK(strategies[0].label == "uniform");
  CHECK(strategies[1].label == "clustered");
  CHECK(strategies[4].label == "random3");

  const auto rows = phase_comparison(cfg, strategies, {1, 7, 14}, 4);
  REQUIRE(rows.size() == 5 * 3 + 3);
  auto row = [&](const std::string& s, int n_c) {
    for (const auto& r : rows)
      if (r.strategy == s && r.n_c == n_c) return r;
    FAIL("missing row");
    return PhaseRow{};
  };
  for (const auto& s : strategies) CHECK(row(s.label, 14).mean_aoi == row("uniform", 14).mean_aoi);
  CHECK(row("clustered", 1).mean_aoi == row("uniform", 1).mean_aoi);
  for (const char* r : {"random1", "random2", "random3"}) {
    const auto a = row("uniform", 1), b = row(r, 1);
    CHECK(std::abs(a.mean_aoi - b.mean_aoi) <= 3 * std::hypot(a.sem, b.sem));
    CHECK(row("uniform", 7).mean_aoi <= row(r, 7).mean_aoi + 3 * std::hypot(row("uniform", 7).sem, row(r, 7).sem));
  }
  CHECK(row("bound", 7).mean_aoi == 12.0);
  CHECK(row("uniform", 7).phases == std::vector<int>{0, 2, 4, 6, 8, 10, 12});

  CHECK(error_of([&] { phase_comparison(cfg, strategies, {15}, 2); }) == Errc::ConfigInvalid);
  CHECK(error_of([&] { phase_comparison(cfg, {}, {1}, 2); }) == Errc::ConfigInvalid);
}

TEST_CASE("property: transport penalty shrinks as conveyors are added") {
  const auto g = test::ref_graph();
  const auto bound = lower_bound(make_model(test::kRefAlphas, 1),
                                 SensingAllocation{std::vector<int>(7, 1)}, bfs_distances(g));
  SeedStats prev;
  bool first = true;
  for (int n_c : {1, 2, 4, 7, 14}) {
    const auto stats = run_seeds(ref_config(conveyor_phases_of(uniform_phases(14, n_c)), 30000), 6);
    if (!first) {
      CAPTURE(n_c);
      CHECK(stats.mean - bound.network_bound <=
            prev.mean - bound.network_bound + 3 * std::hypot(stats.sem(), prev.sem()));
    }
    prev = stats;
    first = false;
  }
}
