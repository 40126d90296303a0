#include <cmath>
#include <sstream>

#include "doctest.h"
#include "maskperc/simulate.hpp"
#include "oracles/exhaustive.hpp"

using namespace maskperc;

namespace {

ContactNetwork make_network(const oracle::SmallGraph& g) {
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  std::vector<NodeType> types;
  for (int t : g.types) types.push_back(t == 0 ? NodeType::masked : NodeType::unmasked);
  return ContactNetwork(g.n, edges, types);
}

const MaskModelParams kFig1 = MaskModelParams::explicit_matrix(0.45, 0.126, 0.18, 0.42, 0.6);

}  // namespace

TEST_CASE("epidemic cutoff") {
  CHECK(epidemic_cutoff(100'000, {}) == 250);
  CHECK(epidemic_cutoff(5'000, {}) == 100);
  CHECK(epidemic_cutoff(10, {.floor = 3, .fraction = 0.5}) == 5);
}

TEST_CASE("zero transmissibility infects only patient zero") {
  const auto net = build_network(DegreeDistribution::poisson(4.0), 1000, 0.5, 1);
  const auto zero = MaskModelParams::explicit_matrix(0.5, 0, 0, 0, 0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = run_outbreak(net, zero, PatientZeroPolicy::random, seed);
    CHECK(r.total_infected == 1);
    CHECK_FALSE(r.emerged);
    CHECK(r.infected_masked + r.infected_unmasked == 1);
  }
}

TEST_CASE("full transmissibility infects the whole component") {
  // Path 0-1-2 plus an isolated pair 3-4.
  const ContactNetwork net(5, std::vector<Edge>{{0, 1}, {1, 2}, {3, 4}},
                           {NodeType::masked, NodeType::unmasked, NodeType::masked, NodeType::unmasked,
                            NodeType::unmasked});
  const auto one = MaskModelParams::explicit_matrix(0.5, 1, 1, 1, 1);
  OutbreakSimulator sim(net);
  const auto r = sim.run(one, NodeId{0}, 7);
  CHECK(r.total_infected == 3);
  CHECK(r.infected_masked == 2);
  CHECK(r.infected_unmasked == 1);
  CHECK(sim.infected(2));
  CHECK_FALSE(sim.infected(3));
  CHECK(r.network_masked == 2);
  CHECK(r.network_unmasked == 3);
  CHECK_THROWS_AS(sim.run(one, NodeId{5}, 7), std::out_of_range);
}

TEST_CASE("forced patient-zero types") {
  const auto net = build_network(DegreeDistribution::poisson(3.0), 500, 0.3, 2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CHECK(run_outbreak(net, kFig1, PatientZeroPolicy::force_masked, seed).patient_zero_type == NodeType::masked);
    CHECK(run_outbreak(net, kFig1, PatientZeroPolicy::force_unmasked, seed).patient_zero_type ==
          NodeType::unmasked);
  }
  const auto all_unmasked = build_network(DegreeDistribution::poisson(3.0), 50, 0.0, 2);
  CHECK_THROWS_AS(run_outbreak(all_unmasked, kFig1, PatientZeroPolicy::force_masked, 1), std::invalid_argument);
}

TEST_CASE("same seed reproduces an outbreak; the simulator can be reused") {
  const auto net = build_network(DegreeDistribution::poisson(5.0), 20'000, 0.45, 3);
  OutbreakSimulator sim(net);
  const auto a = sim.run(kFig1, PatientZeroPolicy::random, 99);
  sim.run(kFig1, PatientZeroPolicy::random, 100);
  const auto b = sim.run(kFig1, PatientZeroPolicy::random, 99);
  CHECK(a.total_infected == b.total_infected);
  CHECK(a.infected_masked == b.infected_masked);
}

TEST_CASE("exhaustive enumeration agrees with Monte Carlo on small graphs") {
  const oracle::SmallGraph g{6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {1, 1}}, {0, 1, 0, 1, 1, 0}};
  const auto exact = oracle::enumerate_outbreak(g, kFig1.T.t, 0);
  const auto hot = MaskModelParams::explicit_matrix(0.5, 0.3, 0.5, 0.7, 0.9);
  const auto exact_hot = oracle::enumerate_outbreak(g, hot.T.t, 0);
  const auto net = make_network(g);
  OutbreakSimulator sim(net);
  const int trials = 40'000;
  for (auto perc : {Percolation::semi_directed, Percolation::undirected}) {
    for (const auto* pair : {&exact, &exact_hot}) {
      const auto& params = pair == &exact ? kFig1 : hot;
      std::vector<int> hits(g.n, 0);
      for (int t = 0; t < trials; ++t) {
        sim.run(params, NodeId{0}, derive_seed(123, t), {.percolation = perc});
        for (int v = 0; v < g.n; ++v) hits[v] += sim.infected(v);
      }
      for (int v = 0; v < g.n; ++v) {
        const double p = pair->infection_probability[v];
        const double sd = std::sqrt(std::max(0.0, p * (1 - p)) / trials);
        CHECK(std::abs(hits[v] / double(trials) - p) <= 4 * sd + 1e-12);
      }
    }
  }
}

TEST_CASE("undirected percolation couples monotonically in T") {
  const auto net = build_network(DegreeDistribution::poisson(3.0), 2000, 0.45, 8);
  OutbreakSimulator low(net), high(net);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const OutbreakOptions opts{.percolation = Percolation::undirected};
    low.run(MaskModelParams::explicit_matrix(0.45, 0.1, 0.2, 0.3, 0.4), NodeId{5}, seed, opts);
    high.run(MaskModelParams::explicit_matrix(0.45, 0.2, 0.3, 0.4, 0.5), NodeId{5}, seed, opts);
    bool subset = true;
    for (NodeId u = 0; u < net.node_count(); ++u) subset = subset && (!low.infected(u) || high.infected(u));
    CHECK(subset);
  }
}

TEST_CASE("ensembles do not depend on the worker count") {
  SimulationConfig cfg;
  cfg.params = kFig1;
  cfg.trials = 60;
  cfg.master_seed = 77;
  const auto dist = DegreeDistribution::poisson(6.0);
  cfg.workers = 1;
  const auto one = run_ensemble(cfg, dist, 3000);
  cfg.workers = 3;
  const auto three = run_ensemble(cfg, dist, 3000);
  std::ostringstream a, b;
  write_trials_csv(a, one.trials);
  write_trials_csv(b, three.trials);
  CHECK(a.str() == b.str());
  CHECK(one.summary.emergence_frequency == three.summary.emergence_frequency);

  cfg.regenerate_network = false;
  cfg.workers = 1;
  const auto fixed1 = run_ensemble(cfg, dist, 3000);
  cfg.workers = 4;
  const auto fixed4 = run_ensemble(cfg, dist, 3000);
  CHECK(fixed1.summary.size_fraction == fixed4.summary.size_fraction);
  for (std::size_t t = 0; t < cfg.trials; ++t) CHECK(fixed1.trials[t].trial_seed == trial_seed(77, t));
}

TEST_CASE("summaries") {
  std::vector<OutbreakResult> trials(4);
  for (auto& t : trials) {
    t.network_masked = 40;
    t.network_unmasked = 60;
  }
  trials[0] = {NodeType::masked, 20, 30, 50, true, 1, 40, 60};
  trials[1] = {NodeType::unmasked, 10, 20, 30, true, 2, 40, 60};
  trials[2] = {NodeType::unmasked, 0, 1, 1, false, 3, 40, 60};
  trials[3] = {NodeType::unmasked, 1, 1, 2, false, 4, 40, 60};
  const auto s = summarize(trials, 100, 25);
  CHECK(s.trials == 4);
  CHECK(s.emerged == 2);
  CHECK(s.emergence_frequency == doctest::Approx(0.5));
  CHECK(s.emergence_se == doctest::Approx(std::sqrt(0.25 / 4)));
  CHECK(s.emergence_by_type[0] == doctest::Approx(1.0));
  CHECK(s.emergence_by_type[1] == doctest::Approx(1.0 / 3));
  CHECK(s.size_fraction == doctest::Approx(0.4));
  CHECK(s.masked_attack_rate == doctest::Approx(15.0 / 40));
  CHECK(s.unmasked_attack_rate == doctest::Approx(25.0 / 60));
  CHECK(s.masked_population_fraction == doctest::Approx(0.15));
  CHECK(s.unmasked_population_fraction == doctest::Approx(0.25));

  const auto none = summarize(std::span(trials).subspan(2), 100, 25);
  CHECK(none.emerged == 0);
  CHECK(none.size_fraction == 0.0);
  CHECK(std::isnan(none.emergence_by_type[0]));
}

TEST_CASE("trial CSV and summary output") {
  std::vector<OutbreakResult> trials = {{NodeType::masked, 2, 1, 3, false, 42, 5, 5}};
  std::ostringstream csv;
  write_trials_csv(csv, trials);
  CHECK(csv.str() == "trial,seed,p0_type,infected_masked,infected_unmasked,total,emerged\n0,42,1,2,1,3,0\n");
  std::ostringstream summary;
  write_summary(summary, summarize(trials, 10, 5));
  CHECK(summary.str().find("emergence_frequency = 0") != std::string::npos);
}

TEST_CASE("invalid simulation configs") {
  SimulationConfig cfg;
  cfg.params = kFig1;
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.trials = 1;
  cfg.params.m = 2.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
