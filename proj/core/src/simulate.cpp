#include "maskperc/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "maskperc/rng.hpp"

namespace maskperc {

std::size_t epidemic_cutoff(std::size_t n, const CutoffRule& rule) {
  const auto relative = static_cast<std::size_t>(std::ceil(rule.fraction * static_cast<double>(n)));
  return std::max(rule.floor, relative);
}

OutbreakSimulator::OutbreakSimulator(const ContactNetwork& net)
    : net_(net), counts_(type_counts(net)), stamp_(net.node_count(), 0) {
  queue_.reserve(1024);
}

OutbreakResult OutbreakSimulator::run(const MaskModelParams& params, NodeId patient_zero,
                                      std::uint64_t seed, const OutbreakOptions& opts) {
  if (patient_zero >= net_.node_count()) throw std::out_of_range("patient zero index out of range");
  Engine eng = make_engine(seed);
  return spread(params, patient_zero, seed, eng, opts);
}

OutbreakResult OutbreakSimulator::run(const MaskModelParams& params, PatientZeroPolicy policy,
                                      std::uint64_t seed, const OutbreakOptions& opts) {
  const std::size_t n = net_.node_count();
  if (n == 0) throw std::invalid_argument("empty network");
  std::optional<NodeType> wanted;
  if (policy == PatientZeroPolicy::force_masked) wanted = NodeType::masked;
  if (policy == PatientZeroPolicy::force_unmasked) wanted = NodeType::unmasked;
  if (wanted) {
    const std::size_t available = *wanted == NodeType::masked ? counts_.masked : counts_.unmasked;
    if (available == 0) throw std::invalid_argument("network has no " + to_string(*wanted) + " node for patient zero");
  }
  Engine eng = make_engine(seed);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  NodeId p0 = pick(eng);
  while (wanted && net_.type(p0) != *wanted) p0 = pick(eng);
  return spread(params, p0, seed, eng, opts);
}

OutbreakResult OutbreakSimulator::spread(const MaskModelParams& params, NodeId patient_zero,
                                         std::uint64_t seed, Engine& eng, const OutbreakOptions& opts) {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  const Matrix2& T = params.T.t;
  std::array<std::size_t, 2> infected{};

  queue_.clear();
  stamp_[patient_zero] = epoch_;
  queue_.push_back(patient_zero);
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    const NodeId u = queue_[head];
    const auto& row = T[index_of(net_.type(u))];
    ++infected[index_of(net_.type(u))];
    const auto nbrs = net_.neighbors(u);
    const auto eids = net_.incident_edges(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeId v = nbrs[i];
      if (stamp_[v] == epoch_) continue;
      const double p = row[index_of(net_.type(v))];
      const double coin = opts.percolation == Percolation::semi_directed
                              ? uniform01(eng)
                              : hashed_uniform01(seed, eids[i]);
      if (coin < p) {
        stamp_[v] = epoch_;
        queue_.push_back(v);
      }
    }
  }

  OutbreakResult r;
  r.patient_zero_type = net_.type(patient_zero);
  r.infected_masked = infected[0];
  r.infected_unmasked = infected[1];
  r.total_infected = infected[0] + infected[1];
  r.emerged = r.total_infected >= epidemic_cutoff(net_.node_count(), opts.cutoff);
  r.trial_seed = seed;
  r.network_masked = counts_.masked;
  r.network_unmasked = counts_.unmasked;
  return r;
}

OutbreakResult run_outbreak(const ContactNetwork& net, const MaskModelParams& params, NodeId patient_zero,
                            std::uint64_t seed, const OutbreakOptions& opts) {
  OutbreakSimulator sim(net);
  return sim.run(params, patient_zero, seed, opts);
}

OutbreakResult run_outbreak(const ContactNetwork& net, const MaskModelParams& params,
                            PatientZeroPolicy policy, std::uint64_t seed, const OutbreakOptions& opts) {
  OutbreakSimulator sim(net);
  return sim.run(params, policy, seed, opts);
}

void SimulationConfig::validate() const {
  params.validate();
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (cutoff.floor < 2) throw std::invalid_argument("epidemic cutoff floor must be at least 2");
  if (!(cutoff.fraction > 0.0 && cutoff.fraction < 1.0)) {
    throw std::invalid_argument("epidemic cutoff fraction must lie in (0,1)");
  }
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index) noexcept {
  return derive_seed(master_seed, index);
}

namespace {

unsigned resolve_workers(unsigned requested, std::size_t trials) {
  unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(w, trials));
}

// Calls body(worker, trial) for every trial index; slots are claimed from a
// shared counter, so each trial's output must be written to its own slot.
template <typename Body>
void parallel_trials(std::size_t trials, unsigned workers, Body&& body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto loop = [&](unsigned worker) {
    try {
      for (std::size_t t = next++; t < trials; t = next++) body(worker, t);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = trials;
    }
  };
  if (workers <= 1) {
    loop(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(loop, w);
  }
  if (failure) std::rethrow_exception(failure);
}

OutbreakOptions outbreak_options(const SimulationConfig& c) { return {c.percolation, c.cutoff}; }

}  // namespace

EnsembleResult run_ensemble(const SimulationConfig& config, const DegreeDistribution& dist, std::size_t n) {
  config.validate();
  if (n < 2) throw std::invalid_argument("network needs at least 2 nodes");
  if (!config.regenerate_network) {
    // The shared network takes a stream no trial index can reach.
    const auto net = build_network(dist, n, config.params.m,
                                   derive_seed(config.master_seed, std::numeric_limits<std::uint64_t>::max()),
                                   {config.simple_graph});
    return run_ensemble(config, net);
  }
  const auto opts = outbreak_options(config);
  std::vector<OutbreakResult> results(config.trials);
  parallel_trials(config.trials, resolve_workers(config.workers, config.trials), [&](unsigned, std::size_t t) {
    const std::uint64_t seed = trial_seed(config.master_seed, t);
    const auto net = build_network(dist, n, config.params.m, derive_seed(seed, kNetworkStream),
                                   {config.simple_graph});
    OutbreakSimulator sim(net);
    results[t] = sim.run(config.params, config.patient_zero, derive_seed(seed, kOutbreakStream), opts);
    results[t].trial_seed = seed;
  });
  EnsembleResult out;
  out.summary = summarize(results, n, epidemic_cutoff(n, config.cutoff));
  out.trials = std::move(results);
  return out;
}

EnsembleResult run_ensemble(const SimulationConfig& config, const ContactNetwork& net) {
  config.validate();
  const auto opts = outbreak_options(config);
  const unsigned workers = resolve_workers(config.workers, config.trials);
  std::vector<OutbreakSimulator> sims;
  sims.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) sims.emplace_back(net);
  std::vector<OutbreakResult> results(config.trials);
  parallel_trials(config.trials, workers, [&](unsigned w, std::size_t t) {
    const std::uint64_t seed = trial_seed(config.master_seed, t);
    results[t] = sims[w].run(config.params, config.patient_zero, derive_seed(seed, kOutbreakStream), opts);
    results[t].trial_seed = seed;
  });
  EnsembleResult out;
  out.summary = summarize(results, net.node_count(), epidemic_cutoff(net.node_count(), config.cutoff));
  out.trials = std::move(results);
  return out;
}

EnsembleSummary summarize(std::span<const OutbreakResult> trials, std::size_t n, std::size_t cutoff) {
  EnsembleSummary s;
  s.n = n;
  s.trials = trials.size();
  s.cutoff = cutoff;
  const double nd = static_cast<double>(n);

  double sum = 0.0, sum_sq = 0.0, masked_pop = 0.0, unmasked_pop = 0.0;
  double masked_rate = 0.0, unmasked_rate = 0.0;
  std::size_t masked_rate_count = 0, unmasked_rate_count = 0;
  for (const auto& r : trials) {
    const auto k = index_of(r.patient_zero_type);
    ++s.trials_by_type[k];
    if (!r.emerged) continue;
    ++s.emerged;
    ++s.emerged_by_type[k];
    const double frac = static_cast<double>(r.total_infected) / nd;
    sum += frac;
    sum_sq += frac * frac;
    masked_pop += static_cast<double>(r.infected_masked) / nd;
    unmasked_pop += static_cast<double>(r.infected_unmasked) / nd;
    if (r.network_masked > 0) {
      masked_rate += static_cast<double>(r.infected_masked) / static_cast<double>(r.network_masked);
      ++masked_rate_count;
    }
    if (r.network_unmasked > 0) {
      unmasked_rate += static_cast<double>(r.infected_unmasked) / static_cast<double>(r.network_unmasked);
      ++unmasked_rate_count;
    }
  }

  auto proportion = [](std::size_t hits, std::size_t total, double& p, double& se) {
    if (total == 0) {
      p = se = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    p = static_cast<double>(hits) / static_cast<double>(total);
    se = std::sqrt(p * (1.0 - p) / static_cast<double>(total));
  };
  proportion(s.emerged, s.trials, s.emergence_frequency, s.emergence_se);
  for (std::size_t k = 0; k < 2; ++k) {
    proportion(s.emerged_by_type[k], s.trials_by_type[k], s.emergence_by_type[k], s.emergence_se_by_type[k]);
  }

  if (s.emerged > 0) {
    const double e = static_cast<double>(s.emerged);
    s.size_fraction = sum / e;
    if (s.emerged > 1) {
      const double var = std::max(0.0, (sum_sq - e * s.size_fraction * s.size_fraction) / (e - 1.0));
      s.size_fraction_se = std::sqrt(var / e);
    }
    s.masked_population_fraction = masked_pop / e;
    s.unmasked_population_fraction = unmasked_pop / e;
    if (masked_rate_count) s.masked_attack_rate = masked_rate / static_cast<double>(masked_rate_count);
    if (unmasked_rate_count) s.unmasked_attack_rate = unmasked_rate / static_cast<double>(unmasked_rate_count);
  }
  return s;
}

void write_trials_csv(std::ostream& out, std::span<const OutbreakResult> trials) {
  out << "trial,seed,p0_type,infected_masked,infected_unmasked,total,emerged\n";
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const auto& r = trials[t];
    out << t << ',' << r.trial_seed << ',' << label_of(r.patient_zero_type) << ',' << r.infected_masked << ','
        << r.infected_unmasked << ',' << r.total_infected << ',' << (r.emerged ? 1 : 0) << '\n';
  }
}

void write_summary(std::ostream& out, const EnsembleSummary& s) {
  const auto old = out.precision(12);
  out << "n = " << s.n << '\n'
      << "trials = " << s.trials << '\n'
      << "cutoff = " << s.cutoff << '\n'
      << "emerged = " << s.emerged << '\n'
      << "emergence_frequency = " << s.emergence_frequency << '\n'
      << "emergence_se = " << s.emergence_se << '\n'
      << "trials_p0_masked = " << s.trials_by_type[0] << '\n'
      << "trials_p0_unmasked = " << s.trials_by_type[1] << '\n'
      << "emergence_p0_masked = " << s.emergence_by_type[0] << '\n'
      << "emergence_p0_unmasked = " << s.emergence_by_type[1] << '\n'
      << "size_fraction = " << s.size_fraction << '\n'
      << "size_fraction_se = " << s.size_fraction_se << '\n'
      << "masked_attack_rate = " << s.masked_attack_rate << '\n'
      << "unmasked_attack_rate = " << s.unmasked_attack_rate << '\n'
      << "masked_population_fraction = " << s.masked_population_fraction << '\n'
      << "unmasked_population_fraction = " << s.unmasked_population_fraction << '\n';
  out.precision(old);
}

}  // namespace maskperc
