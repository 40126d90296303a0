#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "maskperc/degree.hpp"
#include "maskperc/graph.hpp"
#include "maskperc/mask_model.hpp"
#include "maskperc/rng.hpp"

namespace maskperc {

enum class PatientZeroPolicy { random, force_masked, force_unmasked };

/// How the two directions of an edge draw their transmission coins.
/// semi_directed: independent coin per attempt. undirected: one uniform per
/// edge, compared against T for whichever direction is attempted.
enum class Percolation { semi_directed, undirected };

/// An outbreak "emerges" once it infects max(floor, ceil(fraction * n)) nodes.
struct CutoffRule {
  std::size_t floor = 100;
  double fraction = 0.0025;
};

std::size_t epidemic_cutoff(std::size_t n, const CutoffRule& rule);

struct OutbreakResult {
  NodeType patient_zero_type = NodeType::unmasked;
  std::size_t infected_masked = 0;
  std::size_t infected_unmasked = 0;
  std::size_t total_infected = 0;
  bool emerged = false;
  std::uint64_t trial_seed = 0;
  // Composition of the network the outbreak ran on.
  std::size_t network_masked = 0;
  std::size_t network_unmasked = 0;
};

struct OutbreakOptions {
  Percolation percolation = Percolation::semi_directed;
  CutoffRule cutoff;
};

/// Runs SIR outbreaks on one network, reusing its scratch buffers between
/// runs. Not thread-safe; give each worker its own instance. The network
/// must outlive the simulator.
class OutbreakSimulator {
 public:
  explicit OutbreakSimulator(const ContactNetwork& net);

  OutbreakResult run(const MaskModelParams& params, NodeId patient_zero, std::uint64_t seed,
                     const OutbreakOptions& opts = {});
  /// Picks patient zero according to `policy` from the same seeded stream.
  OutbreakResult run(const MaskModelParams& params, PatientZeroPolicy policy, std::uint64_t seed,
                     const OutbreakOptions& opts = {});

  /// Whether `u` was infected in the most recent run.
  bool infected(NodeId u) const noexcept { return stamp_[u] == epoch_; }

  const ContactNetwork& network() const noexcept { return net_; }

 private:
  OutbreakResult spread(const MaskModelParams& params, NodeId patient_zero, std::uint64_t seed,
                        Engine& eng, const OutbreakOptions& opts);

  const ContactNetwork& net_;
  TypeCounts counts_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<NodeId> queue_;
};

/// One outbreak on `net` from a fresh simulator.
OutbreakResult run_outbreak(const ContactNetwork& net, const MaskModelParams& params,
                            NodeId patient_zero, std::uint64_t seed, const OutbreakOptions& opts = {});
OutbreakResult run_outbreak(const ContactNetwork& net, const MaskModelParams& params,
                            PatientZeroPolicy policy, std::uint64_t seed, const OutbreakOptions& opts = {});

struct SimulationConfig {
  MaskModelParams params;
  std::size_t trials = 2000;
  CutoffRule cutoff;
  PatientZeroPolicy patient_zero = PatientZeroPolicy::random;
  bool regenerate_network = true;
  std::uint64_t master_seed = 1;
  Percolation percolation = Percolation::semi_directed;
  bool simple_graph = false;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;

  void validate() const;
};

struct EnsembleSummary {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t cutoff = 0;
  std::size_t emerged = 0;
  double emergence_frequency = 0.0;
  double emergence_se = 0.0;
  // Indexed by patient-zero type (0 = masked, 1 = unmasked). Frequencies are
  // NaN when no trial started from that type.
  std::array<std::size_t, 2> trials_by_type{};
  std::array<std::size_t, 2> emerged_by_type{};
  std::array<double, 2> emergence_by_type{};
  std::array<double, 2> emergence_se_by_type{};
  // Means over emerged trials; zero when nothing emerged.
  double size_fraction = 0.0;             // total / n
  double size_fraction_se = 0.0;
  double masked_attack_rate = 0.0;        // infected masked / masked nodes
  double unmasked_attack_rate = 0.0;      // infected unmasked / unmasked nodes
  double masked_population_fraction = 0.0;    // infected masked / n
  double unmasked_population_fraction = 0.0;  // infected unmasked / n
};

struct EnsembleResult {
  EnsembleSummary summary;
  std::vector<OutbreakResult> trials;  // in trial-index order
};

/// Seed of trial `index` under `master_seed`.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index) noexcept;

/// Runs `config.trials` outbreaks, in parallel across workers. The result
/// depends only on (config, dist, n), never on the worker count.
EnsembleResult run_ensemble(const SimulationConfig& config, const DegreeDistribution& dist, std::size_t n);

/// Same, on a fixed network (regenerate_network is ignored).
EnsembleResult run_ensemble(const SimulationConfig& config, const ContactNetwork& net);

EnsembleSummary summarize(std::span<const OutbreakResult> trials, std::size_t n, std::size_t cutoff);

/// `trial,seed,p0_type,infected_masked,infected_unmasked,total,emerged`
void write_trials_csv(std::ostream& out, std::span<const OutbreakResult> trials);
/// `key = value` lines.
void write_summary(std::ostream& out, const EnsembleSummary& s);

}  // namespace maskperc
