#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maskperc/analytic.hpp"
#include "maskperc/degree.hpp"
#include "maskperc/mask_model.hpp"
#include "maskperc/simulate.hpp"

namespace maskperc {

enum class ExperimentKind { emergence, size, threshold, mask_sweep, t_sweep, mutation_compare };

struct DistributionSpec {
  DegreeKind kind = DegreeKind::poisson;
  double mean = 5.0;       // poisson
  double exponent = 2.5;   // powerlaw
  int kmin = 1;
  int kmax = 100;
  std::string pmf_file;    // empirical

  DegreeDistribution build() const;
  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

/// Exactly one of `explicit_T` / `factored` is set after validation.
struct ModelSpec {
  double m = 0.45;
  std::optional<Matrix2> explicit_T;
  std::optional<FactoredTransmission> factored;

  MaskModelParams resolve() const;
};

struct SweepSpec {
  std::string axis;
  std::vector<double> grid;
};

struct ThresholdSpec {
  std::string axis = "network.mean";
  double lo = 0.0;
  double hi = 20.0;
  /// Grid of `axis` values scanned by simulation; the empirical threshold is
  /// the first value whose emergence frequency exceeds `empirical_cutoff`.
  std::vector<double> empirical_grid;
  double empirical_cutoff = 0.05;
};

struct SimSpec {
  std::size_t trials = 2000;
  std::uint64_t master_seed = 1;
  CutoffRule cutoff;
  PatientZeroPolicy patient_zero = PatientZeroPolicy::random;
  bool regenerate_network = true;
  Percolation percolation = Percolation::semi_directed;
  unsigned workers = 0;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::emergence;
  DistributionSpec distribution;
  std::size_t n = 100'000;
  bool simple_graph = false;
  ModelSpec model;
  std::optional<SweepSpec> sweep;
  SimSpec sim;
  ThresholdSpec threshold;
  SolverOptions solver;
  std::string output_path;
  /// Keys filled from defaults rather than the input text.
  std::vector<std::string> defaulted;

  SimulationConfig simulation_config() const;
};

/// Every problem found while validating a config, in input order.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parses and validates the key/value config format. Reports every violation
/// at once by throwing ConfigError.
ExperimentSpec validate_config(std::string_view text);
ExperimentSpec load_config(const std::string& path);

/// Config text that parses back to `spec`; defaulted keys are marked.
std::string resolved_config(const ExperimentSpec& spec);

/// Names accepted by `sweep.axis` and `threshold.axis`.
const std::vector<std::string>& sweep_axes();

/// Sets a sweepable parameter. Throws ConfigError for unknown axes or axes
/// that do not apply to the model form (e.g. model.T on an explicit matrix).
void set_parameter(ExperimentSpec& spec, std::string_view axis, double value);
double get_parameter(const ExperimentSpec& spec, std::string_view axis);

std::string to_string(ExperimentKind kind);
std::string to_string(PatientZeroPolicy policy);
std::string to_string(Percolation p);
std::string to_string(DegreeKind kind);

}  // namespace maskperc
