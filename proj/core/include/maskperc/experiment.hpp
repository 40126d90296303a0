#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "maskperc/analytic.hpp"
#include "maskperc/config.hpp"
#include "maskperc/simulate.hpp"

namespace maskperc {

/// One output row: a fully resolved parameter point with its analytic
/// prediction and, when trials > 0, the simulated ensemble.
struct ExperimentRow {
  ExperimentSpec point;
  PatientZeroPolicy policy = PatientZeroPolicy::random;
  AnalyticPrediction analytic;
  MutationSizeResult mutation;
  std::optional<EnsembleSummary> simulated;
  std::optional<double> critical;            // threshold experiments
  std::optional<double> empirical_critical;  // threshold experiments with a grid
};

/// Grid points of the sweep in order, or the base point when no sweep is set.
std::vector<ExperimentSpec> sweep_points(const ExperimentSpec& spec);

/// Bisection on R0(axis) - 1 over [lo, hi] to absolute tolerance `tol`.
/// Throws ConfigError when the bracket does not straddle R0 = 1.
double find_threshold(const ExperimentSpec& spec, std::string_view axis, double lo, double hi, double tol = 1e-6);

/// Smallest value on `grid` whose simulated emergence frequency exceeds
/// `cutoff`, scanning in increasing order; nullopt if none does.
std::optional<double> empirical_threshold(const ExperimentSpec& spec, std::string_view axis,
                                          const std::vector<double>& grid, double cutoff);

/// Computes every row of the experiment. Rows come out in grid order; T_sweep
/// experiments emit three rows per point (masked, unmasked, random patient
/// zero). The master seed of row r is derived from (sim.master_seed, r).
std::vector<ExperimentRow> compute_experiment(const ExperimentSpec& spec, std::ostream* log = nullptr);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ExperimentRow& row);

/// compute_experiment followed by CSV output.
void run_experiment(const ExperimentSpec& spec, std::ostream& csv, std::ostream* log = nullptr);

/// Mask-model size against the mutation-model size over the sweep grid.
/// Columns: axis,value,R0,S_mask,S_mutation,gap,S_mutation_strain1,S_mutation_strain2
void compare_mutation(const ExperimentSpec& spec, std::ostream& csv);

}  // namespace maskperc
