#include "maskperc/experiment.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "maskperc/rng.hpp"

namespace maskperc {
namespace {

constexpr std::uint64_t kRowStream = 0x5eed0000;

std::string num(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double r0_at(const ExperimentSpec& spec) {
  return r0(spec.distribution.build(), spec.model.resolve());
}

ExperimentSpec with_seed(ExperimentSpec point, std::size_t row) {
  point.sim.master_seed = derive_seed(point.sim.master_seed, kRowStream + row);
  return point;
}

}  // namespace

std::vector<ExperimentSpec> sweep_points(const ExperimentSpec& spec) {
  if (!spec.sweep) return {spec};
  std::vector<ExperimentSpec> points;
  points.reserve(spec.sweep->grid.size());
  for (double v : spec.sweep->grid) {
    ExperimentSpec p = spec;
    set_parameter(p, spec.sweep->axis, v);
    points.push_back(std::move(p));
  }
  return points;
}

double find_threshold(const ExperimentSpec& spec, std::string_view axis, double lo, double hi, double tol) {
  ExperimentSpec probe = spec;
  auto excess = [&](double x) {
    set_parameter(probe, axis, x);
    return r0_at(probe) - 1.0;
  };
  double f_lo = excess(lo);
  const double f_hi = excess(hi);
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream os;
    os << "threshold bracket [" << lo << ", " << hi << "] on " << axis << " does not straddle R0 = 1 (R0 = "
       << f_lo + 1.0 << " and " << f_hi + 1.0 << ")";
    throw ConfigError({os.str()});
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = excess(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> empirical_threshold(const ExperimentSpec& spec, std::string_view axis,
                                          const std::vector<double>& grid, double cutoff) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ExperimentSpec p = spec;
    set_parameter(p, axis, grid[i]);
    p.sim.master_seed = derive_seed(spec.sim.master_seed, i);
    const auto result = run_ensemble(p.simulation_config(), p.distribution.build(), p.n);
    if (result.summary.emergence_frequency > cutoff) return grid[i];
  }
  return std::nullopt;
}

std::vector<ExperimentRow> compute_experiment(const ExperimentSpec& spec, std::ostream* log) {
  std::vector<ExperimentRow> rows;
  const auto points = sweep_points(spec);
  for (const auto& point : points) {
    const auto dist = point.distribution.build();
    const auto params = point.model.resolve();
    ExperimentRow base;
    base.analytic = predict(dist, params, point.solver);
    base.mutation = mutation_epidemic_size(dist, mutation_map(params), point.solver);

    std::vector<PatientZeroPolicy> policies{point.sim.patient_zero};
    if (spec.kind == ExperimentKind::t_sweep) {
      policies = {PatientZeroPolicy::force_masked, PatientZeroPolicy::force_unmasked, PatientZeroPolicy::random};
    }
    for (auto policy : policies) {
      ExperimentRow row = base;
      row.point = with_seed(point, rows.size());
      row.point.sim.patient_zero = policy;
      row.policy = policy;
      if (spec.kind == ExperimentKind::threshold) {
        row.critical = find_threshold(point, spec.threshold.axis, spec.threshold.lo, spec.threshold.hi);
        if (point.sim.trials > 0 && !spec.threshold.empirical_grid.empty()) {
          row.empirical_critical = empirical_threshold(row.point, spec.threshold.axis, spec.threshold.empirical_grid,
                                                       spec.threshold.empirical_cutoff);
        }
      } else if (point.sim.trials > 0) {
        row.simulated = run_ensemble(row.point.simulation_config(), dist, point.n).summary;
      }
      if (log) {
        *log << "row " << rows.size();
        if (spec.sweep) *log << " " << spec.sweep->axis << "=" << get_parameter(point, spec.sweep->axis);
        *log << " R0=" << row.analytic.r0 << '\n';
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_csv_header(std::ostream& out) {
  out << "kind,distribution,mean,exponent,kmin,kmax,pmf_file,n,simple_graph,m,T11,T12,T21,T22,T,T_mask1,T_mask2,"
         "trials,master_seed,cutoff_floor,cutoff_fraction,p0_policy,percolation,regenerate_network,"
         "R0,P_ext_masked,P_ext_unmasked,emergence_masked,emergence_unmasked,emergence_mixed,"
         "q_ext_masked,q_ext_unmasked,q_inf_masked,q_inf_unmasked,S_masked,S_unmasked,S_total,"
         "S_masked_pop,S_unmasked_pop,solver_converged,mutation_S_total,mutation_S_strain1,mutation_S_strain2,"
         "critical,empirical_critical,"
         "sim_trials,sim_emerged,sim_emergence,sim_emergence_se,sim_emergence_masked,sim_emergence_unmasked,"
         "sim_size,sim_size_se,sim_S_masked,sim_S_unmasked,sim_S_masked_pop,sim_S_unmasked_pop\n";
}

void write_csv_row(std::ostream& out, const ExperimentRow& row) {
  const auto& p = row.point;
  const auto params = p.model.resolve();
  const auto& d = p.distribution;
  const bool poisson = d.kind == DegreeKind::poisson;
  const bool powerlaw = d.kind == DegreeKind::powerlaw;
  const auto& a = row.analytic;
  const double nan = std::nan("");

  out << to_string(p.kind) << ',' << to_string(d.kind) << ',' << (poisson ? num(d.mean) : "") << ','
      << (powerlaw ? num(d.exponent) : "") << ',' << (powerlaw ? std::to_string(d.kmin) : "") << ','
      << (powerlaw ? std::to_string(d.kmax) : "") << ',' << d.pmf_file << ',' << p.n << ','
      << (p.simple_graph ? 1 : 0) << ',' << num(params.m) << ',' << num(params.T.t11()) << ','
      << num(params.T.t12()) << ',' << num(params.T.t21()) << ',' << num(params.T.t22()) << ',';
  if (p.model.factored) {
    out << num(p.model.factored->baseline) << ',' << num(p.model.factored->inward) << ','
        << num(p.model.factored->outward) << ',';
  } else {
    out << ",,,";
  }
  out << p.sim.trials << ',' << p.sim.master_seed << ',' << p.sim.cutoff.floor << ',' << num(p.sim.cutoff.fraction)
      << ',' << to_string(row.policy) << ',' << to_string(p.sim.percolation) << ','
      << (p.sim.regenerate_network ? 1 : 0) << ',';

  const bool converged = a.emergence.diagnostics.converged && a.size.diagnostics.converged;
  out << num(a.r0) << ',' << num(a.emergence.extinction[0]) << ',' << num(a.emergence.extinction[1]) << ','
      << num(a.emergence.emergence[0]) << ',' << num(a.emergence.emergence[1]) << ','
      << num(a.emergence.emergence_mixed) << ',' << num(a.emergence.branch_extinction[0]) << ','
      << num(a.emergence.branch_extinction[1]) << ',' << num(a.size.q_inf[0]) << ',' << num(a.size.q_inf[1]) << ','
      << num(a.size.s_masked) << ',' << num(a.size.s_unmasked) << ',' << num(a.size.s_total) << ','
      << num(a.size.s_masked * params.m) << ',' << num(a.size.s_unmasked * (1.0 - params.m)) << ','
      << (converged ? 1 : 0) << ',' << num(row.mutation.total) << ',' << num(row.mutation.by_strain[0]) << ','
      << num(row.mutation.by_strain[1]) << ',' << num(row.critical.value_or(nan)) << ','
      << num(row.empirical_critical.value_or(nan)) << ',';

  if (row.simulated) {
    const auto& s = *row.simulated;
    out << s.trials << ',' << s.emerged << ',' << num(s.emergence_frequency) << ',' << num(s.emergence_se) << ','
        << num(s.emergence_by_type[0]) << ',' << num(s.emergence_by_type[1]) << ',' << num(s.size_fraction) << ','
        << num(s.size_fraction_se) << ',' << num(s.masked_attack_rate) << ',' << num(s.unmasked_attack_rate) << ','
        << num(s.masked_population_fraction) << ',' << num(s.unmasked_population_fraction) << '\n';
  } else {
    out << ",,,,,,,,,,,\n";
  }
}

void run_experiment(const ExperimentSpec& spec, std::ostream& csv, std::ostream* log) {
  const auto rows = compute_experiment(spec, log);
  write_csv_header(csv);
  for (const auto& row : rows) write_csv_row(csv, row);
  if (!csv) throw std::ios_base::failure("failed writing experiment CSV");
}

void compare_mutation(const ExperimentSpec& spec, std::ostream& csv) {
  const std::string axis = spec.sweep ? spec.sweep->axis : "";
  csv << "axis,value,R0,S_mask,S_mutation,gap,S_mutation_strain1,S_mutation_strain2\n";
  for (const auto& point : sweep_points(spec)) {
    const auto dist = point.distribution.build();
    const auto params = point.model.resolve();
    const auto mask = epidemic_size(dist, params, point.solver);
    const auto mut = mutation_epidemic_size(dist, mutation_map(params), point.solver);
    csv << axis << ',' << (axis.empty() ? "" : num(get_parameter(point, axis))) << ',' << num(r0(dist, params))
        << ',' << num(mask.s_total) << ',' << num(mut.total) << ',' << num(std::abs(mask.s_total - mut.total)) << ','
        << num(mut.by_strain[0]) << ',' << num(mut.by_strain[1]) << '\n';
  }
  if (!csv) throw std::ios_base::failure("failed writing comparison CSV");
}

}  // namespace maskperc
