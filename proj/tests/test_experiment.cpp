#include <sstream>

#include "doctest.h"
#include "maskperc/experiment.hpp"

using namespace maskperc;
using doctest::Approx;

namespace {

ExperimentSpec fig1_spec(const std::string& extra = "") {
  return validate_config(R"(
[experiment]
kind = emergence
[network]
distribution = poisson
mean = 5
n = 3000
[model]
m = 0.45
T11 = 0.126
T12 = 0.18
T21 = 0.42
T22 = 0.6
[sweep]
axis = network.mean
grid = 0:10:0.5
[sim]
trials = 0
)" + extra);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string csv_of(const ExperimentSpec& spec) {
  std::ostringstream os;
  run_experiment(spec, os);
  return os.str();
}

}  // namespace

TEST_CASE("analytic sweep yields one row per grid point") {
  const auto text = csv_of(fig1_spec());
  const auto rows = lines(text);
  CHECK(rows.size() == 22);
  CHECK(rows[0].find("emergence_mixed") != std::string::npos);
  // Every row carries the full parameter set.
  CHECK(rows[1].find("emergence,poisson,0,,,,,3000,0,0.45,0.126,0.18,0.42,0.6,") == 0);
}

TEST_CASE("threshold search") {
  auto spec = validate_config("[model]\nm = 1\nT11 = 0.25\nT12 = 0\nT21 = 0\nT22 = 0\n");
  CHECK(find_threshold(spec, "network.mean", 0, 20) == Approx(4.0).epsilon(1e-6));
  spec = validate_config("[model]\nm = 0\nT11 = 0\nT12 = 0\nT21 = 0\nT22 = 0.6\n");
  CHECK(std::abs(find_threshold(spec, "network.mean", 0, 20) - 1.0 / 0.6) < 1e-6);
  spec = validate_config("[network]\nmean = 5\n[model]\nm = 0.45\nT = 0.5\nT_mask1 = 0.3\nT_mask2 = 0.7\n");
  CHECK(std::abs(find_threshold(spec, "model.T", 0, 1) - 1.0 / (5 * 0.6445)) < 1e-6);
  CHECK_THROWS_AS(find_threshold(spec, "model.T", 0.5, 1), ConfigError);
}

TEST_CASE("simulation never perturbs the analytic columns") {
  auto spec = fig1_spec();
  spec.sweep->grid = {3.0, 6.0};
  const auto theory = lines(csv_of(spec));
  spec.sim.trials = 40;
  spec.sim.workers = 2;
  const auto both = lines(csv_of(spec));
  REQUIRE(theory.size() == both.size());
  const auto analytic_part = [](const std::string& row) {
    // Columns from R0 up to empirical_critical; the trial count column sits
    // before them and differs.
    std::vector<std::string> cells;
    std::istringstream in(row);
    for (std::string c; std::getline(in, c, ',');) cells.push_back(c);
    return std::vector<std::string>(cells.begin() + 24, cells.begin() + 45);
  };
  for (std::size_t i = 1; i < theory.size(); ++i) CHECK(analytic_part(theory[i]) == analytic_part(both[i]));
}

TEST_CASE("byte-identical CSV across worker counts") {
  auto spec = fig1_spec();
  spec.sweep->grid = {2.0, 4.0, 8.0};
  spec.sim.trials = 30;
  spec.sim.workers = 1;
  const auto one = csv_of(spec);
  spec.sim.workers = 3;
  CHECK(csv_of(spec) == one);
  spec.sim.master_seed = 2;
  CHECK(csv_of(spec) != one);
}

TEST_CASE("T_sweep emits three patient-zero rows per point") {
  const auto spec = validate_config("[experiment]\nkind = T_sweep\n[network]\nn = 2000\n[model]\nm = 0.45\n"
                                    "T = 0.3\nT_mask1 = 0.3\nT_mask2 = 0.7\n[sweep]\ngrid = 0.2,0.5\n"
                                    "[sim]\ntrials = 10\n");
  const auto rows = compute_experiment(spec);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].policy == PatientZeroPolicy::force_masked);
  CHECK(rows[1].policy == PatientZeroPolicy::force_unmasked);
  CHECK(rows[2].policy == PatientZeroPolicy::random);
  CHECK(rows[0].simulated->trials_by_type[0] == 10);
  CHECK(rows[1].simulated->trials_by_type[1] == 10);
  CHECK(rows[0].point.sim.master_seed != rows[1].point.sim.master_seed);
}

TEST_CASE("threshold experiments") {
  const auto spec = validate_config("[experiment]\nkind = threshold\n[network]\nn = 2000\n[model]\nm = 0.45\n"
                                    "T11 = 0.126\nT12 = 0.18\nT21 = 0.42\nT22 = 0.6\n[sweep]\naxis = model.m\n"
                                    "grid = 0,0.5,1\n[threshold]\naxis = network.mean\nlo = 0\nhi = 20\n"
                                    "[sim]\ntrials = 0\n");
  const auto rows = compute_experiment(spec);
  REQUIRE(rows.size() == 3);
  CHECK(*rows[0].critical == Approx(1.0 / 0.6).epsilon(1e-5));
  CHECK(*rows[2].critical == Approx(1.0 / 0.126).epsilon(1e-5));
  CHECK(*rows[1].critical < *rows[2].critical);
  CHECK_FALSE(rows[1].empirical_critical);
}

TEST_CASE("mutation comparison table") {
  auto spec = fig1_spec();
  spec.sweep->grid = {1.0, 5.0, 10.0};
  std::ostringstream os;
  compare_mutation(spec, os);
  const auto rows = lines(os.str());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "axis,value,R0,S_mask,S_mutation,gap,S_mutation_strain1,S_mutation_strain2");
  CHECK(rows[1].find("network.mean,1,") == 0);
}
