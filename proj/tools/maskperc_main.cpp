// maskperc: mask-model epidemic solver and simulator.
//
//   maskperc solve --config fig1.cfg --out fig1_theory.csv
//   maskperc simulate --config fig1.cfg --out trials.csv --workers 4
//   maskperc sweep --config fig1.cfg --out fig1.csv
//   maskperc threshold --config fig6.cfg
//   maskperc compare-mutation --config fig3.cfg --out fig3.csv
//
// Exit codes: 0 success, 1 config error, 2 solver non-convergence, 3 I/O error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "maskperc/config.hpp"
#include "maskperc/experiment.hpp"
#include "maskperc/simulate.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kSolverError = 2, kIoError = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<unsigned> workers;
  bool simple_graph = false;
  bool print_config = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "experiment config file")->required();
  cmd->add_option("--seed", o.seed, "override sim.master_seed");
  cmd->add_option("--out", o.out, "output path (default: output.path, else stdout)");
  cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
  cmd->add_flag("--simple-graph", o.simple_graph, "erase self-loops and multi-edges");
  cmd->add_flag("--print-config", o.print_config, "print the resolved config and exit");
  cmd->add_flag("-q,--quiet", o.quiet, "suppress progress on stderr");
}

maskperc::ExperimentSpec load(const CommonOptions& o) {
  std::ifstream in(o.config);
  if (!in) throw IoError("cannot open config file " + o.config);
  std::stringstream text;
  text << in.rdbuf();
  auto spec = maskperc::validate_config(text.str());
  if (o.seed) spec.sim.master_seed = *o.seed;
  if (o.workers) spec.sim.workers = *o.workers;
  if (o.simple_graph) spec.simple_graph = true;
  if (!o.out.empty()) spec.output_path = o.out;
  return spec;
}

// Opens the output stream: the file at `path`, or stdout when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw IoError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("failed writing output");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mask-model epidemics on configuration-model networks"};
  app.require_subcommand(1);

  CommonOptions opts;
  auto* solve = app.add_subcommand("solve", "analytic predictions only, over the sweep grid if one is set");
  auto* simulate = app.add_subcommand("simulate", "one Monte Carlo ensemble at the base point");
  auto* sweep = app.add_subcommand("sweep", "full experiment: theory and simulation over the sweep grid");
  auto* threshold = app.add_subcommand("threshold", "critical value of threshold.axis by bisection on R0");
  auto* compare = app.add_subcommand("compare-mutation", "mask-model vs mutation-model epidemic size");
  for (auto* cmd : {solve, simulate, sweep, threshold, compare}) add_common(cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    auto spec = load(opts);
    if (opts.print_config) {
      std::cout << maskperc::resolved_config(spec);
      return kOk;
    }
    std::ostream* log = opts.quiet ? nullptr : &std::cerr;

    if (solve->parsed()) {
      spec.sim.trials = 0;
      Output out(spec.output_path);
      maskperc::run_experiment(spec, out.stream(), log);
      out.finish();
    } else if (sweep->parsed()) {
      Output out(spec.output_path);
      maskperc::run_experiment(spec, out.stream(), log);
      out.finish();
    } else if (simulate->parsed()) {
      if (spec.sim.trials == 0) throw maskperc::ConfigError({"sim.trials must be positive for simulate"});
      const auto result = maskperc::run_ensemble(spec.simulation_config(), spec.distribution.build(), spec.n);
      if (!spec.output_path.empty()) {
        Output out(spec.output_path);
        maskperc::write_trials_csv(out.stream(), result.trials);
        out.finish();
      }
      maskperc::write_summary(std::cout, result.summary);
    } else if (threshold->parsed()) {
      const double critical =
          maskperc::find_threshold(spec, spec.threshold.axis, spec.threshold.lo, spec.threshold.hi);
      std::cout.precision(10);
      std::cout << spec.threshold.axis << " = " << critical << '\n';
    } else if (compare->parsed()) {
      Output out(spec.output_path);
      maskperc::compare_mutation(spec, out.stream());
      out.finish();
    }
    return kOk;
  } catch (const maskperc::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kConfigError;
  } catch (const maskperc::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    // Remaining failures come from reading auxiliary files (pmf tables).
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
}
