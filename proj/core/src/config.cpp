#include "maskperc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <type_traits>

namespace maskperc {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Shortest text that parses back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join(const std::vector<std::string>& errors) {
  std::string out = "invalid configuration:";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

// Typed access to parsed entries that records problems instead of throwing.
class Reader {
 public:
  std::map<std::string, Entry> entries;
  std::vector<std::string> errors;
  std::vector<std::string> defaulted;
  std::set<std::string> used;

  bool has(const std::string& key) const { return entries.count(key) > 0; }

  const Entry* find(const std::string& key) {
    used.insert(key);
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  }

  void error(const std::string& key, const std::string& msg) {
    auto it = entries.find(key);
    if (it != entries.end()) errors.push_back("line " + std::to_string(it->second.line) + ": " + msg);
    else errors.push_back(msg);
  }

  template <typename T>
  void number(const std::string& key, T& out, bool record_default = true) {
    const Entry* e = find(key);
    if (!e) {
      if (record_default) defaulted.push_back(key);
      return;
    }
    T value{};
    const char* first = e->value.data();
    const char* last = first + e->value.size();
    std::from_chars_result res;
    if constexpr (std::is_floating_point_v<T>) {
      // from_chars for double is incomplete on older libstdc++.
      char* end = nullptr;
      value = std::strtod(e->value.c_str(), &end);
      res.ptr = end;
      res.ec = (end == first) ? std::errc::invalid_argument : std::errc{};
    } else {
      res = std::from_chars(first, last, value);
    }
    if (res.ec != std::errc{} || res.ptr != last) {
      error(key, key + ": cannot parse `" + e->value + "` as a number");
      return;
    }
    out = value;
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) {
      used.insert(key);
      return std::nullopt;
    }
    double v = 0.0;
    number(key, v, false);
    return v;
  }

  void boolean(const std::string& key, bool& out) {
    const Entry* e = find(key);
    if (!e) {
      defaulted.push_back(key);
      return;
    }
    std::string v = e->value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") out = true;
    else if (v == "false" || v == "0" || v == "no" || v == "off") out = false;
    else error(key, key + ": expected true or false, got `" + e->value + "`");
  }

  template <typename E>
  void choice(const std::string& key, E& out, const std::vector<std::pair<std::string, E>>& options) {
    const Entry* e = find(key);
    if (!e) {
      defaulted.push_back(key);
      return;
    }
    for (const auto& [name, value] : options) {
      if (e->value == name) {
        out = value;
        return;
      }
    }
    std::string names;
    for (const auto& [name, value] : options) names += (names.empty() ? "" : ", ") + name;
    error(key, key + ": unknown value `" + e->value + "` (expected one of " + names + ")");
  }

  std::optional<std::vector<double>> grid(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    std::vector<double> values;
    const std::string& text = e->value;
    auto parse = [&](const std::string& tok, double& v) {
      char* end = nullptr;
      const std::string t = trim(tok);
      v = std::strtod(t.c_str(), &end);
      return !t.empty() && end == t.c_str() + t.size();
    };
    if (text.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(text);
      for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
      double start = 0, stop = 0, step = 0;
      if (parts.size() != 3 || !parse(parts[0], start) || !parse(parts[1], stop) || !parse(parts[2], step)) {
        error(key, key + ": range must be `start:stop:step`");
        return std::vector<double>{};
      }
      if (!(step > 0.0) || !(stop >= start) || !std::isfinite(stop) || !std::isfinite(start)) {
        error(key, key + ": range needs a positive step and stop >= start");
        return std::vector<double>{};
      }
      const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
      if (count > 1'000'000) {
        error(key, key + ": range has too many points");
        return std::vector<double>{};
      }
      for (std::size_t i = 0; i < count; ++i) {
        // Snap to 12 decimals so 0.1-style steps print cleanly.
        values.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
      }
    } else {
      std::stringstream ss(text);
      for (std::string tok; std::getline(ss, tok, ',');) {
        double v = 0.0;
        if (!parse(tok, v)) {
          error(key, key + ": cannot parse grid value `" + trim(tok) + "`");
          return std::vector<double>{};
        }
        values.push_back(v);
      }
    }
    if (values.empty()) error(key, key + ": grid is empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) {
        error(key, key + ": grid values must be finite");
        break;
      }
      if (i > 0 && !(values[i] > values[i - 1])) {
        error(key, key + ": grid must be strictly increasing");
        break;
      }
    }
    return values;
  }
};

const std::vector<std::string> kKnownKeys = {
    "experiment.kind",
    "network.distribution", "network.mean", "network.exponent", "network.kmin", "network.kmax",
    "network.pmf_file", "network.n", "network.simple",
    "model.m", "model.T11", "model.T12", "model.T21", "model.T22",
    "model.T", "model.T_mask1", "model.T_mask2", "model.T21_override",
    "sweep.axis", "sweep.grid",
    "sim.trials", "sim.master_seed", "sim.cutoff_floor", "sim.cutoff_fraction", "sim.patient_zero",
    "sim.regenerate_network", "sim.percolation", "sim.workers",
    "threshold.axis", "threshold.lo", "threshold.hi", "threshold.grid", "threshold.empirical_cutoff",
    "solver.tol", "solver.max_iter",
    "output.path",
};

const std::vector<std::pair<std::string, ExperimentKind>> kKinds = {
    {"emergence", ExperimentKind::emergence}, {"size", ExperimentKind::size},
    {"threshold", ExperimentKind::threshold}, {"mask_sweep", ExperimentKind::mask_sweep},
    {"T_sweep", ExperimentKind::t_sweep},     {"mutation_compare", ExperimentKind::mutation_compare},
};
const std::vector<std::pair<std::string, DegreeKind>> kDistributions = {
    {"poisson", DegreeKind::poisson}, {"powerlaw", DegreeKind::powerlaw}, {"empirical", DegreeKind::empirical}};
const std::vector<std::pair<std::string, PatientZeroPolicy>> kPolicies = {
    {"random", PatientZeroPolicy::random},
    {"masked", PatientZeroPolicy::force_masked},
    {"unmasked", PatientZeroPolicy::force_unmasked}};
const std::vector<std::pair<std::string, Percolation>> kPercolations = {
    {"semi_directed", Percolation::semi_directed}, {"undirected", Percolation::undirected}};

template <typename E>
std::string name_of(E value, const std::vector<std::pair<std::string, E>>& options) {
  for (const auto& [name, v] : options) {
    if (v == value) return name;
  }
  return "?";
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

// Domain of each sweepable parameter, as an error message or empty.
std::string axis_domain_error(std::string_view axis, double v) {
  if (axis == "network.mean") return v >= 0.0 ? "" : "network.mean must be nonnegative";
  if (axis == "network.exponent") return std::isfinite(v) ? "" : "network.exponent must be finite";
  return in_unit(v) ? "" : std::string(axis) + " must lie in [0,1]";
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors) : std::runtime_error(join(errors)), errors_(std::move(errors)) {}

DegreeDistribution DistributionSpec::build() const {
  switch (kind) {
    case DegreeKind::poisson: return DegreeDistribution::poisson(mean);
    case DegreeKind::powerlaw: return DegreeDistribution::power_law(exponent, kmin, kmax);
    case DegreeKind::empirical: return DegreeDistribution::load_pmf(std::filesystem::path(pmf_file));
  }
  throw std::logic_error("unhandled distribution kind");
}

MaskModelParams ModelSpec::resolve() const {
  if (explicit_T) {
    const auto& t = *explicit_T;
    return MaskModelParams::explicit_matrix(m, t[0][0], t[0][1], t[1][0], t[1][1]);
  }
  if (factored) return MaskModelParams::factored(m, *factored);
  throw std::logic_error("model has no transmissibility specification");
}

SimulationConfig ExperimentSpec::simulation_config() const {
  SimulationConfig c;
  c.params = model.resolve();
  c.trials = sim.trials;
  c.cutoff = sim.cutoff;
  c.patient_zero = sim.patient_zero;
  c.regenerate_network = sim.regenerate_network;
  c.master_seed = sim.master_seed;
  c.percolation = sim.percolation;
  c.simple_graph = simple_graph;
  c.workers = sim.workers;
  return c;
}

const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes = {
      "network.mean", "network.exponent", "model.m",  "model.T",   "model.T_mask1",
      "model.T_mask2", "model.T11",       "model.T12", "model.T21", "model.T22"};
  return axes;
}

void set_parameter(ExperimentSpec& spec, std::string_view axis, double value) {
  auto fail = [&](const std::string& msg) { throw ConfigError({msg}); };
  const auto& axes = sweep_axes();
  if (std::find(axes.begin(), axes.end(), axis) != axes.end()) {
    if (auto msg = axis_domain_error(axis, value); !msg.empty()) fail(msg);
  }
  if (axis == "network.mean") {
    if (spec.distribution.kind != DegreeKind::poisson) fail("network.mean applies only to the poisson distribution");
    spec.distribution.mean = value;
  } else if (axis == "network.exponent") {
    if (spec.distribution.kind != DegreeKind::powerlaw) fail("network.exponent applies only to the powerlaw distribution");
    spec.distribution.exponent = value;
  } else if (axis == "model.m") {
    spec.model.m = value;
  } else if (axis == "model.T" || axis == "model.T_mask1" || axis == "model.T_mask2") {
    if (!spec.model.factored) fail(std::string(axis) + " requires the factored model form");
    auto& f = *spec.model.factored;
    (axis == "model.T" ? f.baseline : axis == "model.T_mask1" ? f.inward : f.outward) = value;
  } else if (axis == "model.T11" || axis == "model.T12" || axis == "model.T21" || axis == "model.T22") {
    if (!spec.model.explicit_T) fail(std::string(axis) + " requires the explicit matrix form");
    const std::size_t i = axis[7] == '1' ? 0 : 1;
    const std::size_t j = axis[8] == '1' ? 0 : 1;
    (*spec.model.explicit_T)[i][j] = value;
  } else {
    fail("unknown parameter axis `" + std::string(axis) + "`");
  }
}

double get_parameter(const ExperimentSpec& spec, std::string_view axis) {
  if (axis == "network.mean") return spec.distribution.mean;
  if (axis == "network.exponent") return spec.distribution.exponent;
  if (axis == "model.m") return spec.model.m;
  if (axis == "model.T" || axis == "model.T_mask1" || axis == "model.T_mask2") {
    if (!spec.model.factored) throw ConfigError({std::string(axis) + " requires the factored model form"});
    const auto& f = *spec.model.factored;
    return axis == "model.T" ? f.baseline : axis == "model.T_mask1" ? f.inward : f.outward;
  }
  if (axis.size() == 9 && axis.starts_with("model.T")) {
    if (!spec.model.explicit_T) throw ConfigError({std::string(axis) + " requires the explicit matrix form"});
    return (*spec.model.explicit_T)[axis[7] == '1' ? 0 : 1][axis[8] == '1' ? 0 : 1];
  }
  throw ConfigError({"unknown parameter axis `" + std::string(axis) + "`"});
}

ExperimentSpec validate_config(std::string_view text) {
  Reader r;
  {
    std::string section;
    std::istringstream in{std::string(text)};
    int line_no = 0;
    for (std::string raw; std::getline(in, raw);) {
      ++line_no;
      const auto hash = raw.find('#');
      const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          r.errors.push_back("line " + std::to_string(line_no) + ": malformed section header");
          continue;
        }
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        r.errors.push_back("line " + std::to_string(line_no) + ": expected `key = value`");
        continue;
      }
      std::string key = trim(line.substr(0, eq));
      if (!section.empty() && key.find('.') == std::string::npos) key = section + "." + key;
      if (r.entries.count(key)) {
        r.errors.push_back("line " + std::to_string(line_no) + ": duplicate key " + key);
        continue;
      }
      r.entries[key] = {trim(line.substr(eq + 1)), line_no};
    }
  }
  for (const auto& [key, entry] : r.entries) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      r.errors.push_back("line " + std::to_string(entry.line) + ": unknown key " + key);
    }
  }

  ExperimentSpec spec;
  r.choice("experiment.kind", spec.kind, kKinds);

  // network
  r.choice("network.distribution", spec.distribution.kind, kDistributions);
  switch (spec.distribution.kind) {
    case DegreeKind::poisson:
      r.number("network.mean", spec.distribution.mean);
      if (!(spec.distribution.mean >= 0.0)) r.error("network.mean", "network.mean must be nonnegative");
      break;
    case DegreeKind::powerlaw:
      r.number("network.exponent", spec.distribution.exponent);
      r.number("network.kmin", spec.distribution.kmin);
      r.number("network.kmax", spec.distribution.kmax);
      if (spec.distribution.kmin < 1 || spec.distribution.kmax < spec.distribution.kmin) {
        r.error("network.kmin", "power law needs 1 <= network.kmin <= network.kmax");
      }
      break;
    case DegreeKind::empirical:
      if (const Entry* e = r.find("network.pmf_file")) spec.distribution.pmf_file = e->value;
      else r.errors.push_back("network.pmf_file is required for the empirical distribution");
      break;
  }
  for (const char* key : {"network.mean", "network.exponent", "network.kmin", "network.kmax", "network.pmf_file"}) {
    if (r.has(key) && !r.used.count(key)) r.error(key, std::string(key) + " does not apply to this distribution");
    r.used.insert(key);
  }
  {
    long long n = static_cast<long long>(spec.n);
    r.number("network.n", n);
    if (n < 2) r.error("network.n", "network.n must be at least 2");
    else spec.n = static_cast<std::size_t>(n);
  }
  r.boolean("network.simple", spec.simple_graph);

  // model
  r.number("model.m", spec.model.m);
  if (!in_unit(spec.model.m)) r.error("model.m", "m must lie in [0,1]");
  const std::vector<std::string> explicit_keys = {"model.T11", "model.T12", "model.T21", "model.T22"};
  const std::vector<std::string> factored_keys = {"model.T", "model.T_mask1", "model.T_mask2"};
  const bool any_explicit = std::any_of(explicit_keys.begin(), explicit_keys.end(), [&](auto& k) { return r.has(k); });
  const bool any_factored = std::any_of(factored_keys.begin(), factored_keys.end(), [&](auto& k) { return r.has(k); });
  if (any_explicit && any_factored) {
    r.errors.push_back(
        "specify exactly one of the explicit matrix (model.T11, model.T12, model.T21, model.T22) or the factored "
        "form (model.T, model.T_mask1, model.T_mask2), not both");
  } else if (!any_explicit && !any_factored) {
    r.errors.push_back(
        "model transmissibility missing: give model.T11..model.T22 or model.T with model.T_mask1 and model.T_mask2");
  } else if (any_explicit) {
    Matrix2 t{};
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& key = explicit_keys[k];
      auto v = r.optional_number(key);
      if (!v) {
        r.errors.push_back(key + " is required with the explicit matrix form");
        continue;
      }
      if (!in_unit(*v)) r.error(key, key.substr(6) + " must lie in [0,1]");
      t[k / 2][k % 2] = *v;
    }
    spec.model.explicit_T = t;
    if (r.has("model.T21_override")) {
      r.error("model.T21_override", "model.T21_override only applies to the factored form");
    }
  } else {
    FactoredTransmission f;
    double* slots[] = {&f.baseline, &f.inward, &f.outward};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& key = factored_keys[k];
      auto v = r.optional_number(key);
      if (!v) {
        r.errors.push_back(key + " is required with the factored form");
        continue;
      }
      if (!in_unit(*v)) r.error(key, key.substr(6) + " must lie in [0,1]");
      *slots[k] = *v;
    }
    if (auto o = r.optional_number("model.T21_override")) {
      if (!in_unit(*o)) r.error("model.T21_override", "T21_override must lie in [0,1]");
      f.t21_override = *o;
    }
    spec.model.factored = f;
  }
  for (const auto& k : explicit_keys) r.used.insert(k);
  for (const auto& k : factored_keys) r.used.insert(k);
  r.used.insert("model.T21_override");

  // sweep
  const Entry* axis_entry = r.find("sweep.axis");
  auto grid = r.grid("sweep.grid");
  std::string axis = axis_entry ? axis_entry->value : "";
  if (!axis_entry) {
    if (spec.kind == ExperimentKind::mask_sweep) axis = "model.m";
    if (spec.kind == ExperimentKind::t_sweep) axis = "model.T";
    if (!axis.empty()) r.defaulted.push_back("sweep.axis");
  }
  if (spec.kind == ExperimentKind::mask_sweep && axis != "model.m") {
    r.error("sweep.axis", "mask_sweep experiments sweep model.m");
  }
  if (spec.kind == ExperimentKind::t_sweep) {
    if (axis != "model.T") r.error("sweep.axis", "T_sweep experiments sweep model.T");
    if (!spec.model.factored && any_explicit) r.errors.push_back("T_sweep experiments need the factored model form");
  }
  if (grid && axis.empty()) r.errors.push_back("sweep.grid given without sweep.axis");
  if (!grid && !axis.empty()) r.errors.push_back("sweep.axis given without sweep.grid");
  if (grid && !axis.empty()) {
    if (std::find(sweep_axes().begin(), sweep_axes().end(), axis) == sweep_axes().end()) {
      r.error("sweep.axis", "unknown sweep axis `" + axis + "`");
    } else {
      for (double v : *grid) {
        if (auto msg = axis_domain_error(axis, v); !msg.empty()) {
          r.error("sweep.grid", "sweep.grid: " + msg);
          break;
        }
      }
      spec.sweep = SweepSpec{axis, *grid};
    }
  }

  // sim
  if (spec.kind == ExperimentKind::mutation_compare) spec.sim.trials = 0;
  {
    long long trials = static_cast<long long>(spec.sim.trials);
    r.number("sim.trials", trials);
    if (trials < 0) r.error("sim.trials", "sim.trials must be nonnegative");
    else spec.sim.trials = static_cast<std::size_t>(trials);
  }
  r.number("sim.master_seed", spec.sim.master_seed);
  {
    long long floor = static_cast<long long>(spec.sim.cutoff.floor);
    r.number("sim.cutoff_floor", floor);
    if (floor < 2) r.error("sim.cutoff_floor", "sim.cutoff_floor must be at least 2");
    else spec.sim.cutoff.floor = static_cast<std::size_t>(floor);
  }
  r.number("sim.cutoff_fraction", spec.sim.cutoff.fraction);
  if (!(spec.sim.cutoff.fraction > 0.0 && spec.sim.cutoff.fraction < 1.0)) {
    r.error("sim.cutoff_fraction", "sim.cutoff_fraction must lie in (0,1)");
  }
  r.choice("sim.patient_zero", spec.sim.patient_zero, kPolicies);
  r.boolean("sim.regenerate_network", spec.sim.regenerate_network);
  r.choice("sim.percolation", spec.sim.percolation, kPercolations);
  r.number("sim.workers", spec.sim.workers);

  // threshold
  if (const Entry* e = r.find("threshold.axis")) spec.threshold.axis = e->value;
  else r.defaulted.push_back("threshold.axis");
  if (std::find(sweep_axes().begin(), sweep_axes().end(), spec.threshold.axis) == sweep_axes().end()) {
    r.error("threshold.axis", "unknown threshold axis `" + spec.threshold.axis + "`");
  }
  r.number("threshold.lo", spec.threshold.lo);
  r.number("threshold.hi", spec.threshold.hi);
  if (!(spec.threshold.lo < spec.threshold.hi)) r.error("threshold.lo", "threshold.lo must be below threshold.hi");
  if (auto g = r.grid("threshold.grid")) spec.threshold.empirical_grid = *g;
  r.number("threshold.empirical_cutoff", spec.threshold.empirical_cutoff);
  if (!(spec.threshold.empirical_cutoff > 0.0 && spec.threshold.empirical_cutoff < 1.0)) {
    r.error("threshold.empirical_cutoff", "threshold.empirical_cutoff must lie in (0,1)");
  }

  // solver
  r.number("solver.tol", spec.solver.tol);
  if (!(spec.solver.tol > 0.0)) r.error("solver.tol", "solver.tol must be positive");
  {
    long long it = static_cast<long long>(spec.solver.max_iter);
    r.number("solver.max_iter", it);
    if (it < 1) r.error("solver.max_iter", "solver.max_iter must be positive");
    else spec.solver.max_iter = static_cast<std::size_t>(it);
  }

  if (const Entry* e = r.find("output.path")) spec.output_path = e->value;

  if (!r.errors.empty()) throw ConfigError(std::move(r.errors));
  spec.defaulted = std::move(r.defaulted);
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return validate_config(ss.str());
}

std::string resolved_config(const ExperimentSpec& spec) {
  std::ostringstream os;
  const auto mark = [&](const std::string& key) {
    return std::find(spec.defaulted.begin(), spec.defaulted.end(), key) != spec.defaulted.end() ? "  # default" : "";
  };
  const auto line = [&](const std::string& key, const auto& value) {
    os << key << " = ";
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(value)>>) {
      os << shortest(value);
    } else {
      os << value;
    }
    os << mark(key) << '\n';
  };
  const auto grid = [&](const std::vector<double>& g) {
    std::string out;
    for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + shortest(g[i]);
    return out;
  };

  line("experiment.kind", to_string(spec.kind));
  line("network.distribution", to_string(spec.distribution.kind));
  switch (spec.distribution.kind) {
    case DegreeKind::poisson: line("network.mean", spec.distribution.mean); break;
    case DegreeKind::powerlaw:
      line("network.exponent", spec.distribution.exponent);
      line("network.kmin", spec.distribution.kmin);
      line("network.kmax", spec.distribution.kmax);
      break;
    case DegreeKind::empirical: line("network.pmf_file", spec.distribution.pmf_file); break;
  }
  line("network.n", spec.n);
  line("network.simple", spec.simple_graph ? "true" : "false");
  line("model.m", spec.model.m);
  if (spec.model.explicit_T) {
    const auto& t = *spec.model.explicit_T;
    line("model.T11", t[0][0]);
    line("model.T12", t[0][1]);
    line("model.T21", t[1][0]);
    line("model.T22", t[1][1]);
  } else if (spec.model.factored) {
    const auto& f = *spec.model.factored;
    line("model.T", f.baseline);
    line("model.T_mask1", f.inward);
    line("model.T_mask2", f.outward);
    if (f.t21_override) line("model.T21_override", *f.t21_override);
  }
  if (spec.sweep) {
    line("sweep.axis", spec.sweep->axis);
    line("sweep.grid", grid(spec.sweep->grid));
  }
  line("sim.trials", spec.sim.trials);
  line("sim.master_seed", spec.sim.master_seed);
  line("sim.cutoff_floor", spec.sim.cutoff.floor);
  line("sim.cutoff_fraction", spec.sim.cutoff.fraction);
  line("sim.patient_zero", to_string(spec.sim.patient_zero));
  line("sim.regenerate_network", spec.sim.regenerate_network ? "true" : "false");
  line("sim.percolation", to_string(spec.sim.percolation));
  line("sim.workers", spec.sim.workers);
  line("threshold.axis", spec.threshold.axis);
  line("threshold.lo", spec.threshold.lo);
  line("threshold.hi", spec.threshold.hi);
  if (!spec.threshold.empirical_grid.empty()) line("threshold.grid", grid(spec.threshold.empirical_grid));
  line("threshold.empirical_cutoff", spec.threshold.empirical_cutoff);
  line("solver.tol", spec.solver.tol);
  line("solver.max_iter", spec.solver.max_iter);
  if (!spec.output_path.empty()) line("output.path", spec.output_path);
  return os.str();
}

std::string to_string(ExperimentKind kind) { return name_of(kind, kKinds); }
std::string to_string(PatientZeroPolicy policy) { return name_of(policy, kPolicies); }
std::string to_string(Percolation p) { return name_of(p, kPercolations); }
std::string to_string(DegreeKind kind) { return name_of(kind, kDistributions); }

}  // namespace maskperc
