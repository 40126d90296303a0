#include "maskperc/degree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "maskperc/rng.hpp"

namespace maskperc {
namespace {

constexpr double kUnitSlack = 1e-12;

double check_unit(double z) {
  if (!(z >= -kUnitSlack && z <= 1.0 + kUnitSlack)) {
    throw std::domain_error("PGF argument must lie in [0,1], got " + std::to_string(z));
  }
  return std::clamp(z, 0.0, 1.0);
}

Moments table_moments(const std::vector<double>& pmf) {
  Moments m;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double kk = static_cast<double>(k);
    m.mean += kk * pmf[k];
    m.second += kk * kk * pmf[k];
  }
  return m;
}

void require_normalized(const std::vector<double>& pmf) {
  if (pmf.empty()) throw std::invalid_argument("degree pmf is empty");
  double total = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("degree pmf entries must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("degree pmf must sum to 1 (sum = " + std::to_string(total) + ")");
  }
}

}  // namespace

int poisson_kmax(double mean) {
  return static_cast<int>(std::ceil(mean + 12.0 * std::sqrt(mean) + 20.0));
}

DegreeDistribution::DegreeDistribution(DegreeKind kind, double param, int kmin,
                                       std::vector<double> pmf)
    : kind_(kind), param_(param), kmin_(kmin), pmf_(std::move(pmf)) {
  // Trailing zeros carry no information and inflate series costs.
  while (pmf_.size() > 1 && pmf_.back() == 0.0) pmf_.pop_back();
  table_mean_ = table_moments(pmf_).mean;
  cdf_.resize(pmf_.size());
  std::partial_sum(pmf_.begin(), pmf_.end(), cdf_.begin());
  for (double& c : cdf_) c /= cdf_.back();
  if (kind_ == DegreeKind::poisson) {
    moments_ = {param_, param_ + param_ * param_};
  } else {
    moments_ = table_moments(pmf_);
  }
}

DegreeDistribution DegreeDistribution::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("Poisson mean must be finite and nonnegative");
  }
  const int kmax = poisson_kmax(mean);
  std::vector<double> pmf(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (mean == 0.0) {
    pmf[0] = 1.0;
  } else {
    const double log_mean = std::log(mean);
    for (int k = 0; k <= kmax; ++k) {
      pmf[k] = std::exp(-mean + k * log_mean - std::lgamma(k + 1.0));
    }
  }
  return DegreeDistribution(DegreeKind::poisson, mean, 0, std::move(pmf));
}

DegreeDistribution DegreeDistribution::power_law(double exponent, int kmin, int kmax) {
  if (kmin < 1 || kmax < kmin) {
    throw std::invalid_argument("power law needs 1 <= kmin <= kmax");
  }
  if (!std::isfinite(exponent)) throw std::invalid_argument("power-law exponent must be finite");
  std::vector<double> pmf(static_cast<std::size_t>(kmax) + 1, 0.0);
  double norm = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    pmf[k] = std::pow(static_cast<double>(k), -exponent);
    norm += pmf[k];
  }
  for (double& p : pmf) p /= norm;
  return DegreeDistribution(DegreeKind::powerlaw, exponent, kmin, std::move(pmf));
}

DegreeDistribution DegreeDistribution::empirical(std::vector<double> pmf) {
  require_normalized(pmf);
  return DegreeDistribution(DegreeKind::empirical, 0.0, 0, std::move(pmf));
}

DegreeDistribution DegreeDistribution::load_pmf(std::istream& in) {
  std::vector<double> pmf;
  std::string line;
  int line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    long long degree = 0;
    double prob = 0.0;
    if (!(row >> degree >> prob)) {
      if (!seen_data) {
        seen_data = true;  // header row
        continue;
      }
      throw std::invalid_argument("pmf line " + std::to_string(line_no) + ": expected `degree,probability`");
    }
    seen_data = true;
    if (degree < 0 || degree > 10'000'000) {
      throw std::invalid_argument("pmf line " + std::to_string(line_no) + ": degree out of range");
    }
    if (static_cast<std::size_t>(degree) >= pmf.size()) pmf.resize(static_cast<std::size_t>(degree) + 1, 0.0);
    pmf[static_cast<std::size_t>(degree)] += prob;
  }
  if (pmf.empty()) throw std::invalid_argument("pmf file has no data rows");
  const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-6) {
    throw std::invalid_argument("pmf probabilities sum to " + std::to_string(total) + ", expected 1");
  }
  for (double& p : pmf) p /= total;
  return empirical(std::move(pmf));
}

DegreeDistribution DegreeDistribution::load_pmf(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pmf file " + path.string());
  return load_pmf(in);
}

double DegreeDistribution::pmf(int k) const noexcept {
  if (k < 0 || k > kmax()) return 0.0;
  return pmf_[static_cast<std::size_t>(k)];
}

double DegreeDistribution::pgf(double z) const {
  z = check_unit(z);
  if (kind_ == DegreeKind::poisson) return std::exp(param_ * (z - 1.0));
  return pgf_series(z);
}

double DegreeDistribution::excess_pgf(double z) const {
  z = check_unit(z);
  if (moments_.mean <= 0.0) throw std::domain_error("excess PGF undefined for zero mean degree");
  if (kind_ == DegreeKind::poisson) return z * std::exp(param_ * (z - 1.0));
  return excess_pgf_series(z);
}

double DegreeDistribution::offspring_pgf(double z) const {
  z = check_unit(z);
  if (moments_.mean <= 0.0) throw std::domain_error("offspring PGF undefined for zero mean degree");
  if (kind_ == DegreeKind::poisson) return std::exp(param_ * (z - 1.0));
  return offspring_pgf_series(z);
}

double DegreeDistribution::pgf_series(double z) const {
  z = check_unit(z);
  double acc = 0.0;
  for (std::size_t k = pmf_.size(); k-- > 0;) acc = acc * z + pmf_[k];
  return acc;
}

double DegreeDistribution::excess_pgf_series(double z) const {
  z = check_unit(z);
  if (moments_.mean <= 0.0) throw std::domain_error("excess PGF undefined for zero mean degree");
  double acc = 0.0;
  for (std::size_t k = pmf_.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * pmf_[k];
  return acc * z / table_mean_;
}

double DegreeDistribution::offspring_pgf_series(double z) const {
  z = check_unit(z);
  if (moments_.mean <= 0.0) throw std::domain_error("offspring PGF undefined for zero mean degree");
  double acc = 0.0;
  for (std::size_t k = pmf_.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * pmf_[k];
  return acc / table_mean_;
}

std::vector<int> DegreeDistribution::sample(std::size_t n, std::uint64_t seed) const {
  std::vector<int> degrees(n);
  if (n == 0) return degrees;
  Engine eng = make_engine(seed);

  // Inverse-CDF lookup on the table; the Poisson table's truncated tail
  // carries far less mass than double resolution.
  auto draw = [&] {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), uniform01(eng));
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf_.begin(), kmax()));
  };
  long long total = 0;
  for (auto& d : degrees) {
    d = draw();
    total += d;
  }
  if (total % 2 == 0) return degrees;
  bool all_odd = true;
  for (int k = 0; k <= kmax(); ++k) all_odd = all_odd && (pmf_[k] == 0.0 || k % 2 == 1);
  if (all_odd && n % 2 == 1) {
    throw std::invalid_argument("degree support is all odd and n is odd; no graphical sequence exists");
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  while (total % 2 != 0) {
    const std::size_t i = pick(eng);
    const int redraw = draw();
    total += redraw - degrees[i];
    degrees[i] = redraw;
  }
  return degrees;
}

std::string DegreeDistribution::describe() const {
  std::ostringstream os;
  os.precision(10);
  switch (kind_) {
    case DegreeKind::poisson: os << "poisson(" << param_ << ")"; break;
    case DegreeKind::powerlaw: os << "powerlaw(" << param_ << "," << kmin_ << "," << kmax() << ")"; break;
    case DegreeKind::empirical: os << "empirical(kmax=" << kmax() << ")"; break;
  }
  return os.str();
}

}  // namespace maskperc
