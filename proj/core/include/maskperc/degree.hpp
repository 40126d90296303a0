#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace maskperc {

enum class DegreeKind { poisson, powerlaw, empirical };

struct Moments {
  double mean = 0.0;         // <k>
  double second = 0.0;       // <k^2>
};

/// A degree distribution over k = 0..kmax.
///
/// Poisson distributions keep their closed-form PGF and moments; the stored
/// pmf table (truncated at lambda + 12 sqrt(lambda) + 20, tail mass below
/// 1e-12) is only used for sampling-independent series checks. Power-law and
/// empirical distributions are fully described by their table.
class DegreeDistribution {
 public:
  static DegreeDistribution poisson(double mean);
  /// p_k proportional to k^-exponent on [kmin, kmax], kmin >= 1.
  static DegreeDistribution power_law(double exponent, int kmin, int kmax);
  /// pmf[k] = P(degree = k). Must be nonnegative and sum to 1 within 1e-9.
  static DegreeDistribution empirical(std::vector<double> pmf);
  /// Two-column `degree,probability` text. Header row optional, `#` starts a
  /// comment. Rows with sum off by more than 1e-6 are rejected; otherwise the
  /// table is renormalized.
  static DegreeDistribution load_pmf(std::istream& in);
  static DegreeDistribution load_pmf(const std::filesystem::path& path);

  DegreeKind kind() const noexcept { return kind_; }
  int kmax() const noexcept { return static_cast<int>(pmf_.size()) - 1; }
  double pmf(int k) const noexcept;
  std::span<const double> pmf_table() const noexcept { return pmf_; }

  /// Poisson mean; power-law exponent. Zero for empirical tables.
  double parameter() const noexcept { return param_; }
  int powerlaw_kmin() const noexcept { return kmin_; }

  Moments moments() const noexcept { return moments_; }

  /// g(z) = sum_k p_k z^k on [0, 1].
  double pgf(double z) const;
  /// Size-biased PGF, sum_k (k p_k / <k>) z^k. For Poisson this is z g(z).
  double excess_pgf(double z) const;
  /// Offspring PGF of the branching process reached along an edge,
  /// sum_k (k p_k / <k>) z^(k-1). This is what the fixed-point solvers use.
  double offspring_pgf(double z) const;

  // Truncated-sum evaluations over the pmf table, ignoring any closed form.
  double pgf_series(double z) const;
  double excess_pgf_series(double z) const;
  double offspring_pgf_series(double z) const;

  /// n i.i.d. degrees with even sum. An odd total is repaired by redrawing
  /// one uniformly chosen entry until the parity flips.
  std::vector<int> sample(std::size_t n, std::uint64_t seed) const;

  std::string describe() const;

 private:
  DegreeDistribution(DegreeKind kind, double param, int kmin, std::vector<double> pmf);

  DegreeKind kind_;
  double param_ = 0.0;
  int kmin_ = 0;
  std::vector<double> pmf_;
  Moments moments_;
  double table_mean_ = 0.0;
  std::vector<double> cdf_;  // normalized cumulative table for sampling
};

/// Truncation point used for Poisson series.
int poisson_kmax(double mean);

}  // namespace maskperc
