#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "maskperc/degree.hpp"
#include "maskperc/mask_model.hpp"

namespace maskperc {

/// Two-strain mutation model equivalent to a mask model: a type-i infective
/// transmits with probability Q_i on average, and mu(i, j) is the chance the
/// infected neighbour is of type j.
struct MutationAnalogue {
  double q1 = 0.0;
  double q2 = 0.0;
  Matrix2 mu{};
  /// Row i is undefined when Q_i = 0; it is then stored as zeros and the
  /// strain treated as non-transmitting.
  std::array<bool, 2> degenerate{};

  double q(std::size_t i) const noexcept { return i == 0 ? q1 : q2; }
  /// Q mu, which equals T diag(m, 1-m).
  Matrix2 next_generation() const noexcept;
};

MutationAnalogue mutation_map(const MaskModelParams& params);

/// Largest eigenvalue modulus of a 2x2 matrix with nonnegative entries.
double spectral_radius(const Matrix2& a);

/// (<k^2> - <k>) / <k>: mean number of further edges at the end of a random
/// edge. Zero for the all-isolated distribution.
double branching_factor(const DegreeDistribution& dist);

double r0(const DegreeDistribution& dist, const MaskModelParams& params);

struct SolverOptions {
  double tol = 1e-12;
  std::size_t max_iter = 1'000'000;
  /// Inside |R0 - 1| < critical_band the tolerance tightens to critical_tol
  /// and hitting max_iter is reported in diagnostics instead of thrown.
  double critical_band = 1e-3;
  double critical_tol = 1e-14;
  /// Number of trailing residuals kept in diagnostics.
  std::size_t history = 64;
};

struct FixedPointDiagnostics {
  std::size_t iterations = 0;
  double residual = 0.0;  // sup-norm of the last update
  double tolerance = 0.0;
  bool converged = false;
  bool damped = false;
  bool near_threshold = false;
  std::vector<double> residual_tail;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, FixedPointDiagnostics diag)
      : std::runtime_error(what), diagnostics_(std::move(diag)) {}
  const FixedPointDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  FixedPointDiagnostics diagnostics_;
};

/// Extinction/emergence by patient-zero type (index 0 = masked).
///
/// Extinction probabilities P_i are what the extinction-branch fixed point
/// produces; emergence is reported separately as 1 - P_i so neither label
/// has to stand for the other.
struct EmergenceResult {
  std::array<double, 2> branch_extinction{1.0, 1.0};  // smallest fixed point (q1, q2)
  std::array<double, 2> extinction{1.0, 1.0};
  std::array<double, 2> emergence{};
  double extinction_mixed = 1.0;  // m P1 + (1 - m) P2
  double emergence_mixed = 0.0;
  FixedPointDiagnostics diagnostics;
};

struct SizeResult {
  std::array<double, 2> q_inf{};  // probability a child of each type is infected from below
  double s_masked = 0.0;          // fraction of masked nodes infected
  double s_unmasked = 0.0;
  double s_total = 0.0;           // s_masked m + s_unmasked (1 - m)
  FixedPointDiagnostics diagnostics;
};

struct MutationSizeResult {
  std::array<double, 2> q_inf{};     // P(child infected and carrying strain i)
  std::array<double, 2> by_strain{};  // P(root infected and carrying strain i)
  double total = 0.0;
  FixedPointDiagnostics diagnostics;
};

struct AnalyticPrediction {
  double r0 = 0.0;
  EmergenceResult emergence;
  SizeResult size;
};

/// Iterates the offspring-PGF map from (0, 0) to the smallest fixed point.
EmergenceResult emergence_probability(const DegreeDistribution& dist, const MaskModelParams& params,
                                      const SolverOptions& opts = {});

/// Iterates the level recursion from (1, 1) to its largest fixed point.
SizeResult epidemic_size(const DegreeDistribution& dist, const MaskModelParams& params,
                         const SolverOptions& opts = {});

/// Final size of the two-strain mutation model. A node hit by x strain-1 and
/// y strain-2 transmissions is infected (at least one success) and receives
/// strain 1 with probability x / (x + y); the received strain then mutates
/// per mu before the node transmits with the new strain's Q.
MutationSizeResult mutation_epidemic_size(const DegreeDistribution& dist, const MutationAnalogue& analogue,
                                          const SolverOptions& opts = {});

AnalyticPrediction predict(const DegreeDistribution& dist, const MaskModelParams& params,
                           const SolverOptions& opts = {});

/// Probability a node of `type` with z children is infected, given each
/// masked child is infected w.p. q1 and each unmasked child w.p. q2:
/// 1 - (1 - m q1 T_1i - (1 - m) q2 T_2i)^z.
double f_closed(int z, double q1, double q2, const MaskModelParams& params, NodeType type);

/// Same quantity as a literal triple binomial sum over the number of masked
/// children and the infected children of each kind. O(z^3); z <= 20.
double f_literal(int z, double q1, double q2, const MaskModelParams& params, NodeType type);

}  // namespace maskperc
