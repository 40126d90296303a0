#include "maskperc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace maskperc {
namespace {

using Vec2 = std::array<double, 2>;

double sup_diff(const Vec2& a, const Vec2& b) {
  return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Plain fixed-point iteration x <- F(x), switching to x <- (x + F(x)) / 2
// if the residual grows three times in a row.
template <typename Map>
FixedPointDiagnostics iterate(Vec2& x, Map&& map, double r0_value, const SolverOptions& opts,
                              const char* what) {
  FixedPointDiagnostics d;
  d.near_threshold = std::abs(r0_value - 1.0) < opts.critical_band;
  d.tolerance = d.near_threshold ? std::min(opts.tol, opts.critical_tol) : opts.tol;

  std::deque<double> tail;
  double previous = INFINITY;
  int growth_streak = 0;
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    Vec2 next = map(x);
    const double residual = sup_diff(next, x);
    if (d.damped) next = {0.5 * (x[0] + next[0]), 0.5 * (x[1] + next[1])};
    x = next;
    d.iterations = it;
    d.residual = residual;
    if (opts.history > 0) {
      tail.push_back(residual);
      if (tail.size() > opts.history) tail.pop_front();
    }
    if (residual < d.tolerance) {
      d.converged = true;
      break;
    }
    growth_streak = residual > previous ? growth_streak + 1 : 0;
    if (growth_streak >= 3 && !d.damped) d.damped = true;
    previous = residual;
  }
  d.residual_tail.assign(tail.begin(), tail.end());
  if (!d.converged && !d.near_threshold) {
    std::ostringstream os;
    os << what << " did not converge in " << d.iterations << " iterations (residual " << d.residual << ")";
    throw SolverError(os.str(), std::move(d));
  }
  return d;
}

bool no_edges(const DegreeDistribution& dist) { return dist.moments().mean <= 0.0; }

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace

Matrix2 MutationAnalogue::next_generation() const noexcept {
  return {{{q1 * mu[0][0], q1 * mu[0][1]}, {q2 * mu[1][0], q2 * mu[1][1]}}};
}

MutationAnalogue mutation_map(const MaskModelParams& params) {
  const double m = params.m;
  const auto& T = params.T;
  MutationAnalogue a;
  a.q1 = T.t11() * m + T.t12() * (1.0 - m);
  a.q2 = T.t21() * m + T.t22() * (1.0 - m);
  if (a.q1 > 0.0) {
    a.mu[0] = {T.t11() * m / a.q1, T.t12() * (1.0 - m) / a.q1};
  } else {
    a.degenerate[0] = true;
  }
  if (a.q2 > 0.0) {
    a.mu[1] = {T.t21() * m / a.q2, T.t22() * (1.0 - m) / a.q2};
  } else {
    a.degenerate[1] = true;
  }
  return a;
}

double spectral_radius(const Matrix2& a) {
  const double trace = a[0][0] + a[1][1];
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double disc = trace * trace - 4.0 * det;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    return std::max(std::abs(0.5 * (trace + root)), std::abs(0.5 * (trace - root)));
  }
  // Complex pair: |lambda|^2 = det.
  return std::sqrt(det);
}

double branching_factor(const DegreeDistribution& dist) {
  const auto mo = dist.moments();
  if (mo.mean <= 0.0) return 0.0;
  return (mo.second - mo.mean) / mo.mean;
}

double r0(const DegreeDistribution& dist, const MaskModelParams& params) {
  return branching_factor(dist) * spectral_radius(params.next_generation());
}

EmergenceResult emergence_probability(const DegreeDistribution& dist, const MaskModelParams& params,
                                      const SolverOptions& opts) {
  params.validate();
  EmergenceResult r;
  if (no_edges(dist)) {
    r.diagnostics.converged = true;
    return r;
  }
  const auto analogue = mutation_map(params);

  // Argument 1 - Q_i + Q_i (s mu_i1 + t mu_i2) of both gamma_i and Gamma_i.
  auto offspring_arg = [&](std::size_t i, const Vec2& st) {
    if (analogue.degenerate[i]) return 1.0;
    const double q = analogue.q(i);
    const auto& mu = analogue.mu[i];
    return clamp01(1.0 - q + q * (st[0] * mu[0] + st[1] * mu[1]));
  };

  Vec2 st{0.0, 0.0};
  r.diagnostics = iterate(
      st,
      [&](const Vec2& x) {
        return Vec2{dist.offspring_pgf(offspring_arg(0, x)), dist.offspring_pgf(offspring_arg(1, x))};
      },
      r0(dist, params), opts, "extinction fixed point");

  r.branch_extinction = st;
  for (std::size_t i = 0; i < 2; ++i) {
    r.extinction[i] = dist.pgf(offspring_arg(i, st));
    r.emergence[i] = 1.0 - r.extinction[i];
  }
  r.extinction_mixed = params.m * r.extinction[0] + (1.0 - params.m) * r.extinction[1];
  r.emergence_mixed = 1.0 - r.extinction_mixed;
  return r;
}

SizeResult epidemic_size(const DegreeDistribution& dist, const MaskModelParams& params, const SolverOptions& opts) {
  params.validate();
  SizeResult r;
  if (no_edges(dist)) {
    r.diagnostics.converged = true;
    return r;
  }
  const double m = params.m;
  const auto& T = params.T.t;
  // Probability a single child fails to infect a parent of type i.
  auto escape = [&](std::size_t i, const Vec2& q) {
    return clamp01(1.0 - m * q[0] * T[0][i] - (1.0 - m) * q[1] * T[1][i]);
  };

  Vec2 q{1.0, 1.0};
  r.diagnostics = iterate(
      q,
      [&](const Vec2& x) {
        return Vec2{1.0 - dist.offspring_pgf(escape(0, x)), 1.0 - dist.offspring_pgf(escape(1, x))};
      },
      r0(dist, params), opts, "epidemic size fixed point");

  r.q_inf = q;
  r.s_masked = 1.0 - dist.pgf(escape(0, q));
  r.s_unmasked = 1.0 - dist.pgf(escape(1, q));
  r.s_total = r.s_masked * m + r.s_unmasked * (1.0 - m);
  return r;
}

MutationSizeResult mutation_epidemic_size(const DegreeDistribution& dist, const MutationAnalogue& analogue,
                                          const SolverOptions& opts) {
  MutationSizeResult r;
  if (no_edges(dist)) {
    r.diagnostics.converged = true;
    return r;
  }
  const Vec2 Q{analogue.q1, analogue.q2};
  const auto& mu = analogue.mu;

  // Given infection probability p from children with per-child success
  // weights a, split p across strains after mutation.
  auto split = [&](double p, const Vec2& a) {
    const double total = a[0] + a[1];
    if (total <= 0.0) return Vec2{0.0, 0.0};
    return Vec2{p * (a[0] * mu[0][0] + a[1] * mu[1][0]) / total, p * (a[0] * mu[0][1] + a[1] * mu[1][1]) / total};
  };
  auto weights = [&](const Vec2& q) { return Vec2{q[0] * Q[0], q[1] * Q[1]}; };

  Vec2 q{1.0, 1.0};
  const double rho = branching_factor(dist) * spectral_radius(analogue.next_generation());
  r.diagnostics = iterate(
      q,
      [&](const Vec2& x) {
        const Vec2 a = weights(x);
        return split(1.0 - dist.offspring_pgf(clamp01(1.0 - a[0] - a[1])), a);
      },
      rho, opts, "mutation size fixed point");

  r.q_inf = q;
  const Vec2 a = weights(q);
  const double root = 1.0 - dist.pgf(clamp01(1.0 - a[0] - a[1]));
  r.by_strain = split(root, a);
  r.total = r.by_strain[0] + r.by_strain[1];
  if (a[0] + a[1] <= 0.0) r.total = 0.0;
  return r;
}

AnalyticPrediction predict(const DegreeDistribution& dist, const MaskModelParams& params, const SolverOptions& opts) {
  AnalyticPrediction p;
  p.r0 = r0(dist, params);
  p.emergence = emergence_probability(dist, params, opts);
  p.size = epidemic_size(dist, params, opts);
  return p;
}

double f_closed(int z, double q1, double q2, const MaskModelParams& params, NodeType type) {
  if (z < 0) throw std::invalid_argument("child count must be nonnegative");
  const std::size_t i = index_of(type);
  const double m = params.m;
  const auto& T = params.T.t;
  return 1.0 - std::pow(1.0 - m * q1 * T[0][i] - (1.0 - m) * q2 * T[1][i], z);
}

double f_literal(int z, double q1, double q2, const MaskModelParams& params, NodeType type) {
  if (z < 0) throw std::invalid_argument("child count must be nonnegative");
  if (z > 20) throw std::invalid_argument("f_literal is limited to z <= 20");
  const std::size_t i = index_of(type);
  const double m = params.m;
  const double from_masked = params.T.t[0][i];
  const double from_unmasked = params.T.t[1][i];
  double total = 0.0;
  for (int x = 0; x <= z; ++x) {
    const double px = binomial(z, x) * std::pow(m, x) * std::pow(1.0 - m, z - x);
    for (int u = 0; u <= x; ++u) {
      const double pu = binomial(x, u) * std::pow(q1, u) * std::pow(1.0 - q1, x - u);
      for (int v = 0; v <= z - x; ++v) {
        const double pv = binomial(z - x, v) * std::pow(q2, v) * std::pow(1.0 - q2, z - x - v);
        total += px * pu * pv * (1.0 - std::pow(1.0 - from_masked, u) * std::pow(1.0 - from_unmasked, v));
      }
    }
  }
  return total;
}

}  // namespace maskperc
