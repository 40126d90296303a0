#include <cmath>
#include <random>

#include "doctest.h"
#include "maskperc/analytic.hpp"
#include "oracles/mutation_literal.hpp"
#include "oracles/newman.hpp"

using namespace maskperc;
using doctest::Approx;

namespace {

const MaskModelParams kFig1 = MaskModelParams::explicit_matrix(0.45, 0.126, 0.18, 0.42, 0.6);

MaskModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return MaskModelParams::explicit_matrix(u(rng), u(rng), u(rng), u(rng), u(rng));
}

// Sum over the table of w(k) * f(k); used to evaluate fixed-point equations
// through the literal per-degree formulas.
template <typename F>
double degree_sum(const DegreeDistribution& d, bool size_biased, F f) {
  double total = 0.0;
  const double mean = d.moments().mean;
  for (int k = 0; k <= d.kmax(); ++k) {
    const double w = size_biased ? k * d.pmf(k) / mean : d.pmf(k);
    if (w == 0.0) continue;
    total += w * f(size_biased ? k - 1 : k);
  }
  return total;
}

}  // namespace

TEST_CASE("mutation map for the reference parameters") {
  const auto a = mutation_map(kFig1);
  CHECK(a.q1 == Approx(0.1557).epsilon(1e-12));
  CHECK(a.q2 == Approx(0.519).epsilon(1e-12));
  for (const auto& row : a.mu) CHECK(std::abs(row[0] + row[1] - 1.0) < 1e-12);
  const auto ng = a.next_generation();
  const auto direct = kFig1.next_generation();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(ng[i][j] == Approx(direct[i][j]).epsilon(1e-14));
}

TEST_CASE("mutation map degenerate rows") {
  const auto a = mutation_map(MaskModelParams::explicit_matrix(0.5, 0.0, 0.0, 0.2, 0.4));
  CHECK(a.degenerate[0]);
  CHECK_FALSE(a.degenerate[1]);
  CHECK(a.q1 == 0.0);
}

TEST_CASE("spectral radius") {
  CHECK(spectral_radius({{{2, 0}, {0, 3}}}) == Approx(3));
  CHECK(spectral_radius({{{0, 1}, {4, 0}}}) == Approx(2));
  CHECK(spectral_radius({{{0.3, 0.6}, {0.2, 0.4}}}) == Approx(0.7));
  CHECK(spectral_radius({{{0, 0}, {0, 0}}}) == 0.0);
}

TEST_CASE("R0 for single-type and rank-one cases") {
  CHECK(r0(DegreeDistribution::poisson(4.0), MaskModelParams::explicit_matrix(1.0, 0.25, 0.9, 0.9, 0.9)) ==
        Approx(1.0));
  CHECK(r0(DegreeDistribution::poisson(5.0), MaskModelParams::explicit_matrix(0.0, 0.9, 0.9, 0.9, 0.6)) ==
        Approx(3.0));
  const auto fac = MaskModelParams::factored(0.45, {.baseline = 1.0, .inward = 0.3, .outward = 0.7});
  CHECK(spectral_radius(fac.next_generation()) == Approx(0.6445));
  CHECK(r0(DegreeDistribution::poisson(5.0), fac) == Approx(5 * 0.6445));
  CHECK(r0(DegreeDistribution::poisson(0.0), kFig1) == 0.0);
  CHECK(branching_factor(DegreeDistribution::empirical({0.0, 0.5, 0.0, 0.5})) == Approx(1.5));
}

TEST_CASE("closed-form child sum matches the literal triple sum") {
  std::mt19937_64 rng(2021);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int draw = 0; draw < 200; ++draw) {
    const auto p = random_params(rng);
    const double q1 = u(rng), q2 = u(rng);
    for (int z = 0; z <= 12; ++z) {
      for (auto type : {NodeType::masked, NodeType::unmasked}) {
        worst = std::max(worst, std::abs(f_closed(z, q1, q2, p, type) - f_literal(z, q1, q2, p, type)));
      }
    }
  }
  CHECK(worst < 1e-12);
  CHECK(f_closed(0, 0.5, 0.5, kFig1, NodeType::masked) == 0.0);
  CHECK_THROWS_AS(f_literal(21, 0.5, 0.5, kFig1, NodeType::masked), std::invalid_argument);
  CHECK_THROWS_AS(f_closed(-1, 0.5, 0.5, kFig1, NodeType::masked), std::invalid_argument);
}

TEST_CASE("single-type reduction matches an independent solver") {
  struct Case {
    double lambda;
    MaskModelParams params;
    double t;
  };
  const std::vector<Case> cases = {
      {5.0, MaskModelParams::explicit_matrix(0.0, 0.126, 0.18, 0.42, 0.6), 0.6},
      {10.0, MaskModelParams::explicit_matrix(1.0, 0.126, 0.18, 0.42, 0.6), 0.126},
      {3.0, MaskModelParams::explicit_matrix(0.0, 0.9, 0.9, 0.9, 0.5), 0.5},
  };
  for (const auto& c : cases) {
    const auto d = DegreeDistribution::poisson(c.lambda);
    const auto ref = oracle::newman_solve(oracle::poisson_table(c.lambda, d.kmax()), c.t);
    const auto e = emergence_probability(d, c.params);
    const auto s = epidemic_size(d, c.params);
    CHECK(std::abs(e.emergence_mixed - ref.size) < 1e-9);
    CHECK(std::abs(s.s_total - ref.size) < 1e-9);
  }
  // Heavy-tailed table through the series path.
  const auto pl = DegreeDistribution::power_law(2.5, 1, 300);
  const auto ref = oracle::newman_solve({pl.pmf_table().begin(), pl.pmf_table().end()}, 0.6);
  const auto unmasked = MaskModelParams::explicit_matrix(0.0, 0.1, 0.1, 0.1, 0.6);
  CHECK(std::abs(emergence_probability(pl, unmasked).emergence_mixed - ref.size) < 1e-9);
  CHECK(std::abs(epidemic_size(pl, unmasked).s_total - ref.size) < 1e-9);
}

TEST_CASE("solutions satisfy the literal per-degree equations") {
  const auto d = DegreeDistribution::poisson(3.0);
  const auto p = MaskModelParams::explicit_matrix(0.4, 0.35, 0.5, 0.6, 0.85);
  REQUIRE(r0(d, p) > 1.0);
  const auto s = epidemic_size(d, p);
  for (auto type : {NodeType::masked, NodeType::unmasked}) {
    const auto i = index_of(type);
    auto child = [&](int z) { return z > 20 ? 1.0 : f_literal(z, s.q_inf[0], s.q_inf[1], p, type); };
    CHECK(std::abs(degree_sum(d, true, child) - s.q_inf[i]) < 1e-9);
    CHECK(std::abs(degree_sum(d, false, child) - (i == 0 ? s.s_masked : s.s_unmasked)) < 1e-9);
  }
  CHECK(s.s_total == Approx(0.4 * s.s_masked + 0.6 * s.s_unmasked));

  const auto e = emergence_probability(d, p);
  const auto a = mutation_map(p);
  for (std::size_t i = 0; i < 2; ++i) {
    const double arg = 1 - a.q(i) + a.q(i) * (e.branch_extinction[0] * a.mu[i][0] + e.branch_extinction[1] * a.mu[i][1]);
    CHECK(std::abs(d.offspring_pgf_series(arg) - e.branch_extinction[i]) < 1e-10);
    CHECK(std::abs(d.pgf_series(arg) - e.extinction[i]) < 1e-10);
    CHECK(e.emergence[i] == Approx(1.0 - e.extinction[i]));
  }
  CHECK(e.extinction_mixed == Approx(0.4 * e.extinction[0] + 0.6 * e.extinction[1]));
}

TEST_CASE("mutation-model size satisfies the literal conditional sum") {
  const auto d = DegreeDistribution::poisson(3.0);
  const auto a = mutation_map(MaskModelParams::explicit_matrix(0.45, 0.3, 0.5, 0.6, 0.8));
  const auto r = mutation_epidemic_size(d, a);
  REQUIRE(r.total > 0.05);
  const std::array<double, 2> Q{a.q1, a.q2};
  for (int strain = 0; strain < 2; ++strain) {
    auto literal = [&](int z) { return z > 20 ? 0.0 : oracle::mutation_literal(z, r.q_inf, Q, a.mu, strain); };
    CHECK(std::abs(degree_sum(d, true, literal) - r.q_inf[strain]) < 1e-9);
    CHECK(std::abs(degree_sum(d, false, literal) - r.by_strain[strain]) < 1e-9);
  }
  CHECK(r.total == Approx(r.by_strain[0] + r.by_strain[1]));
}

TEST_CASE("mask and mutation models coincide when susceptibility ignores type") {
  // With T11 = T12 and T21 = T22 only the infector's type matters, and the
  // mutation step reproduces the Bernoulli(m) labelling exactly.
  const auto d = DegreeDistribution::poisson(4.0);
  const auto p = MaskModelParams::explicit_matrix(0.3, 0.2, 0.2, 0.7, 0.7);
  CHECK(std::abs(epidemic_size(d, p).s_total - mutation_epidemic_size(d, mutation_map(p)).total) < 1e-9);
}

TEST_CASE("symmetric transmissibility makes emergence equal size") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto d = DegreeDistribution::poisson(6.0);
  for (int draw = 0; draw < 20; ++draw) {
    const double off = u(rng);
    const auto p = MaskModelParams::explicit_matrix(u(rng), u(rng), off, off, u(rng));
    if (std::abs(r0(d, p) - 1.0) < 0.05) continue;
    const auto e = emergence_probability(d, p);
    const auto s = epidemic_size(d, p);
    CHECK(std::abs(e.emergence[0] - s.s_masked) < 1e-8);
    CHECK(std::abs(e.emergence[1] - s.s_unmasked) < 1e-8);
  }
}

TEST_CASE("threshold consistency over random draws") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lam(0.5, 10.0);
  int sub = 0, super = 0;
  for (int draw = 0; draw < 300; ++draw) {
    const auto p = random_params(rng);
    const auto d = DegreeDistribution::poisson(lam(rng));
    const double R = r0(d, p);
    if (std::abs(R - 1.0) < 0.02) continue;
    const auto e = emergence_probability(d, p);
    const auto s = epidemic_size(d, p);
    CHECK(e.diagnostics.converged);
    CHECK(s.diagnostics.converged);
    if (R < 1.0) {
      ++sub;
      CHECK(e.emergence_mixed < 1e-9);
      CHECK(s.s_total < 1e-9);
    } else {
      ++super;
      CHECK(e.emergence_mixed > 1e-6);
      CHECK(s.s_total > 1e-6);
    }
  }
  CHECK(sub > 10);
  CHECK(super > 10);
}

TEST_CASE("emergence and size are nondecreasing in each transmissibility") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto d = DegreeDistribution::poisson(4.0);
  for (int draw = 0; draw < 40; ++draw) {
    const auto p = random_params(rng);
    const auto e0 = emergence_probability(d, p);
    const auto s0 = epidemic_size(d, p);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        auto q = p;
        q.T.t[i][j] = std::min(1.0, q.T.t[i][j] + 0.1);
        CHECK(emergence_probability(d, q).emergence_mixed >= e0.emergence_mixed - 1e-7);
        CHECK(epidemic_size(d, q).s_total >= s0.s_total - 1e-7);
      }
    }
  }
}

TEST_CASE("near-threshold solves report diagnostics instead of throwing") {
  const auto d = DegreeDistribution::poisson(5.0);
  const double t_star = 1.0 / (5.0 * 0.6445);
  const auto at = MaskModelParams::factored(0.45, {.baseline = t_star * 1.0002, .inward = 0.3, .outward = 0.7});
  SolverOptions opts;
  opts.max_iter = 20'000;
  const auto e = emergence_probability(d, at, opts);
  CHECK(e.diagnostics.near_threshold);
  CHECK(e.diagnostics.tolerance == opts.critical_tol);
  CHECK(e.emergence_mixed < 1e-2);
  CHECK(e.diagnostics.residual_tail.size() == opts.history);

  const auto far = MaskModelParams::factored(0.45, {.baseline = 0.5, .inward = 0.3, .outward = 0.7});
  opts.max_iter = 2;
  try {
    epidemic_size(d, far, opts);
    FAIL("expected SolverError");
  } catch (const SolverError& err) {
    CHECK_FALSE(err.diagnostics().converged);
    CHECK(err.diagnostics().iterations == 2);
  }
}

TEST_CASE("degenerate inputs") {
  const auto none = DegreeDistribution::poisson(0.0);
  const auto e = emergence_probability(none, kFig1);
  CHECK(e.emergence_mixed == 0.0);
  CHECK(epidemic_size(none, kFig1).s_total == 0.0);
  const auto zero = MaskModelParams::explicit_matrix(0.5, 0, 0, 0, 0);
  CHECK(emergence_probability(DegreeDistribution::poisson(5.0), zero).emergence_mixed == Approx(0.0));
  CHECK(mutation_epidemic_size(DegreeDistribution::poisson(5.0), mutation_map(zero)).total == 0.0);
  CHECK_THROWS_AS(emergence_probability(DegreeDistribution::poisson(5.0),
                                        MaskModelParams::explicit_matrix(1.5, 0, 0, 0, 0)),
                  std::invalid_argument);
}

TEST_CASE("reference curve values") {
  // Critical mean degree for the reference parameters is 1 / rho(T diag(m, 1-m)).
  const double rho = spectral_radius(kFig1.next_generation());
  CHECK(1.0 / rho == Approx(2.5859).epsilon(1e-4));
  const auto ten = predict(DegreeDistribution::poisson(10.0), kFig1);
  CHECK(ten.r0 == Approx(10 * rho));
  CHECK(ten.emergence.emergence_mixed == Approx(0.885).epsilon(2e-3));
  CHECK(ten.size.s_total == Approx(0.9626).epsilon(2e-3));
}
