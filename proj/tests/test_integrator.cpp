// Time marching: conservation splits between method families, observed
// convergence orders on a small problem, recording/stride bookkeeping, the
// failure path, time-reversal symmetry, and the convergence-study driver.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "manakov/integrator.hpp"
#include "manakov/problems.hpp"
#include "support/oracles.hpp"

using namespace manakov;
using test_support::toy_problem;

namespace {

// Small, fast configuration shared by most cases: the first benchmark
// problem truncated to T = 2 on a coarse basis.
ManakovProblem short_problem(double T = 2.0) {
  ManakovProblem p = problem_manakov1();
  p.T = T;
  return p;
}

double max_drift(const std::vector<InvariantSample>& log,
                 double InvariantSample::*field) {
  double worst = 0.0;
  for (const auto& s : log)
    worst = std::max(worst, std::fabs(s.*field - log.front().*field));
  return worst;
}

}  // namespace

TEST_CASE("config validation") {
  const ManakovProblem p = short_problem();
  const FourierBasis basis = build_basis(8, p.a, p.b);
  const Tableau tab = build_tableau(2, 1);
  const SpectralState y0 = initial_state(p, basis);

  IntegrationConfig cfg;
  cfg.h = 0.3;  // 0.3 * steps never hits T = 2
  cfg.steps = 7;
  CHECK_THROWS_AS(integrate(p, basis, tab, y0, cfg), std::invalid_argument);
  cfg.steps = 0;
  CHECK_THROWS_AS(integrate(p, basis, tab, y0, cfg), std::invalid_argument);
  cfg.h = 0.25;
  cfg.steps = 8;
  cfg.record_every = 0;
  CHECK_THROWS_AS(integrate(p, basis, tab, y0, cfg), std::invalid_argument);
}

TEST_CASE("bookkeeping: logs, strides, recorded times") {
  const ManakovProblem p = short_problem();
  const FourierBasis basis = build_basis(8, p.a, p.b);
  const Tableau tab = build_tableau(2, 1);
  const SpectralState y0 = initial_state(p, basis);

  IntegrationConfig cfg;
  cfg.h = 0.1;
  cfg.steps = 20;
  cfg.record_every = 6;  // does not divide 20: final state still recorded
  cfg.store_states = true;
  const Trajectory traj = integrate(p, basis, tab, y0, cfg);

  CHECK(traj.stats.steps == 20);
  CHECK(traj.stats.all_converged);
  REQUIRE(traj.invariant_log.size() == 21);  // every step plus t = 0
  CHECK(traj.invariant_log.front().t == 0.0);
  CHECK(traj.invariant_log.back().t == doctest::Approx(2.0).epsilon(1e-14));

  // recorded samples: steps 0, 6, 12, 18, 20
  REQUIRE(traj.times.size() == 5);
  REQUIRE(traj.states.size() == 5);
  CHECK(traj.times[0] == 0.0);
  CHECK(traj.times[1] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(traj.times[4] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(maxabs_diff(traj.states[0], y0.y) == 0.0);

  // no states kept unless asked
  cfg.store_states = false;
  const Trajectory lean = integrate(p, basis, tab, y0, cfg);
  CHECK(lean.states.empty());
  CHECK(lean.times.size() == 5);
}

TEST_CASE("conservation split between Gauss and HBVM") {
  const ManakovProblem p = short_problem();
  const FourierBasis basis = build_basis(8, p.a, p.b);
  const SpectralState y0 = initial_state(p, basis);

  IntegrationConfig cfg;
  cfg.h = 0.1;
  cfg.steps = 20;
  cfg.tol = 1e-14;

  // Gauss (k = s = 1): symplectic, so quadratic M and K are conserved while
  // the quartic H drifts at O(h^2).
  const Trajectory gauss = integrate(p, basis, build_tableau(1, 1), y0, cfg);
  CHECK(gauss.stats.all_converged);
  CHECK(max_drift(gauss.invariant_log, &InvariantSample::M) <= 1e-12);
  CHECK(max_drift(gauss.invariant_log, &InvariantSample::K) <= 1e-12);
  CHECK(max_drift(gauss.invariant_log, &InvariantSample::H) >= 1e-10);

  // HBVM(4,2): 2k/s = 4 covers the quartic, so H is conserved to tolerance.
  const Trajectory hbvm = integrate(p, basis, build_tableau(4, 2), y0, cfg);
  CHECK(hbvm.stats.all_converged);
  CHECK(max_drift(hbvm.invariant_log, &InvariantSample::H) <= 1e-12);
}

TEST_CASE("solver failure is reported, not hidden") {
  const ManakovProblem p = short_problem();
  const FourierBasis basis = build_basis(8, p.a, p.b);
  const SpectralState y0 = initial_state(p, basis);

  IntegrationConfig cfg;
  cfg.h = 0.1;
  cfg.steps = 20;
  cfg.max_iter = 1;  // cannot converge in one sweep
  const Trajectory traj = integrate(p, basis, build_tableau(2, 1), y0, cfg);
  CHECK_FALSE(traj.stats.all_converged);
  CHECK(traj.stats.failed_step == 1);
  CHECK(traj.invariant_log.size() <= 2);
}

TEST_CASE("warm start reduces total iterations") {
  const ManakovProblem p = short_problem();
  const FourierBasis basis = build_basis(8, p.a, p.b);
  const SpectralState y0 = initial_state(p, basis);

  IntegrationConfig cfg;
  cfg.h = 0.1;
  cfg.steps = 20;
  const Trajectory cold = integrate(p, basis, build_tableau(4, 2), y0, cfg);
  cfg.warm_start = true;
  const Trajectory warm = integrate(p, basis, build_tableau(4, 2), y0, cfg);
  REQUIRE(cold.stats.all_converged);
  REQUIRE(warm.stats.all_converged);
  CHECK(warm.stats.total_iterations <= cold.stats.total_iterations);
}

TEST_CASE("fixed-point and blended solvers agree on small steps") {
  const ManakovProblem p = short_problem(0.5);
  const FourierBasis basis = build_basis(6, p.a, p.b);
  const SpectralState y0 = initial_state(p, basis);

  IntegrationConfig cfg;
  cfg.h = 0.025;  // well under the contraction bound for N = 6
  cfg.steps = 20;
  cfg.tol = 1e-14;
  cfg.store_states = true;
  const Trajectory bl = integrate(p, basis, build_tableau(4, 2), y0, cfg);
  cfg.solver = StageSolverKind::fixed_point;
  const Trajectory fp = integrate(p, basis, build_tableau(4, 2), y0, cfg);
  REQUIRE(bl.stats.all_converged);
  REQUIRE(fp.stats.all_converged);
  CHECK(maxabs_diff(bl.states.back(), fp.states.back()) <= 1e-11);
}

TEST_CASE("time-reversal probe is tolerance-sized for symmetric methods") {
  const ManakovProblem p = toy_problem();
  const FourierBasis basis = build_basis(6, p.a, p.b);
  const Mat y0 = initial_state(p, basis).y;
  for (auto [k, s] : {std::pair{2, 1}, std::pair{4, 2}}) {
    const Tableau tab = build_tableau(k, s);
    CHECK(symmetry_probe(p, basis, tab, y0, 0.1, 1e-13, 200) <= 1e-11);
  }
}

TEST_CASE("convergence study reproduces the design orders") {
  ManakovProblem p = short_problem(4.0);
  const FourierBasis basis = build_basis(8, p.a, p.b);

  const std::vector<MethodSpec> methods = {{2, 1}, {4, 2}};
  const std::vector<double> h_list = {0.4, 0.2, 0.1};
  ReferenceSpec ref;  // (20,10), h = min/4 = 0.025 by default
  ref.tol = 1e-14;
  const auto rows =
      convergence_study(p, basis, methods, h_list, ref, 1e-14, 200);
  REQUIRE(rows.size() == 6);

  CHECK(rows[0].method == "HBVM(2,1)");
  CHECK(rows[3].method == "HBVM(4,2)");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].h == doctest::Approx(h_list[i % 3]).epsilon(1e-15));
    CHECK(rows[i].e_y > 0.0);
    if (i % 3 == 0)
      CHECK(std::isnan(rows[i].rate));
    else
      CHECK(std::isfinite(rows[i].rate));
  }
  // errors fall and the observed orders straddle 2 and 4
  CHECK(rows[1].e_y < rows[0].e_y);
  CHECK(rows[2].e_y < rows[1].e_y);
  CHECK(rows[2].rate == doctest::Approx(2.0).epsilon(0.15));
  CHECK(rows[5].rate == doctest::Approx(4.0).epsilon(0.15));

  // sample-time grid mismatch is rejected
  const std::vector<double> bad = {0.4, 0.3};
  CHECK_THROWS_AS(convergence_study(p, basis, methods, bad, ref),
                  std::logic_error);
}

TEST_CASE("spectral-in-time run logs stage decay") {
  ManakovProblem p = short_problem(1.0);
  const FourierBasis basis = build_basis(8, p.a, p.b);

  IntegrationConfig cfg;
  cfg.h = 0.5;
  cfg.steps = 2;
  cfg.tol = 1e-13;
  const Trajectory traj = spectral_time_run(p, basis, 8, cfg);
  CHECK(traj.stats.all_converged);
  REQUIRE(traj.rank_ratios.size() == 2);
  for (double r : traj.rank_ratios) {
    CHECK(r >= 0.0);
    CHECK(r == traj.rank_ratios.front());  // deterministic, but mostly:
    break;
  }
  // with s = 8 stages on a smooth solution the last mode is tiny
  CHECK(traj.stats.max_rank_ratio <= 1e-4);
  CHECK(traj.stats.rank_flags == 0);
}
