#include "manakov/integrator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace manakov {
namespace {

void check_config(const ManakovProblem& problem, const IntegrationConfig& cfg) {
  if (!(cfg.h > 0.0)) throw std::invalid_argument("integrate: h must be positive");
  if (cfg.steps < 0) throw std::invalid_argument("integrate: negative step count");
  if (cfg.record_every < 1)
    throw std::invalid_argument("integrate: record_every must be >= 1");
  const double span = cfg.steps * cfg.h;
  if (std::fabs(span - problem.T) > 1e-12 * std::max(1.0, std::fabs(problem.T)))
    throw std::invalid_argument("integrate: steps*h does not match the horizon T");
}

long stride_for(double coarse, double fine) {
  const double ratio = coarse / fine;
  const long stride = std::lround(ratio);
  if (stride < 1 || std::fabs(ratio - stride) > 1e-9)
    throw std::invalid_argument("convergence_study: incompatible step sizes");
  return stride;
}

}  // namespace

Trajectory integrate(const ManakovProblem& problem, const FourierBasis& basis,
                     const Tableau& tableau, const SpectralState& y0,
                     const IntegrationConfig& cfg) {
  check_config(problem, cfg);
  Trajectory traj;
  traj.stats.steps = cfg.steps;

  Mat y = y0.y;
  const ThetaOperator theta = build_theta(cfg.h, tableau, problem, basis);

  auto record_invariants = [&](double t, const Mat& state) {
    const Invariants inv = invariants(problem, basis, state);
    traj.invariant_log.push_back({t, inv.Mi, inv.M, inv.K, inv.H});
  };
  auto record_state = [&](double t, const Mat& state) {
    traj.times.push_back(t);
    if (cfg.store_states) traj.states.push_back(state);
  };

  record_invariants(0.0, y);
  record_state(0.0, y);

  Mat warm;
  bool have_warm = false;
  for (long step = 1; step <= cfg.steps; ++step) {
    StageCoefficients stages;
    SolverReport report;
    if (cfg.solver == StageSolverKind::blended) {
      std::tie(stages, report) =
          blended_solve(y, cfg.h, tableau, theta, problem, basis, cfg.tol,
                        cfg.max_iter, (cfg.warm_start && have_warm) ? &warm : nullptr);
    } else {
      std::tie(stages, report) = fixed_point_solve(problem, basis, tableau, y,
                                                   cfg.h, cfg.tol, cfg.max_iter);
    }

    traj.stats.total_iterations += report.iterations;
    traj.stats.max_residual = std::max(traj.stats.max_residual, report.final_residual);

    if (cfg.spectral_check) {
      double top = 0.0;
      for (double norm : report.gamma_block_norms) top = std::max(top, norm);
      const double ratio =
          (top > 0.0) ? report.gamma_block_norms.back() / top : 0.0;
      traj.rank_ratios.push_back(ratio);
      traj.stats.max_rank_ratio = std::max(traj.stats.max_rank_ratio, ratio);
      if (ratio > cfg.tol_rank) ++traj.stats.rank_flags;
    }

    if (!report.converged) {
      traj.stats.all_converged = false;
      traj.stats.failed_step = step;
      return traj;
    }

    y = advance(y, cfg.h, tableau, stages);
    if (cfg.warm_start) {
      warm = stages.G;
      have_warm = true;
    }

    const double t = step * cfg.h;
    record_invariants(t, y);
    if (step % cfg.record_every == 0 || step == cfg.steps) record_state(t, y);
  }
  return traj;
}

double symmetry_probe(const ManakovProblem& problem, const FourierBasis& basis,
                      const Tableau& tableau, const Mat& y0, double h,
                      double tol, int max_iter) {
  const ThetaOperator fwd = build_theta(h, tableau, problem, basis);
  auto [stages_fwd, rep_fwd] =
      blended_solve(y0, h, tableau, fwd, problem, basis, tol, max_iter);
  if (!rep_fwd.converged)
    throw std::runtime_error("symmetry_probe: forward step did not converge");
  const Mat y1 = advance(y0, h, tableau, stages_fwd);

  const ThetaOperator bwd = build_theta(-h, tableau, problem, basis);
  auto [stages_bwd, rep_bwd] =
      blended_solve(y1, -h, tableau, bwd, problem, basis, tol, max_iter);
  if (!rep_bwd.converged)
    throw std::runtime_error("symmetry_probe: backward step did not converge");
  const Mat y2 = advance(y1, -h, tableau, stages_bwd);

  return maxabs_diff(y2, y0);
}

std::vector<ConvergenceRow> convergence_study(
    const ManakovProblem& problem, const FourierBasis& basis,
    const std::vector<MethodSpec>& methods, const std::vector<double>& h_list,
    const ReferenceSpec& reference, double tol, int max_iter) {
  if (h_list.empty())
    throw std::invalid_argument("convergence_study: empty step-size ladder");
  double t_cmp = 0.0;
  double h_min = h_list.front();
  for (double h : h_list) {
    t_cmp = std::max(t_cmp, h);
    h_min = std::min(h_min, h);
  }

  const SpectralState y0 = initial_state(problem, basis);

  auto run = [&](int k, int s, double h, double run_tol,
                 int run_max_iter) -> Trajectory {
    const Tableau tab = build_tableau(k, s);
    IntegrationConfig cfg;
    cfg.h = h;
    cfg.steps = std::lround(problem.T / h);
    cfg.record_every = static_cast<int>(stride_for(t_cmp, h));
    cfg.tol = run_tol;
    cfg.max_iter = run_max_iter;
    cfg.store_states = true;
    Trajectory traj = integrate(problem, basis, tab, y0, cfg);
    if (!traj.stats.all_converged)
      throw std::runtime_error("convergence_study: stage solver failed at h=" +
                               std::to_string(h));
    return traj;
  };

  double ref_h = reference.h;
  if (!(ref_h > 0.0)) ref_h = h_min / 4.0;
  const Trajectory ref =
      run(reference.k, reference.s, ref_h, reference.tol, reference.max_iter);

  std::vector<ConvergenceRow> rows;
  for (const MethodSpec& method : methods) {
    double prev = 0.0;
    bool first = true;
    for (double h : h_list) {
      const Trajectory traj = run(method.k, method.s, h, tol, max_iter);
      if (traj.states.size() != ref.states.size())
        throw std::logic_error("convergence_study: sample grids disagree");
      double e_y = 0.0;
      for (std::size_t i = 0; i < traj.states.size(); ++i)
        e_y = std::max(e_y, solution_error(traj.states[i], ref.states[i]));

      ConvergenceRow row;
      row.method = "HBVM(" + std::to_string(method.k) + "," +
                   std::to_string(method.s) + ")";
      row.h = h;
      row.e_y = e_y;
      row.rate = (first || prev <= 0.0 || e_y <= 0.0)
                     ? std::numeric_limits<double>::quiet_NaN()
                     : std::log2(prev / e_y);
      rows.push_back(row);
      prev = e_y;
      first = false;
    }
  }
  return rows;
}

Trajectory spectral_time_run(const ManakovProblem& problem,
                             const FourierBasis& basis, int s,
                             const IntegrationConfig& config) {
  const int k = std::max(20, s + 2);
  const Tableau tab = build_tableau(k, s);
  IntegrationConfig cfg = config;
  cfg.spectral_check = true;
  const SpectralState y0 = initial_state(problem, basis);
  return integrate(problem, basis, tab, y0, cfg);
}

}  // namespace manakov
