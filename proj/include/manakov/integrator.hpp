#pragma once

#include <string>
#include <vector>

#include "manakov/fourier.hpp"
#include "manakov/mat.hpp"
#include "manakov/stage_solver.hpp"
#include "manakov/system.hpp"
#include "manakov/tableau.hpp"

namespace manakov {

enum class StageSolverKind { blended, fixed_point };

struct IntegrationConfig {
  double h = 0.1;
  long steps = 0;          // must satisfy steps * h == problem.T (1e-12 rel)
  int record_every = 1;    // stride for times/states sampling
  StageSolverKind solver = StageSolverKind::blended;
  double tol = 1e-13;
  int max_iter = 100;
  bool store_states = false;
  bool warm_start = false;  // seed each step with the previous stages
  bool spectral_check = false;           // log stage decay ratios
  double tol_rank = 1.4901161193847656e-08;  // sqrt(machine epsilon)
};

struct InvariantSample {
  double t = 0.0;
  std::vector<double> Mi;
  double M = 0.0, K = 0.0, H = 0.0;
};

struct SolverStats {
  long steps = 0;
  long total_iterations = 0;
  double max_residual = 0.0;
  bool all_converged = true;
  long failed_step = -1;  // first non-converged step (or -1)
  long rank_flags = 0;    // steps whose decay ratio exceeded tol_rank
  double max_rank_ratio = 0.0;
};

struct Trajectory {
  std::vector<double> times;          // recorded sample times (incl. t = 0)
  std::vector<Mat> states;            // one per time, iff store_states
  std::vector<InvariantSample> invariant_log;  // every step, incl. t = 0
  std::vector<double> rank_ratios;    // per step, iff spectral_check
  SolverStats stats;
};

// March the semi-discrete system from y0 over steps * h.  Invariants are
// logged at every step; states only at the record stride.  On a solver
// failure the trajectory is returned as computed so far with
// stats.all_converged = false.
Trajectory integrate(const ManakovProblem& problem, const FourierBasis& basis,
                     const Tableau& tableau, const SpectralState& y0,
                     const IntegrationConfig& config);

// Time-reversal probe: one step +h from y0, then one step -h from the
// result; returns the max-abs defect against y0.  Symmetric methods return
// solver-tolerance-sized values.
double symmetry_probe(const ManakovProblem& problem, const FourierBasis& basis,
                      const Tableau& tableau, const Mat& y0, double h,
                      double tol, int max_iter);

struct MethodSpec {
  int k = 0, s = 0;
};

// Reference run used to measure time-discretization errors.
struct ReferenceSpec {
  int k = 20, s = 10;
  double h = 0.0;  // <= 0: min(h_list)/4
  double tol = 1e-13;
  int max_iter = 200;
};

struct ConvergenceRow {
  std::string method;
  double h = 0.0;
  double e_y = 0.0;
  double rate = 0.0;  // NaN on the first rung of each ladder
};

// Time-convergence study: integrate every (method, h) pair to T, measure
// e_y = max over shared sample times of the max-abs coefficient difference
// against the reference run, and report successive log2 ratios.  Sample
// times are the multiples of max(h_list), which every h (and reference.h)
// must divide.
std::vector<ConvergenceRow> convergence_study(
    const ManakovProblem& problem, const FourierBasis& basis,
    const std::vector<MethodSpec>& methods, const std::vector<double>& h_list,
    const ReferenceSpec& reference, double tol = 1e-13, int max_iter = 100);

// Spectral-in-time run: HBVM(max(20, s+2), s) with stage-decay logging on.
Trajectory spectral_time_run(const ManakovProblem& problem,
                             const FourierBasis& basis, int s,
                             const IntegrationConfig& config);

}  // namespace manakov
