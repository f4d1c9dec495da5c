// Report emission for benchmark runs: CSV tables, JSON summaries and
// gnuplot-ready field grids.  Every numeric cell is printed with a fixed
// scientific format so that identical configurations produce byte-identical
// files on a given platform.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "manakov/integrator.hpp"

namespace manakov {

// Raised on any filesystem problem (unwritable directory, failed flush).
// Callers translate it into the I/O-failure exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// %.9e rendering used for every floating-point cell.
std::string format_sci(double x);

// Creates `dir` (and parents) if missing.
void ensure_output_dir(const std::string& dir);

// Writes `content` verbatim; used for JSON summaries.
void write_text_file(const std::string& path, const std::string& content);

// invariants.csv with header t,M1..Mn,M,K,H,eH,eK,eM,e1..en.  The error
// columns are absolute deviations from the first logged sample.  `stride`
// thins the per-step log; the first and last samples are always written.
void write_invariants_csv(const std::string& path,
                          const std::vector<InvariantSample>& log,
                          int stride = 1);

// converge.csv with header method,h,e_y,rate.  A non-finite rate renders as
// an empty cell (first rung of a ladder, or a single-h run).
void write_converge_csv(const std::string& path,
                        const std::vector<ConvergenceRow>& rows);

struct SpaceRow {
  std::string method;
  double h = 0.0;
  int N = 0;
  double e_y = 0.0;
};

// space.csv with header method,h,N,e_y.
void write_space_csv(const std::string& path, const std::vector<SpaceRow>& rows);

// rank.csv with header step,t,ratio; one row per time step.
void write_rank_csv(const std::string& path, const std::vector<double>& times,
                    const std::vector<double>& ratios);

// |psi_c|^2 sampled on a uniform (x, t) lattice, one whitespace block per
// recorded time ("x t value" rows, blank line between blocks) so gnuplot's
// splot can consume the files directly.  Emits fields_psi<c>.dat for each
// component plus fields_total.dat.  The stored trajectory states are thinned
// evenly to at most `nt` blocks.
void write_field_grids(const std::string& dir, const ManakovProblem& problem,
                       const FourierBasis& basis, const Trajectory& traj,
                       int nx, int nt, double xmin, double xmax);

}  // namespace manakov
