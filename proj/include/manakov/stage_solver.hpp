#pragma once

#include <utility>
#include <vector>

#include "manakov/fourier.hpp"
#include "manakov/mat.hpp"
#include "manakov/system.hpp"
#include "manakov/tableau.hpp"

namespace manakov {

// Coefficients Gamma_0..Gamma_{s-1} of the polynomial stage expansion,
// stacked vertically: block j (rows j*2n .. j*2n+2n-1) holds Gamma_j, one
// column per basis mode.  The step advances with y1 = y0 + h*Gamma_0.
struct StageCoefficients {
  int s = 0;
  int n = 0;
  Mat G;  // (s*2n) x modes
};

// Diagonal preconditioner of the blended iteration.  For component i and
// mode j let b = h*rho*beta_i*d_j^2; then theta acts on each (q, p) row
// pair as the 2x2 map [[1, b], [-b, 1]] / (1 + b^2), i.e. the exact inverse
// of I - h*rho*(linear part).  Stored per component: B(i, j) = b,
// S(i, j) = 1/(1+b^2), BS = B o S.
struct ThetaOperator {
  int n = 0;
  int modes = 0;
  double h = 0.0;
  double rho = 0.0;
  Mat B, S, BS;
};

struct SolverReport {
  int iterations = 0;
  double final_residual = 0.0;  // max-abs residual at the last evaluated iterate
  bool converged = false;
  std::vector<double> gamma_block_norms;  // Frobenius norm per stage block
};

// Step-size bound below which the plain fixed-point iteration contracts:
//   h < ((b-a) / (2 pi N))^2 / max_i |beta_i|.
// The square of the spectral derivative has 2-norm ((2 pi N)/(b-a))^2, and
// the stage-coupling matrix has 2-norm < 1, so the product of the three
// factors stays below one for such h.
double hsmall_bound(const ManakovProblem& problem, const FourierBasis& basis);

ThetaOperator build_theta(double h, const Tableau& tableau,
                          const ManakovProblem& problem,
                          const FourierBasis& basis);

// Apply theta in place to every stage block of a stacked matrix (any row
// count that is a multiple of 2n).
void apply_theta(const ThetaOperator& theta, Mat& stacked);

// Residual of the stage equations at Gamma = G:
//   res_j = Gamma_j - sum_i bw_i P_j(c_i) f(Y_i),
//   Y_i   = y0 + h sum_l I_l(c_i) Gamma_l.
Mat stage_residual(const ManakovProblem& problem, const FourierBasis& basis,
                   const Tableau& tableau, const Mat& y0, double h,
                   const Mat& G);

// Plain fixed-point iteration on the stage equations, started at Gamma = 0.
// Stops when the max-abs update falls below tol * (1 + maxabs(Gamma)).
std::pair<StageCoefficients, SolverReport> fixed_point_solve(
    const ManakovProblem& problem, const FourierBasis& basis,
    const Tableau& tableau, const Mat& y0, double h, double tol, int max_iter);

// Blended iteration: with f the stage residual and eta = -f,
//   eta1  = rho * (Xs^{-1} (x) I) eta      (stage-block mixing)
//   delta = theta [ eta1 + theta (eta - eta1) ]
//   Gamma <- Gamma + delta,
// stopping like the fixed-point solver (update and residual both small).
// `warm` optionally seeds Gamma (default: zero start).
std::pair<StageCoefficients, SolverReport> blended_solve(
    const Mat& y0, double h, const Tableau& tableau, const ThetaOperator& theta,
    const ManakovProblem& problem, const FourierBasis& basis, double tol,
    int max_iter, const Mat* warm = nullptr);

// New state after one step of size h: y0 + h * Gamma_0.
Mat advance(const Mat& y0, double h, const Tableau& tableau,
            const StageCoefficients& stages);

}  // namespace manakov
