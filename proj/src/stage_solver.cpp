#include "manakov/stage_solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "manakov/kernels.hpp"

namespace manakov {
namespace {

// Divergence guard: abort once updates exceed this multiple of the initial
// data scale, instead of overflowing to inf.
constexpr double kDivergenceFactor = 1e8;

void check_inputs(const ManakovProblem& problem, const FourierBasis& basis,
                  const Mat& y0, const char* who) {
  if (y0.rows() != static_cast<std::size_t>(2 * problem.n) ||
      y0.cols() != static_cast<std::size_t>(basis.modes))
    throw std::invalid_argument(std::string(who) + ": state shape mismatch");
}

// Y_i = y0 + h sum_l Is(i,l) Gamma_l for all k abscissae, stacked.
void build_stage_states(const Tableau& tab, const Mat& y0, double h,
                        const Mat& G, int n2, Mat& Y) {
  const std::size_t modes = y0.cols();
  Y.resize(static_cast<std::size_t>(tab.k) * n2, modes);
  const auto& ops = kernels::active();
  for (int i = 0; i < tab.k; ++i) {
    double* block = Y.row(static_cast<std::size_t>(i) * n2);
    for (int r = 0; r < n2; ++r)
      for (std::size_t j = 0; j < modes; ++j)
        block[r * modes + j] = y0(r, j);
    for (int l = 0; l < tab.s; ++l) {
      const double w = h * tab.Is(i, l);
      if (w == 0.0) continue;
      const double* gl = G.row(static_cast<std::size_t>(l) * n2);
      ops.axpy(w, gl, block, static_cast<std::size_t>(n2) * modes);
    }
  }
}

// res_j = G_j - sum_i bw_i Ps(i,j) f(Y_i).
void residual_from_stages(const Tableau& tab, const Mat& G, const Mat& F,
                          int n2, Mat& res) {
  const std::size_t modes = G.cols();
  res = G;
  const auto& ops = kernels::active();
  for (int j = 0; j < tab.s; ++j) {
    double* rj = res.row(static_cast<std::size_t>(j) * n2);
    for (int i = 0; i < tab.k; ++i) {
      const double w = -tab.bw[i] * tab.Ps(i, j);
      ops.axpy(w, F.row(static_cast<std::size_t>(i) * n2), rj,
               static_cast<std::size_t>(n2) * modes);
    }
  }
}

void eval_residual(const ManakovProblem& problem, const FourierBasis& basis,
                   const Tableau& tab, const Mat& y0, double h, const Mat& G,
                   Mat& Y, Mat& F, Mat& res) {
  const int n2 = 2 * problem.n;
  build_stage_states(tab, y0, h, G, n2, Y);
  rhs_stacked(problem, basis, Y, tab.k, F);
  residual_from_stages(tab, G, F, n2, res);
}

std::vector<double> block_norms(const Mat& G, int s, int n2) {
  std::vector<double> norms(s, 0.0);
  const std::size_t modes = G.cols();
  for (int j = 0; j < s; ++j) {
    double acc = 0.0;
    const double* block = G.row(static_cast<std::size_t>(j) * n2);
    for (std::size_t t = 0; t < static_cast<std::size_t>(n2) * modes; ++t)
      acc += block[t] * block[t];
    norms[j] = std::sqrt(acc);
  }
  return norms;
}

}  // namespace

double hsmall_bound(const ManakovProblem& problem, const FourierBasis& basis) {
  double beta_max = 0.0;
  for (double b : problem.beta) beta_max = std::max(beta_max, std::fabs(b));
  if (beta_max == 0.0)
    throw std::invalid_argument("hsmall_bound: zero dispersion");
  const double ratio = (basis.b - basis.a) / (2.0 * std::numbers::pi * basis.N);
  return ratio * ratio / beta_max;
}

ThetaOperator build_theta(double h, const Tableau& tab,
                          const ManakovProblem& problem,
                          const FourierBasis& basis) {
  ThetaOperator theta;
  theta.n = problem.n;
  theta.modes = basis.modes;
  theta.h = h;
  theta.rho = tab.rho;
  theta.B.resize(problem.n, basis.modes);
  theta.S.resize(problem.n, basis.modes);
  theta.BS.resize(problem.n, basis.modes);
  for (int c = 0; c < problem.n; ++c)
    for (int j = 0; j < basis.modes; ++j) {
      const double b = h * tab.rho * problem.beta[c] * basis.d2[j];
      theta.B(c, j) = b;
      theta.S(c, j) = 1.0 / (1.0 + b * b);
      theta.BS(c, j) = b / (1.0 + b * b);
    }
  return theta;
}

void apply_theta(const ThetaOperator& theta, Mat& stacked) {
  const int n2 = 2 * theta.n;
  if (stacked.rows() % n2 != 0 ||
      stacked.cols() != static_cast<std::size_t>(theta.modes))
    throw std::invalid_argument("apply_theta: stacked shape mismatch");
  const std::size_t nblocks = stacked.rows() / n2;
  const auto& ops = kernels::active();
  for (std::size_t blk = 0; blk < nblocks; ++blk)
    for (int c = 0; c < theta.n; ++c) {
      double* q = stacked.row(blk * n2 + 2 * c);
      double* p = stacked.row(blk * n2 + 2 * c + 1);
      ops.rot2(q, p, theta.B.row(c), theta.S.row(c), theta.modes);
    }
}

Mat stage_residual(const ManakovProblem& problem, const FourierBasis& basis,
                   const Tableau& tab, const Mat& y0, double h, const Mat& G) {
  check_inputs(problem, basis, y0, "stage_residual");
  const int n2 = 2 * problem.n;
  if (G.rows() != static_cast<std::size_t>(tab.s) * n2 ||
      G.cols() != y0.cols())
    throw std::invalid_argument("stage_residual: stage shape mismatch");
  Mat Y, F, res;
  eval_residual(problem, basis, tab, y0, h, G, Y, F, res);
  return res;
}

std::pair<StageCoefficients, SolverReport> fixed_point_solve(
    const ManakovProblem& problem, const FourierBasis& basis,
    const Tableau& tab, const Mat& y0, double h, double tol, int max_iter) {
  check_inputs(problem, basis, y0, "fixed_point_solve");
  const int n2 = 2 * problem.n;

  StageCoefficients stages;
  stages.s = tab.s;
  stages.n = problem.n;
  stages.G.resize(static_cast<std::size_t>(tab.s) * n2, y0.cols());

  SolverReport report;
  const double guard = kDivergenceFactor * (1.0 + maxabs(y0));
  static thread_local Mat Y, F, res;
  for (int iter = 1; iter <= max_iter; ++iter) {
    eval_residual(problem, basis, tab, y0, h, stages.G, Y, F, res);
    // Fixed-point update Gamma <- Gamma - res (the update IS the residual).
    const double delta = maxabs(res);
    for (std::size_t t = 0; t < res.size(); ++t)
      stages.G.data()[t] -= res.data()[t];
    report.iterations = iter;
    report.final_residual = delta;
    if (delta <= tol * (1.0 + maxabs(stages.G))) {
      report.converged = true;
      break;
    }
    if (!(delta < guard)) break;  // diverging (or NaN): give up
  }
  report.gamma_block_norms = block_norms(stages.G, tab.s, n2);
  return {std::move(stages), report};
}

std::pair<StageCoefficients, SolverReport> blended_solve(
    const Mat& y0, double h, const Tableau& tab, const ThetaOperator& theta,
    const ManakovProblem& problem, const FourierBasis& basis, double tol,
    int max_iter, const Mat* warm) {
  check_inputs(problem, basis, y0, "blended_solve");
  const int n2 = 2 * problem.n;
  const std::size_t modes = y0.cols();
  const std::size_t block_len = static_cast<std::size_t>(n2) * modes;

  StageCoefficients stages;
  stages.s = tab.s;
  stages.n = problem.n;
  if (warm != nullptr) {
    if (warm->rows() != static_cast<std::size_t>(tab.s) * n2 ||
        warm->cols() != modes)
      throw std::invalid_argument("blended_solve: warm-start shape mismatch");
    stages.G = *warm;
  } else {
    stages.G.resize(static_cast<std::size_t>(tab.s) * n2, modes);
  }

  SolverReport report;
  const double guard = kDivergenceFactor * (1.0 + maxabs(y0));
  const auto& ops = kernels::active();
  static thread_local Mat Y, F, res, eta1, delta;
  eta1.resize(stages.G.rows(), modes);
  delta.resize(stages.G.rows(), modes);

  for (int iter = 1; iter <= max_iter; ++iter) {
    eval_residual(problem, basis, tab, y0, h, stages.G, Y, F, res);
    const double resmax = maxabs(res);

    // eta = -res; eta1 = rho (Xs^{-1} (x) I) eta.
    eta1.fill(0.0);
    for (int j = 0; j < tab.s; ++j) {
      double* tj = eta1.row(static_cast<std::size_t>(j) * n2);
      for (int l = 0; l < tab.s; ++l) {
        const double w = -tab.rho * tab.XsInv(j, l);
        if (w == 0.0) continue;
        ops.axpy(w, res.row(static_cast<std::size_t>(l) * n2), tj, block_len);
      }
    }

    // delta = theta [ eta1 + theta (eta - eta1) ].
    for (std::size_t t = 0; t < delta.size(); ++t)
      delta.data()[t] = -res.data()[t] - eta1.data()[t];
    apply_theta(theta, delta);
    for (std::size_t t = 0; t < delta.size(); ++t)
      delta.data()[t] += eta1.data()[t];
    apply_theta(theta, delta);

    const double delmax = maxabs(delta);
    for (std::size_t t = 0; t < delta.size(); ++t)
      stages.G.data()[t] += delta.data()[t];

    report.iterations = iter;
    report.final_residual = resmax;
    const double scale = tol * (1.0 + maxabs(stages.G));
    if (delmax <= scale && resmax <= scale) {
      report.converged = true;
      break;
    }
    if (!(delmax < guard)) break;  // diverging (or NaN): give up
  }
  report.gamma_block_norms = block_norms(stages.G, tab.s, n2);
  return {std::move(stages), report};
}

Mat advance(const Mat& y0, double h, const Tableau& tab,
            const StageCoefficients& stages) {
  const int n2 = 2 * stages.n;
  if (stages.G.rows() != static_cast<std::size_t>(tab.s) * n2 ||
      stages.G.cols() != y0.cols())
    throw std::invalid_argument("advance: stage shape mismatch");
  // The expansion y(c) = y0 + h sum_j I_j(c) Gamma_j at c = 1 collapses to
  // y0 + h Gamma_0, because every primitive I_j with j >= 1 vanishes at 1.
  Mat y1 = y0;
  const double* g0 = stages.G.row(0);
  for (std::size_t r = 0; r < y0.rows(); ++r)
    for (std::size_t j = 0; j < y0.cols(); ++j)
      y1(r, j) += h * g0[r * y0.cols() + j];
  return y1;
}

}  // namespace manakov
