#include "support/oracles.hpp"

#include <lapacke.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace test_support {

using manakov::hamiltonian;

Mat random_mat(std::size_t rows, std::size_t cols, unsigned seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-scale, scale);
  Mat m(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  return m;
}

ManakovProblem toy_problem() {
  ManakovProblem p;
  p.name = "toy";
  p.n = 2;
  p.beta = {0.7, 1.3};
  p.gamma.resize(2, 2);
  p.gamma(0, 0) = 1.0;
  p.gamma(0, 1) = 0.4;
  p.gamma(1, 0) = 0.4;
  p.gamma(1, 1) = 0.9;
  p.a = -1.0;
  p.b = 2.0;
  p.T = 1.0;
  p.psi0 = [](double x) {
    const double th = 2.0 * std::numbers::pi * (x + 1.0) / 3.0;
    const double amp = 0.3 + 0.2 * std::cos(th);
    const double ph = 0.4 * std::sin(th);
    return std::vector<std::complex<double>>{
        {amp * std::cos(ph), amp * std::sin(ph)},
        {0.25 * std::sin(th), 0.1 * std::cos(2.0 * th)},
    };
  };
  return p;
}

ManakovProblem linear_problem() {
  ManakovProblem p;
  p.name = "linear";
  p.n = 1;
  p.beta = {1.0};
  p.gamma.resize(1, 1);
  p.gamma(0, 0) = 0.0;
  p.a = 0.0;
  p.b = 2.0 * std::numbers::pi;
  p.T = 1.0;
  p.psi0 = [](double x) {
    return std::vector<std::complex<double>>{
        {0.4 * std::cos(x), 0.3 * std::sin(x)}};
  };
  return p;
}

Mat dense_linear_part(const ManakovProblem& problem, const FourierBasis& basis) {
  const std::size_t modes = static_cast<std::size_t>(basis.modes);
  const std::size_t D = 2 * problem.n * modes;
  Mat L(D, D);
  for (int c = 0; c < problem.n; ++c) {
    for (std::size_t j = 0; j < modes; ++j) {
      const double w = problem.beta[c] * basis.d2[j];
      L((2 * c) * modes + j, (2 * c + 1) * modes + j) = w;
      L((2 * c + 1) * modes + j, (2 * c) * modes + j) = -w;
    }
  }
  return L;
}

namespace {

// In-place dense solve A X = B (B overwritten with the solution).
void dense_solve(Mat& A, Mat& B) {
  const lapack_int n = static_cast<lapack_int>(A.rows());
  const lapack_int nrhs = static_cast<lapack_int>(B.cols());
  std::vector<lapack_int> ipiv(n);
  const lapack_int info = LAPACKE_dgesv(LAPACK_ROW_MAJOR, n, nrhs, A.data(), n,
                                        ipiv.data(), B.data(), nrhs);
  if (info != 0) throw std::runtime_error("oracle: dgesv failed");
}

}  // namespace

Mat dense_theta(double h, double rho, const ManakovProblem& problem,
                const FourierBasis& basis) {
  const Mat L = dense_linear_part(problem, basis);
  const std::size_t D = L.rows();
  Mat M(D, D);
  Mat I(D, D);
  for (std::size_t i = 0; i < D; ++i) {
    I(i, i) = 1.0;
    for (std::size_t j = 0; j < D; ++j)
      M(i, j) = (i == j ? 1.0 : 0.0) - h * rho * L(i, j);
  }
  dense_solve(M, I);
  return I;
}

Mat dense_linear_stages(const ManakovProblem& problem,
                        const FourierBasis& basis, const Tableau& tableau,
                        const Mat& y0, double h) {
  const Mat L = dense_linear_part(problem, basis);
  const std::size_t D = L.rows();
  const std::size_t s = static_cast<std::size_t>(tableau.s);
  const std::size_t S = s * D;

  Mat big(S, S);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t l = 0; l < s; ++l)
      for (std::size_t al = 0; al < D; ++al)
        for (std::size_t be = 0; be < D; ++be)
          big(j * D + al, l * D + be) =
              (j == l && al == be ? 1.0 : 0.0) - h * tableau.Xs(j, l) * L(al, be);

  std::vector<double> y0flat(y0.data(), y0.data() + y0.size());
  const std::vector<double> Ly0 = matvec(L, y0flat);
  Mat rhs(S, 1);
  for (std::size_t al = 0; al < D; ++al) rhs(al, 0) = Ly0[al];

  dense_solve(big, rhs);

  const std::size_t modes = y0.cols();
  Mat G(s * y0.rows(), modes);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t r = 0; r < y0.rows(); ++r)
      for (std::size_t col = 0; col < modes; ++col)
        G(j * y0.rows() + r, col) = rhs(j * D + r * modes + col, 0);
  return G;
}

Mat fd_hamiltonian_gradient(const ManakovProblem& problem,
                            const FourierBasis& basis, const Mat& y) {
  const double cbrt_eps = std::cbrt(2.220446049250313e-16);
  Mat grad(y.rows(), y.cols());
  Mat work = y;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double v = y.data()[i];
    const double delta = cbrt_eps * (1.0 + std::fabs(v));
    work.data()[i] = v + delta;
    const double hp = hamiltonian(problem, basis, work);
    work.data()[i] = v - delta;
    const double hm = hamiltonian(problem, basis, work);
    work.data()[i] = v;
    grad.data()[i] = (hp - hm) / (2.0 * delta);
  }
  return grad;
}

double mass_oracle(const FourierBasis& basis, const Mat& y, int comp) {
  const Mat U = synthesize(basis, y, basis.nodes);
  double acc = 0.0;
  for (int i = 0; i < basis.m; ++i) {
    const double u = U(2 * comp, i), v = U(2 * comp + 1, i);
    acc += u * u + v * v;
  }
  return basis.wq * acc;
}

double momentum_oracle(const FourierBasis& basis, const Mat& y) {
  const Mat dy = derivative_coeffs(basis, y);
  const Mat U = synthesize(basis, y, basis.nodes);
  const Mat dU = synthesize(basis, dy, basis.nodes);
  const int ncomp = static_cast<int>(y.rows()) / 2;
  double acc = 0.0;
  for (int c = 0; c < ncomp; ++c)
    for (int i = 0; i < basis.m; ++i)
      acc += dU(2 * c, i) * U(2 * c + 1, i) - dU(2 * c + 1, i) * U(2 * c, i);
  return basis.wq * acc;
}

std::vector<double> matvec(const Mat& A, const std::vector<double>& x) {
  if (A.cols() != x.size()) throw std::invalid_argument("matvec: size mismatch");
  std::vector<double> y(A.rows(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < A.cols(); ++j) acc += A(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

}  // namespace test_support
