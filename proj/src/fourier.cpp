#include "manakov/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "manakov/kernels.hpp"

namespace manakov {

FourierBasis build_basis(int N, double a, double b, int oversample) {
  if (N < 1) throw std::invalid_argument("build_basis: N must be >= 1");
  if (!(b > a)) throw std::invalid_argument("build_basis: requires b > a");
  if (oversample < 1) throw std::invalid_argument("build_basis: oversample must be >= 1");

  FourierBasis basis;
  basis.N = N;
  basis.a = a;
  basis.b = b;
  basis.modes = 2 * N + 1;
  basis.m = 4 * N * oversample + 1;
  const double L = b - a;
  basis.wq = L / basis.m;

  basis.nodes.resize(basis.m);
  for (int i = 0; i < basis.m; ++i) basis.nodes[i] = a + i * L / basis.m;

  basis.dj.assign(basis.modes, 0.0);
  basis.d2.assign(basis.modes, 0.0);
  for (int r = 1; r <= N; ++r) {
    const double d = 2.0 * std::numbers::pi * r / L;
    basis.dj[2 * r - 1] = d;
    basis.dj[2 * r] = d;
    basis.d2[2 * r - 1] = d * d;
    basis.d2[2 * r] = d * d;
  }

  basis.W.resize(basis.m, basis.modes);
  for (int i = 0; i < basis.m; ++i)
    for (int j = 0; j < basis.modes; ++j)
      basis.W(i, j) = basis_value(basis, j, basis.nodes[i]);

  return basis;
}

double basis_value(const FourierBasis& basis, int j, double x) {
  if (j < 0 || j >= basis.modes)
    throw std::invalid_argument("basis_value: mode index out of range");
  const double L = basis.b - basis.a;
  if (j == 0) return 1.0 / std::sqrt(L);
  const double amp = std::sqrt(2.0 / L);
  const double arg = basis.dj[j] * (x - basis.a);
  return (j % 2 == 1) ? amp * std::sin(arg) : amp * std::cos(arg);
}

SpectralDerivative build_diff(const FourierBasis& basis) {
  SpectralDerivative d;
  d.Dtilde.resize(basis.modes, basis.modes);
  for (int r = 1; r <= basis.N; ++r) {
    const double dr = basis.dj[2 * r];
    // sin-mode coefficient feeds the cos slot and vice versa (with sign):
    // (q Dtilde)_{2r-1} = -d_r q_{2r},  (q Dtilde)_{2r} = +d_r q_{2r-1}.
    d.Dtilde(2 * r, 2 * r - 1) = -dr;
    d.Dtilde(2 * r - 1, 2 * r) = dr;
  }
  d.d2 = basis.d2;
  return d;
}

Mat derivative_coeffs(const FourierBasis& basis, const Mat& coeffs) {
  if (coeffs.cols() != static_cast<std::size_t>(basis.modes))
    throw std::invalid_argument("derivative_coeffs: coefficient width mismatch");
  Mat out(coeffs.rows(), coeffs.cols());
  for (std::size_t f = 0; f < coeffs.rows(); ++f) {
    for (int r = 1; r <= basis.N; ++r) {
      const double dr = basis.dj[2 * r];
      out(f, 2 * r - 1) = -dr * coeffs(f, 2 * r);
      out(f, 2 * r) = dr * coeffs(f, 2 * r - 1);
    }
  }
  return out;
}

Mat project(const FourierBasis& basis, const Mat& samples) {
  if (samples.rows() != static_cast<std::size_t>(basis.m))
    throw std::invalid_argument("project: samples must have one row per quadrature node");
  const std::size_t r = samples.cols();
  Mat out(r, basis.modes);
  const auto& ops = kernels::active();
  std::vector<double> c(r);
  for (int i = 0; i < basis.m; ++i) {
    for (std::size_t f = 0; f < r; ++f) c[f] = basis.wq * samples(i, f);
    ops.block_axpy(out.data(), basis.modes, r, c.data(), basis.W.row(i),
                   basis.modes);
  }
  return out;
}

Mat synthesize(const FourierBasis& basis, const Mat& coeffs,
               const std::vector<double>& xs) {
  if (coeffs.cols() != static_cast<std::size_t>(basis.modes))
    throw std::invalid_argument("synthesize: coefficient width mismatch");
  const std::size_t r = coeffs.rows();
  Mat out(r, xs.size());
  const auto& ops = kernels::active();
  std::vector<double> wcol(basis.modes);
  std::vector<double> vals(r);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int j = 0; j < basis.modes; ++j) wcol[j] = basis_value(basis, j, xs[i]);
    ops.block_dot(coeffs.data(), basis.modes, r, wcol.data(), basis.modes,
                  vals.data());
    for (std::size_t f = 0; f < r; ++f) out(f, i) = vals[f];
  }
  return out;
}

double quadrature(const FourierBasis& basis, const std::vector<double>& values) {
  if (values.size() != static_cast<std::size_t>(basis.m))
    throw std::invalid_argument("quadrature: expected one value per node");
  double acc = 0.0;
  for (double v : values) acc += v;
  return basis.wq * acc;
}

}  // namespace manakov
