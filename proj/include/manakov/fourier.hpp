#pragma once

#include <vector>

#include "manakov/mat.hpp"

namespace manakov {

// Orthonormal trigonometric basis on [a, b] with periodic boundary
// conditions.  Modes are ordered
//   w_0      = 1/sqrt(b-a)
//   w_{2r-1} = sqrt(2/(b-a)) * sin(d_r (x-a))
//   w_{2r}   = sqrt(2/(b-a)) * cos(d_r (x-a)),     d_r = 2*pi*r/(b-a),
// for r = 1..N, giving 2N+1 modes in total.
//
// Quadrature uses m equispaced nodes x_i = a + i(b-a)/m with the uniform
// weight (b-a)/m, which integrates trigonometric polynomials up to degree
// m-1 exactly.  The default m = 4N+1 therefore handles every integrand the
// solver needs (cubic nonlinearity times a basis function has degree at
// most 4N); `oversample` scales the node count for experimentation.
struct FourierBasis {
  int N = 0;          // highest wavenumber
  double a = 0.0, b = 0.0;
  int modes = 0;      // 2N+1
  int m = 0;          // quadrature node count
  double wq = 0.0;    // uniform quadrature weight (b-a)/m
  std::vector<double> nodes;  // m quadrature abscissae
  std::vector<double> dj;     // per-mode derivative factor, dj[0] = 0
  std::vector<double> d2;     // dj squared
  Mat W;                      // m x modes, W(i,j) = w_j(nodes[i])
};

FourierBasis build_basis(int N, double a, double b, int oversample = 1);

// Value of a single basis function at x.
double basis_value(const FourierBasis& basis, int j, double x);

// Explicit spectral differentiation matrices: Dtilde is the skew-symmetric
// (2N+1)^2 first-derivative map acting on coefficient rows from the right,
// d2 the diagonal of -D^2 (so second-derivative coefficients are -q*d2).
struct SpectralDerivative {
  Mat Dtilde;
  std::vector<double> d2;
};

SpectralDerivative build_diff(const FourierBasis& basis);

// First-derivative coefficients (coeffs * Dtilde) without materializing the
// matrix; coeffs is r x modes.
Mat derivative_coeffs(const FourierBasis& basis, const Mat& coeffs);

// Least-squares (here: exact, by quadrature) projection of sampled fields.
// samples is m x r, one field per column; the result is r x modes.
Mat project(const FourierBasis& basis, const Mat& samples);

// Evaluate coefficient rows at arbitrary points; coeffs is r x modes and
// the result r x xs.size().
Mat synthesize(const FourierBasis& basis, const Mat& coeffs,
               const std::vector<double>& xs);

// Quadrature of nodal values (size m): wq * sum(values).
double quadrature(const FourierBasis& basis, const std::vector<double>& values);

}  // namespace manakov
