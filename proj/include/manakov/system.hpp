#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "manakov/fourier.hpp"
#include "manakov/mat.hpp"

namespace manakov {

// The n-component coupled nonlinear Schroedinger (Manakov) problem
//   i d/dt psi = -beta d^2/dx^2 psi - gamma |psi|^2 o psi
// on [a, b] with periodic boundary conditions, integrated to time T.
// beta is diagonal (one dispersion coefficient per component) and gamma a
// symmetric real coupling matrix; psi0 supplies the initial field.
struct ManakovProblem {
  std::string name;
  int n = 0;
  std::vector<double> beta;  // n entries
  Mat gamma;                 // n x n, symmetric
  double a = 0.0, b = 0.0;
  double T = 0.0;
  std::function<std::vector<std::complex<double>>(double x)> psi0;
};

// Spectral coefficients of the real form u = Re psi, v = Im psi.  Row
// layout interleaves the components pairwise:
//   row 2i   = q_i (coefficients of u_i)
//   row 2i+1 = p_i (coefficients of v_i),
// one column per basis mode, so y is 2n x (2N+1).
struct SpectralState {
  int n = 0;
  Mat y;
};

// Split an interleaved state into the n x modes coefficient matrices of the
// real and imaginary parts, and merge them back.
void deinterleave(const SpectralState& state, Mat& q, Mat& p);
SpectralState reinterleave(const Mat& q, const Mat& p);

// Constant 2n x 2n blocks entering the matrix form of the semi-discrete
// system: beta2 = beta (x) I2, gamma2 = gamma (x) I2, the canonical
// skew-symmetric J = I_n (x) [[0,1],[-1,0]], and the rank-n pair-summing
// matrix Q = I_n (x) ones(2,2).
struct BlockMatrices {
  Mat beta2, gamma2, J, Q;
};

BlockMatrices build_blocks(const ManakovProblem& problem);

// Projection of psi0 onto the basis.
SpectralState initial_state(const ManakovProblem& problem,
                            const FourierBasis& basis);

// Semi-discrete right-hand side  J [ beta2 y D^2 - G(y) ]  where G is the
// Galerkin projection of the cubic coupling term.  y is 2n x modes.
Mat rhs(const ManakovProblem& problem, const FourierBasis& basis, const Mat& y);

// Same, for nblocks states stacked vertically (each 2n x modes); all blocks
// share one synthesis/projection pass.  Used by the stage solvers.
void rhs_stacked(const ManakovProblem& problem, const FourierBasis& basis,
                 const Mat& ys, int nblocks, Mat& out);

// Semi-discrete Hamiltonian.  Two independently coded forms: `hamiltonian`
// uses the block matrices literally (1/8 prefactor with the pair-summed
// quartic), `hamiltonian_qp` the componentwise (q, p) expression with the
// 1/4 prefactor.  They must agree to rounding; tests enforce that.
double hamiltonian(const ManakovProblem& problem, const FourierBasis& basis,
                   const Mat& y);
double hamiltonian_qp(const ManakovProblem& problem, const FourierBasis& basis,
                      const Mat& y);

struct Invariants {
  std::vector<double> Mi;  // per-component masses
  double M = 0.0;          // total mass
  double K = 0.0;          // momentum
  double H = 0.0;          // energy (Hamiltonian)
};

Invariants invariants(const ManakovProblem& problem, const FourierBasis& basis,
                      const Mat& y);

// Max-abs entrywise difference between two coefficient states of identical
// shape.
double solution_error(const Mat& y, const Mat& reference);
double solution_error(const SpectralState& y, const SpectralState& reference);

// Same, with y zero-padded to the reference's (larger or equal) mode count.
// Valid because the bases nest: the first 2N+1 modes of a finer basis on the
// same interval are exactly the coarser basis.
double solution_error_padded(const Mat& y, const Mat& reference);

}  // namespace manakov
