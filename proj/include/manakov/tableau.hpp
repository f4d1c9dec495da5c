#pragma once

#include <string>
#include <vector>

#include "manakov/mat.hpp"

namespace manakov {

// k-point Gauss-Legendre rule on [0, 1]; integrates polynomials up to
// degree 2k-1 exactly.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int k);  // 1 <= k <= 64

// Shifted Legendre polynomials, orthoNORMAL on [0, 1]:
//   P_j(x) = sqrt(2j+1) L_j(2x-1),
// and their primitives I_j(x) = int_0^x P_j.
double legendre_shifted(int j, double x);
double legendre_shifted_integral(int j, double x);

// Data defining an HBVM(k, s) method: k Gauss abscissae/weights, the k x s
// collocation matrices Ps (values of P_0..P_{s-1}) and Is (their
// primitives), the s x s stage-coupling matrix Xs = Ps' * Omega * Is with
// its inverse, and the positive parameter rho = min |eig(Xs)| used by the
// blended iteration.  The method has order 2s and conserves polynomial
// Hamiltonians of degree <= 2k/s; k = s recovers the s-stage Gauss method.
struct Tableau {
  int k = 0, s = 0;
  std::vector<double> c;   // abscissae
  std::vector<double> bw;  // weights
  Mat Ps;                  // k x s
  Mat Is;                  // k x s
  Mat Xs;                  // s x s
  Mat XsInv;               // s x s
  double rho = 0.0;
  std::string label;       // "HBVM(k,s)"
};

Tableau build_tableau(int k, int s);

// Full k x k Butcher matrix A = Is * Ps' * Omega (only needed by tests and
// diagnostics; the solver works with the factored form).
Mat butcher_matrix(const Tableau& tableau);

}  // namespace manakov
