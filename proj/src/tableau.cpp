#include "manakov/tableau.hpp"

#include <lapacke.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace manakov {
namespace {

// Legendre polynomial L_k and derivative at x (on [-1, 1]) via the
// three-term recurrence.
void legendre_value_deriv(int k, double x, double* value, double* deriv) {
  double lm1 = 1.0, l = x;
  if (k == 0) {
    *value = 1.0;
    *deriv = 0.0;
    return;
  }
  for (int m = 1; m < k; ++m) {
    const double lp1 = ((2 * m + 1) * x * l - m * lm1) / (m + 1);
    lm1 = l;
    l = lp1;
  }
  *value = l;
  *deriv = k * (x * l - lm1) / (x * x - 1.0);
}

double legendre_raw(int j, double t) {
  if (j < 0) throw std::invalid_argument("legendre: negative degree");
  double lm1 = 1.0, l = t;
  if (j == 0) return 1.0;
  for (int m = 1; m < j; ++m) {
    const double lp1 = ((2 * m + 1) * t * l - m * lm1) / (m + 1);
    lm1 = l;
    l = lp1;
  }
  return l;
}

}  // namespace

GaussRule gauss_legendre(int k) {
  if (k < 1 || k > 64)
    throw std::invalid_argument("gauss_legendre: k must be in [1, 64]");
  GaussRule rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  for (int i = 0; i < k; ++i) {
    // Chebyshev-like initial guess, then Newton on L_k.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double v = 0.0, d = 1.0;
    for (int iter = 0; iter < 50; ++iter) {
      legendre_value_deriv(k, x, &v, &d);
      const double dx = v / d;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    legendre_value_deriv(k, x, &v, &d);
    rule.nodes[k - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[k - 1 - i] = 1.0 / ((1.0 - x * x) * d * d);
  }
  // Enforce the symmetry c_i + c_{k-1-i} = 1 exactly; it is a structural
  // property of the rule and the time-reversibility tests rely on it.
  for (int i = 0; i < k / 2; ++i) {
    const int jj = k - 1 - i;
    const double ci = 0.5 * (rule.nodes[i] + 1.0 - rule.nodes[jj]);
    rule.nodes[i] = ci;
    rule.nodes[jj] = 1.0 - ci;
    const double wi = 0.5 * (rule.weights[i] + rule.weights[jj]);
    rule.weights[i] = wi;
    rule.weights[jj] = wi;
  }
  if (k % 2 == 1) rule.nodes[k / 2] = 0.5;
  return rule;
}

double legendre_shifted(int j, double x) {
  return std::sqrt(2.0 * j + 1.0) * legendre_raw(j, 2.0 * x - 1.0);
}

double legendre_shifted_integral(int j, double x) {
  if (j == 0) return x;
  const double t = 2.0 * x - 1.0;
  // int_0^x P_j = (L_{j+1}(2x-1) - L_{j-1}(2x-1)) / (2 sqrt(2j+1)),
  // which vanishes at both endpoints for j >= 1.
  return (legendre_raw(j + 1, t) - legendre_raw(j - 1, t)) /
         (2.0 * std::sqrt(2.0 * j + 1.0));
}

Tableau build_tableau(int k, int s) {
  if (s < 1) throw std::invalid_argument("build_tableau: s must be >= 1");
  if (k < s) throw std::invalid_argument("build_tableau: requires k >= s");
  GaussRule rule = gauss_legendre(k);

  Tableau tab;
  tab.k = k;
  tab.s = s;
  tab.c = rule.nodes;
  tab.bw = rule.weights;
  tab.label = "HBVM(" + std::to_string(k) + "," + std::to_string(s) + ")";

  tab.Ps.resize(k, s);
  tab.Is.resize(k, s);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < s; ++j) {
      tab.Ps(i, j) = legendre_shifted(j, tab.c[i]);
      tab.Is(i, j) = legendre_shifted_integral(j, tab.c[i]);
    }

  tab.Xs.resize(s, s);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) acc += tab.bw[i] * tab.Ps(i, a) * tab.Is(i, b);
      tab.Xs(a, b) = acc;
    }

  // Self-check 1: the quadrature must see P_0..P_{s-1} as an orthonormal
  // family, otherwise every property downstream is void.
  for (int a = 0; a < s; ++a)
    for (int b = 0; b <= a; ++b) {
      double acc = 0.0;
      for (int i = 0; i < k; ++i) acc += tab.bw[i] * tab.Ps(i, a) * tab.Ps(i, b);
      const double expect = (a == b) ? 1.0 : 0.0;
      if (std::fabs(acc - expect) > 1e-12)
        throw std::logic_error("build_tableau: orthonormality self-check failed");
    }

  // Self-check 2: Xs must match its closed form -- lower bidiagonal plus
  // the (0,0) entry, with xi_i = (2 sqrt(4i^2-1))^{-1}:
  //   Xs(0,0) = 1/2, Xs(i,i-1) = xi_i, Xs(i-1,i) = -xi_i, zero elsewhere.
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      double expect = 0.0;
      if (a == 0 && b == 0) expect = 0.5;
      else if (a == b + 1) expect = 1.0 / (2.0 * std::sqrt(4.0 * a * a - 1.0));
      else if (b == a + 1) expect = -1.0 / (2.0 * std::sqrt(4.0 * b * b - 1.0));
      if (std::fabs(tab.Xs(a, b) - expect) > 1e-12)
        throw std::logic_error("build_tableau: stage-coupling self-check failed");
    }

  // Inverse of Xs via LAPACK.
  tab.XsInv.resize(s, s);
  {
    Mat lu = tab.Xs;
    for (int i = 0; i < s; ++i) tab.XsInv(i, i) = 1.0;
    std::vector<lapack_int> ipiv(s);
    const lapack_int info =
        LAPACKE_dgesv(LAPACK_ROW_MAJOR, s, s, lu.data(), s, ipiv.data(),
                      tab.XsInv.data(), s);
    if (info != 0) throw std::logic_error("build_tableau: Xs is singular");
  }

  // rho = min |eig(Xs)|; the eigenvalues of Xs never vanish.
  {
    Mat work = tab.Xs;
    std::vector<double> wr(s), wi(s);
    // Unreferenced with job 'N', but the row-major wrapper still validates
    // the leading dimensions against n.
    Mat vdummy(s, s);
    const lapack_int info =
        LAPACKE_dgeev(LAPACK_ROW_MAJOR, 'N', 'N', s, work.data(), s, wr.data(),
                      wi.data(), vdummy.data(), s, vdummy.data(), s);
    if (info != 0) throw std::logic_error("build_tableau: eigenvalue solve failed");
    double best = 0.0;
    for (int i = 0; i < s; ++i) {
      const double mod = std::hypot(wr[i], wi[i]);
      if (i == 0 || mod < best) best = mod;
    }
    tab.rho = best;
  }

  return tab;
}

Mat butcher_matrix(const Tableau& tab) {
  Mat A(tab.k, tab.k);
  for (int i = 0; i < tab.k; ++i)
    for (int l = 0; l < tab.k; ++l) {
      double acc = 0.0;
      for (int j = 0; j < tab.s; ++j) acc += tab.Is(i, j) * tab.Ps(l, j);
      A(i, l) = acc * tab.bw[l];
    }
  return A;
}

}  // namespace manakov
