// Basis construction, quadrature exactness, projection/synthesis round
// trips, and the spectral differentiation maps.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "manakov/fourier.hpp"
#include "support/oracles.hpp"

using namespace manakov;
using test_support::random_mat;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("basis bookkeeping") {
  const FourierBasis basis = build_basis(6, -1.0, 3.0);
  CHECK(basis.modes == 13);
  CHECK(basis.m == 25);
  CHECK(basis.wq == doctest::Approx(4.0 / 25.0).epsilon(1e-15));
  CHECK(basis.nodes.size() == 25);
  CHECK(basis.nodes[0] == -1.0);
  CHECK(basis.nodes[1] == doctest::Approx(-1.0 + 4.0 / 25.0).epsilon(1e-15));

  // d_0 = 0 and d_{2r-1} = d_{2r} = 2 pi r / (b - a).
  CHECK(basis.dj[0] == 0.0);
  for (int r = 1; r <= 6; ++r) {
    const double expect = 2.0 * kPi * r / 4.0;
    CHECK(basis.dj[2 * r - 1] == doctest::Approx(expect).epsilon(1e-15));
    CHECK(basis.dj[2 * r] == doctest::Approx(expect).epsilon(1e-15));
    CHECK(basis.d2[2 * r] == doctest::Approx(expect * expect).epsilon(1e-15));
  }

  CHECK_THROWS_AS(build_basis(0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(4, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_basis(4, 0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("basis values match the closed forms") {
  const double a = -2.0, b = 5.0, L = b - a;
  const FourierBasis basis = build_basis(5, a, b);
  const std::vector<double> xs = {-2.0, -1.3, 0.0, 0.71, 4.99};
  for (double x : xs) {
    CHECK(basis_value(basis, 0, x) ==
          doctest::Approx(1.0 / std::sqrt(L)).epsilon(1e-15));
    for (int r = 1; r <= 5; ++r) {
      const double d = 2.0 * kPi * r / L;
      CHECK(basis_value(basis, 2 * r - 1, x) ==
            doctest::Approx(std::sqrt(2.0 / L) * std::sin(d * (x - a)))
                .epsilon(1e-14));
      CHECK(basis_value(basis, 2 * r, x) ==
            doctest::Approx(std::sqrt(2.0 / L) * std::cos(d * (x - a)))
                .epsilon(1e-14));
    }
  }
}

TEST_CASE("quadrature orthonormality, also oversampled") {
  for (int oversample : {1, 2}) {
    const FourierBasis basis = build_basis(8, 0.0, 2.0 * kPi, oversample);
    for (int j = 0; j < basis.modes; ++j) {
      for (int l = j; l < basis.modes; ++l) {
        double acc = 0.0;
        for (int i = 0; i < basis.m; ++i) acc += basis.W(i, j) * basis.W(i, l);
        acc *= basis.wq;
        const double expect = (j == l) ? 1.0 : 0.0;
        CHECK(std::fabs(acc - expect) <= 1e-13);
      }
    }
  }
}

TEST_CASE("quadrature integrates constants and squared modes exactly") {
  const double a = 0.3, b = 0.3 + 4.0 * kPi, L = b - a;
  const FourierBasis basis = build_basis(7, a, b);
  std::vector<double> ones(basis.m, 1.0);
  CHECK(quadrature(basis, ones) == doctest::Approx(L).epsilon(1e-14));

  // integral of sin^2(d_1 (x-a)) over a full period is L/2
  std::vector<double> s2(basis.m);
  for (int i = 0; i < basis.m; ++i) {
    const double s = std::sin(2.0 * kPi / L * (basis.nodes[i] - a));
    s2[i] = s * s;
  }
  CHECK(quadrature(basis, s2) == doctest::Approx(L / 2.0).epsilon(1e-13));
}

TEST_CASE("project / synthesize round trip on random coefficients") {
  const FourierBasis basis = build_basis(9, -4.0, 4.0);
  const Mat coeffs = random_mat(4, basis.modes, 1234);
  const Mat at_nodes = synthesize(basis, coeffs, basis.nodes);

  // project expects samples as m x r (one field per column)
  Mat samples(basis.m, 4);
  for (int i = 0; i < basis.m; ++i)
    for (int f = 0; f < 4; ++f) samples(i, f) = at_nodes(f, i);

  const Mat back = project(basis, samples);
  REQUIRE(back.rows() == coeffs.rows());
  REQUIRE(back.cols() == coeffs.cols());
  CHECK(maxabs_diff(back, coeffs) <= 1e-13);
}

TEST_CASE("projection reproduces a band-limited function pointwise") {
  const double a = -1.0, b = 1.0, L = 2.0;
  const FourierBasis basis = build_basis(6, a, b);
  auto f = [&](double x) {
    return 0.7 - 0.3 * std::sin(2.0 * kPi / L * (x - a)) +
           1.1 * std::cos(3.0 * 2.0 * kPi / L * (x - a));
  };
  Mat samples(basis.m, 1);
  for (int i = 0; i < basis.m; ++i) samples(i, 0) = f(basis.nodes[i]);
  const Mat coeffs = project(basis, samples);

  const std::vector<double> xs = {-0.97, -0.5, 0.043, 0.71};
  const Mat vals = synthesize(basis, coeffs, xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(vals(0, i) == doctest::Approx(f(xs[i])).epsilon(1e-12));
}

TEST_CASE("derivative coefficients: analytic, matrix and skewness checks") {
  const double a = 0.0, b = 3.0, L = 3.0;
  const FourierBasis basis = build_basis(5, a, b);

  // d/dx of sin(d_r (x-a)) mode is d_r * cos mode and vice versa
  for (int r = 1; r <= 5; ++r) {
    const double d = 2.0 * kPi * r / L;
    Mat coeffs(1, basis.modes);
    coeffs(0, 2 * r - 1) = 1.0;  // sin mode
    const Mat dc = derivative_coeffs(basis, coeffs);
    for (int j = 0; j < basis.modes; ++j) {
      const double expect = (j == 2 * r) ? d : 0.0;
      CHECK(std::fabs(dc(0, j) - expect) <= 1e-13);
    }
  }

  // matches the explicit Dtilde matrix and Dtilde is skew-symmetric
  const SpectralDerivative diff = build_diff(basis);
  for (int j = 0; j < basis.modes; ++j)
    for (int l = 0; l < basis.modes; ++l)
      CHECK(std::fabs(diff.Dtilde(j, l) + diff.Dtilde(l, j)) <= 1e-15);

  const Mat coeffs = random_mat(3, basis.modes, 77);
  const Mat dc = derivative_coeffs(basis, coeffs);
  for (int r = 0; r < 3; ++r) {
    for (int j = 0; j < basis.modes; ++j) {
      double acc = 0.0;
      for (int l = 0; l < basis.modes; ++l) acc += coeffs(r, l) * diff.Dtilde(l, j);
      CHECK(dc(r, j) == doctest::Approx(acc).epsilon(1e-13));
    }
  }

  // two derivatives = multiplication by -d^2
  const Mat ddc = derivative_coeffs(basis, dc);
  for (int r = 0; r < 3; ++r)
    for (int j = 0; j < basis.modes; ++j)
      CHECK(ddc(r, j) ==
            doctest::Approx(-basis.d2[j] * coeffs(r, j)).epsilon(1e-12));
  for (int j = 0; j < basis.modes; ++j)
    CHECK(diff.d2[j] == doctest::Approx(basis.d2[j]).epsilon(1e-15));
}

TEST_CASE("shape validation") {
  const FourierBasis basis = build_basis(4, 0.0, 1.0);
  Mat wrong(2, basis.modes + 1);
  CHECK_THROWS_AS(derivative_coeffs(basis, wrong), std::invalid_argument);
  CHECK_THROWS_AS(synthesize(basis, wrong, {0.5}), std::invalid_argument);
  Mat bad_samples(basis.m + 1, 2);
  CHECK_THROWS_AS(project(basis, bad_samples), std::invalid_argument);
  std::vector<double> bad_values(basis.m + 3, 0.0);
  CHECK_THROWS_AS(quadrature(basis, bad_values), std::invalid_argument);
}
