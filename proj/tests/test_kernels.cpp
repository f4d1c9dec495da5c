// Equivalence and semantics of the data-parallel kernel tables.  The scalar
// table is the reference: it is checked against plain loops written out
// here, and every other compiled variant is checked against it.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "manakov/kernels.hpp"

using namespace manakov::kernels;

namespace {

std::vector<double> random_vec(std::size_t len, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(len);
  for (double& x : v) x = dist(rng);
  return v;
}

// Lengths spanning the vector widths and their tails.
const std::vector<std::size_t> kLens = {1, 2, 3, 4, 5, 7, 8,  9, 15, 16,
                                        17, 31, 32, 33, 63, 64, 67, 128};

}  // namespace

TEST_CASE("scalar table is always available and selectable") {
  CHECK(std::string(scalar().name) == "scalar");
  CHECK(by_name("scalar") == &scalar());
  CHECK(by_name("no-such-kernel") == nullptr);
  bool has_scalar = false;
  for (const Ops* ops : available())
    if (std::string(ops->name) == "scalar") has_scalar = true;
  CHECK(has_scalar);
  CHECK(std::string(active().name).size() > 0);
}

TEST_CASE("scalar dot and axpy match plain loops") {
  for (std::size_t len : kLens) {
    const std::vector<double> x = random_vec(len, 11);
    const std::vector<double> y = random_vec(len, 23);

    double expect = 0.0;
    for (std::size_t i = 0; i < len; ++i) expect += x[i] * y[i];
    CHECK(scalar().dot(x.data(), y.data(), len) ==
          doctest::Approx(expect).epsilon(1e-14));

    std::vector<double> z = y;
    scalar().axpy(0.37, x.data(), z.data(), len);
    for (std::size_t i = 0; i < len; ++i)
      CHECK(z[i] == doctest::Approx(y[i] + 0.37 * x[i]).epsilon(1e-15));
  }
}

TEST_CASE("scalar block kernels match row-by-row loops") {
  const std::size_t lda = 130;  // > every tested len: rows carry padding
  for (std::size_t len : kLens) {
    for (std::size_t nrows : {1u, 2u, 3u, 4u, 5u, 8u, 9u}) {
      const std::vector<double> A = random_vec(nrows * lda, 31);
      const std::vector<double> w = random_vec(len, 41);
      const std::vector<double> c = random_vec(nrows, 53);

      std::vector<double> out(nrows, -1.0);
      scalar().block_dot(A.data(), lda, nrows, w.data(), len, out.data());
      for (std::size_t r = 0; r < nrows; ++r) {
        double expect = 0.0;
        for (std::size_t i = 0; i < len; ++i) expect += A[r * lda + i] * w[i];
        CHECK(out[r] == doctest::Approx(expect).epsilon(1e-14));
      }

      std::vector<double> B = A;
      scalar().block_axpy(B.data(), lda, nrows, c.data(), w.data(), len);
      for (std::size_t r = 0; r < nrows; ++r) {
        for (std::size_t i = 0; i < len; ++i)
          CHECK(B[r * lda + i] ==
                doctest::Approx(A[r * lda + i] + c[r] * w[i]).epsilon(1e-15));
        for (std::size_t i = len; i < lda; ++i)  // padding untouched
          CHECK(B[r * lda + i] == A[r * lda + i]);
      }
    }
  }
}

TEST_CASE("scalar rot2 applies the 2x2 map (q,p) -> ((q+bp)s, (p-bq)s)") {
  for (std::size_t len : kLens) {
    const std::vector<double> q0 = random_vec(len, 61);
    const std::vector<double> p0 = random_vec(len, 71);
    const std::vector<double> b = random_vec(len, 83);
    const std::vector<double> s = random_vec(len, 97);

    std::vector<double> q = q0, p = p0;
    scalar().rot2(q.data(), p.data(), b.data(), s.data(), len);
    for (std::size_t i = 0; i < len; ++i) {
      CHECK(q[i] == doctest::Approx((q0[i] + b[i] * p0[i]) * s[i]).epsilon(1e-15));
      CHECK(p[i] == doctest::Approx((p0[i] - b[i] * q0[i]) * s[i]).epsilon(1e-15));
    }
  }
}

TEST_CASE("every compiled variant agrees with the scalar reference") {
  for (const Ops* ops : available()) {
    INFO("variant: ", ops->name);
    for (std::size_t len : kLens) {
      const std::vector<double> x = random_vec(len, 101 + len);
      const std::vector<double> y = random_vec(len, 211 + len);

      const double d_ref = scalar().dot(x.data(), y.data(), len);
      const double d = ops->dot(x.data(), y.data(), len);
      CHECK(std::fabs(d - d_ref) <= 1e-13 * (1.0 + std::fabs(d_ref)));

      std::vector<double> z_ref = y, z = y;
      scalar().axpy(-0.73, x.data(), z_ref.data(), len);
      ops->axpy(-0.73, x.data(), z.data(), len);
      for (std::size_t i = 0; i < len; ++i)
        CHECK(std::fabs(z[i] - z_ref[i]) <= 1e-14);

      const std::size_t lda = 130, nrows = 6;
      const std::vector<double> A = random_vec(nrows * lda, 307 + len);
      const std::vector<double> w = random_vec(len, 401 + len);
      const std::vector<double> c = random_vec(nrows, 503 + len);

      std::vector<double> out_ref(nrows), out(nrows);
      scalar().block_dot(A.data(), lda, nrows, w.data(), len, out_ref.data());
      ops->block_dot(A.data(), lda, nrows, w.data(), len, out.data());
      for (std::size_t r = 0; r < nrows; ++r)
        CHECK(std::fabs(out[r] - out_ref[r]) <=
              1e-13 * (1.0 + std::fabs(out_ref[r])));

      std::vector<double> B_ref = A, B = A;
      scalar().block_axpy(B_ref.data(), lda, nrows, c.data(), w.data(), len);
      ops->block_axpy(B.data(), lda, nrows, c.data(), w.data(), len);
      for (std::size_t i = 0; i < B.size(); ++i)
        CHECK(std::fabs(B[i] - B_ref[i]) <= 1e-14);

      std::vector<double> q_ref = x, p_ref = y, q = x, p = y;
      const std::vector<double> bb = random_vec(len, 601 + len);
      const std::vector<double> ss = random_vec(len, 701 + len);
      scalar().rot2(q_ref.data(), p_ref.data(), bb.data(), ss.data(), len);
      ops->rot2(q.data(), p.data(), bb.data(), ss.data(), len);
      for (std::size_t i = 0; i < len; ++i) {
        CHECK(std::fabs(q[i] - q_ref[i]) <= 1e-14);
        CHECK(std::fabs(p[i] - p_ref[i]) <= 1e-14);
      }
    }
  }
}
