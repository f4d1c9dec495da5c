#include "manakov/kernels.hpp"

// Strictly sequential reference kernels.  These are the semantics all other
// variants must reproduce up to rounding; keep the loops free of manual
// unrolling so the summation order stays the obvious left-to-right one.
// (The build uses no -ffast-math, so the compiler may not reassociate.)

namespace manakov::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t len) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] += a * x[i];
}

void block_dot_scalar(const double* A, std::size_t lda, std::size_t nrows,
                      const double* w, std::size_t len, double* out) {
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* a = A + r * lda;
    double acc = 0.0;
    for (std::size_t i = 0; i < len; ++i) acc += a[i] * w[i];
    out[r] = acc;
  }
}

void block_axpy_scalar(double* A, std::size_t lda, std::size_t nrows,
                       const double* c, const double* w, std::size_t len) {
  for (std::size_t r = 0; r < nrows; ++r) {
    double* a = A + r * lda;
    const double cr = c[r];
    for (std::size_t i = 0; i < len; ++i) a[i] += cr * w[i];
  }
}

void rot2_scalar(double* q, double* p, const double* b, const double* s,
                 std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    const double qi = q[i];
    const double pi = p[i];
    q[i] = (qi + b[i] * pi) * s[i];
    p[i] = (pi - b[i] * qi) * s[i];
  }
}

}  // namespace

const Ops& scalar() {
  static const Ops table{"scalar",    dot_scalar,        axpy_scalar,
                         block_dot_scalar, block_axpy_scalar, rot2_scalar};
  return table;
}

}  // namespace manakov::kernels
