#include <immintrin.h>

#include "manakov/kernels.hpp"

// AVX-512 variants (F/DQ/VL).  Same row-blocking scheme as the AVX2 table,
// with 8-wide lanes.  Only entered after dispatch confirmed CPU support.

namespace manakov::kernels {
namespace {

inline double hsum(__m512d v) { return _mm512_reduce_add_pd(v); }

double dot_avx512(const double* x, const double* y, std::size_t len) {
  __m512d s0 = _mm512_setzero_pd(), s1 = _mm512_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= len; i += 16) {
    s0 = _mm512_fmadd_pd(_mm512_loadu_pd(x + i), _mm512_loadu_pd(y + i), s0);
    s1 = _mm512_fmadd_pd(_mm512_loadu_pd(x + i + 8), _mm512_loadu_pd(y + i + 8), s1);
  }
  for (; i + 8 <= len; i += 8)
    s0 = _mm512_fmadd_pd(_mm512_loadu_pd(x + i), _mm512_loadu_pd(y + i), s0);
  double acc = hsum(_mm512_add_pd(s0, s1));
  for (; i < len; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_avx512(double a, const double* x, double* y, std::size_t len) {
  const __m512d av = _mm512_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m512d yv = _mm512_loadu_pd(y + i);
    yv = _mm512_fmadd_pd(av, _mm512_loadu_pd(x + i), yv);
    _mm512_storeu_pd(y + i, yv);
  }
  for (; i < len; ++i) y[i] += a * x[i];
}

void block_dot_avx512(const double* A, std::size_t lda, std::size_t nrows,
                      const double* w, std::size_t len, double* out) {
  std::size_t r = 0;
  for (; r + 4 <= nrows; r += 4) {
    const double* a0 = A + (r + 0) * lda;
    const double* a1 = A + (r + 1) * lda;
    const double* a2 = A + (r + 2) * lda;
    const double* a3 = A + (r + 3) * lda;
    __m512d s0 = _mm512_setzero_pd(), s1 = _mm512_setzero_pd();
    __m512d s2 = _mm512_setzero_pd(), s3 = _mm512_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
      const __m512d wv = _mm512_loadu_pd(w + i);
      s0 = _mm512_fmadd_pd(_mm512_loadu_pd(a0 + i), wv, s0);
      s1 = _mm512_fmadd_pd(_mm512_loadu_pd(a1 + i), wv, s1);
      s2 = _mm512_fmadd_pd(_mm512_loadu_pd(a2 + i), wv, s2);
      s3 = _mm512_fmadd_pd(_mm512_loadu_pd(a3 + i), wv, s3);
    }
    double t0 = hsum(s0), t1 = hsum(s1), t2 = hsum(s2), t3 = hsum(s3);
    for (; i < len; ++i) {
      const double wi = w[i];
      t0 += a0[i] * wi;
      t1 += a1[i] * wi;
      t2 += a2[i] * wi;
      t3 += a3[i] * wi;
    }
    out[r + 0] = t0;
    out[r + 1] = t1;
    out[r + 2] = t2;
    out[r + 3] = t3;
  }
  for (; r < nrows; ++r) out[r] = dot_avx512(A + r * lda, w, len);
}

void block_axpy_avx512(double* A, std::size_t lda, std::size_t nrows,
                       const double* c, const double* w, std::size_t len) {
  std::size_t r = 0;
  for (; r + 4 <= nrows; r += 4) {
    double* a0 = A + (r + 0) * lda;
    double* a1 = A + (r + 1) * lda;
    double* a2 = A + (r + 2) * lda;
    double* a3 = A + (r + 3) * lda;
    const __m512d c0 = _mm512_set1_pd(c[r + 0]);
    const __m512d c1 = _mm512_set1_pd(c[r + 1]);
    const __m512d c2 = _mm512_set1_pd(c[r + 2]);
    const __m512d c3 = _mm512_set1_pd(c[r + 3]);
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
      const __m512d wv = _mm512_loadu_pd(w + i);
      _mm512_storeu_pd(a0 + i, _mm512_fmadd_pd(c0, wv, _mm512_loadu_pd(a0 + i)));
      _mm512_storeu_pd(a1 + i, _mm512_fmadd_pd(c1, wv, _mm512_loadu_pd(a1 + i)));
      _mm512_storeu_pd(a2 + i, _mm512_fmadd_pd(c2, wv, _mm512_loadu_pd(a2 + i)));
      _mm512_storeu_pd(a3 + i, _mm512_fmadd_pd(c3, wv, _mm512_loadu_pd(a3 + i)));
    }
    for (; i < len; ++i) {
      const double wi = w[i];
      a0[i] += c[r + 0] * wi;
      a1[i] += c[r + 1] * wi;
      a2[i] += c[r + 2] * wi;
      a3[i] += c[r + 3] * wi;
    }
  }
  for (; r < nrows; ++r) {
    double* a = A + r * lda;
    const double cr = c[r];
    const __m512d cv = _mm512_set1_pd(cr);
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
      _mm512_storeu_pd(a + i, _mm512_fmadd_pd(cv, _mm512_loadu_pd(w + i),
                                               _mm512_loadu_pd(a + i)));
    }
    for (; i < len; ++i) a[i] += cr * w[i];
  }
}

void rot2_avx512(double* q, double* p, const double* b, const double* s,
                 std::size_t len) {
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m512d qv = _mm512_loadu_pd(q + i);
    const __m512d pv = _mm512_loadu_pd(p + i);
    const __m512d bv = _mm512_loadu_pd(b + i);
    const __m512d sv = _mm512_loadu_pd(s + i);
    _mm512_storeu_pd(q + i, _mm512_mul_pd(_mm512_fmadd_pd(bv, pv, qv), sv));
    _mm512_storeu_pd(p + i, _mm512_mul_pd(_mm512_fnmadd_pd(bv, qv, pv), sv));
  }
  for (; i < len; ++i) {
    const double qi = q[i];
    const double pi = p[i];
    q[i] = (qi + b[i] * pi) * s[i];
    p[i] = (pi - b[i] * qi) * s[i];
  }
}

}  // namespace

namespace detail {
const Ops& avx512_table() {
  static const Ops table{"avx512",        dot_avx512,        axpy_avx512,
                         block_dot_avx512, block_axpy_avx512, rot2_avx512};
  return table;
}
}  // namespace detail

}  // namespace manakov::kernels
