#include <immintrin.h>

#include "manakov/kernels.hpp"

// AVX2+FMA variants.  This translation unit is the only one compiled with
// -mavx2 -mfma; it must not be entered unless dispatch confirmed support.
//
// block_dot/block_axpy process rows four at a time so each load of the
// shared vector w feeds four FMAs; the four independent accumulator chains
// also hide the FMA latency.

namespace manakov::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* x, const double* y, std::size_t len) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= len; i += 16) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), s1);
    s2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 8), _mm256_loadu_pd(y + i + 8), s2);
    s3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 12), _mm256_loadu_pd(y + i + 12), s3);
  }
  for (; i + 4 <= len; i += 4)
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
  double acc = hsum(_mm256_add_pd(_mm256_add_pd(s0, s1), _mm256_add_pd(s2, s3)));
  for (; i < len; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t len) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < len; ++i) y[i] += a * x[i];
}

void block_dot_avx2(const double* A, std::size_t lda, std::size_t nrows,
                    const double* w, std::size_t len, double* out) {
  std::size_t r = 0;
  for (; r + 4 <= nrows; r += 4) {
    const double* a0 = A + (r + 0) * lda;
    const double* a1 = A + (r + 1) * lda;
    const double* a2 = A + (r + 2) * lda;
    const double* a3 = A + (r + 3) * lda;
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
      const __m256d wv = _mm256_loadu_pd(w + i);
      s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a0 + i), wv, s0);
      s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a1 + i), wv, s1);
      s2 = _mm256_fmadd_pd(_mm256_loadu_pd(a2 + i), wv, s2);
      s3 = _mm256_fmadd_pd(_mm256_loadu_pd(a3 + i), wv, s3);
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
  for (; r < nrows; ++r) out[r] = dot_avx2(A + r * lda, w, len);
}

void block_axpy_avx2(double* A, std::size_t lda, std::size_t nrows,
                     const double* c, const double* w, std::size_t len) {
  std::size_t r = 0;
  for (; r + 4 <= nrows; r += 4) {
    double* a0 = A + (r + 0) * lda;
    double* a1 = A + (r + 1) * lda;
    double* a2 = A + (r + 2) * lda;
    double* a3 = A + (r + 3) * lda;
    const __m256d c0 = _mm256_set1_pd(c[r + 0]);
    const __m256d c1 = _mm256_set1_pd(c[r + 1]);
    const __m256d c2 = _mm256_set1_pd(c[r + 2]);
    const __m256d c3 = _mm256_set1_pd(c[r + 3]);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
      const __m256d wv = _mm256_loadu_pd(w + i);
      _mm256_storeu_pd(a0 + i, _mm256_fmadd_pd(c0, wv, _mm256_loadu_pd(a0 + i)));
      _mm256_storeu_pd(a1 + i, _mm256_fmadd_pd(c1, wv, _mm256_loadu_pd(a1 + i)));
      _mm256_storeu_pd(a2 + i, _mm256_fmadd_pd(c2, wv, _mm256_loadu_pd(a2 + i)));
      _mm256_storeu_pd(a3 + i, _mm256_fmadd_pd(c3, wv, _mm256_loadu_pd(a3 + i)));
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
    const __m256d cv = _mm256_set1_pd(cr);
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
      _mm256_storeu_pd(a + i, _mm256_fmadd_pd(cv, _mm256_loadu_pd(w + i),
                                               _mm256_loadu_pd(a + i)));
    }
    for (; i < len; ++i) a[i] += cr * w[i];
  }
}

void rot2_avx2(double* q, double* p, const double* b, const double* s,
               std::size_t len) {
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d qv = _mm256_loadu_pd(q + i);
    const __m256d pv = _mm256_loadu_pd(p + i);
    const __m256d bv = _mm256_loadu_pd(b + i);
    const __m256d sv = _mm256_loadu_pd(s + i);
    _mm256_storeu_pd(q + i, _mm256_mul_pd(_mm256_fmadd_pd(bv, pv, qv), sv));
    _mm256_storeu_pd(p + i, _mm256_mul_pd(_mm256_fnmadd_pd(bv, qv, pv), sv));
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
const Ops& avx2_table() {
  static const Ops table{"avx2",        dot_avx2,        axpy_avx2,
                         block_dot_avx2, block_axpy_avx2, rot2_avx2};
  return table;
}
}  // namespace detail

}  // namespace manakov::kernels
