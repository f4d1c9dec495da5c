#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace manakov::kernels {

// Function table for the dense inner loops that dominate the run time
// (synthesis of nodal values, accumulation of projections, and the 2x2
// rotation applied by the blended preconditioner).  All variants share the
// same contract; the scalar table is the strictly sequential reference the
// vectorized ones are equivalence-tested against.  Variants may reassociate
// sums, so results can differ from the reference by a few ulps.
struct Ops {
  const char* name;

  // sum_i x[i]*y[i]
  double (*dot)(const double* x, const double* y, std::size_t len);

  // y[i] += a*x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t len);

  // out[r] = sum_i A[r*lda + i]*w[i]   for r = 0..nrows-1
  void (*block_dot)(const double* A, std::size_t lda, std::size_t nrows,
                    const double* w, std::size_t len, double* out);

  // A[r*lda + i] += c[r]*w[i]          for r = 0..nrows-1
  void (*block_axpy)(double* A, std::size_t lda, std::size_t nrows,
                     const double* c, const double* w, std::size_t len);

  // Elementwise 2x2 rotation-and-scale; the original q[i] feeds both lines:
  //   q[i] <- (q[i] + b[i]*p[i]) * s[i]
  //   p[i] <- (p[i] - b[i]*q[i]) * s[i]
  void (*rot2)(double* q, double* p, const double* b, const double* s,
               std::size_t len);
};

// Always present.
const Ops& scalar();

// nullptr when the build or the running CPU lacks the instruction set.
const Ops* avx2();
const Ops* avx512();

// Table used by the solver: the widest supported variant, unless the
// MANAKOV_KERNELS environment variable (scalar | avx2 | avx512) overrides
// the choice.  Resolved once on first use.
const Ops& active();

// All variants usable on this machine (for equivalence tests).
std::vector<const Ops*> available();

// Lookup by name among available variants; nullptr if absent.
const Ops* by_name(const std::string& name);

}  // namespace manakov::kernels
