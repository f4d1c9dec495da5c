#include "manakov/system.hpp"

#include <cmath>
#include <stdexcept>

#include "manakov/kernels.hpp"

namespace manakov {
namespace {

void check_state_shape(const ManakovProblem& problem, const FourierBasis& basis,
                       const Mat& y, const char* who) {
  if (y.rows() != static_cast<std::size_t>(2 * problem.n) ||
      y.cols() != static_cast<std::size_t>(basis.modes))
    throw std::invalid_argument(std::string(who) + ": state shape mismatch");
}

// Nodal values of all stacked fields: Zt(i, r) = field r at node i.
// Reused across rhs and Hamiltonian evaluations; single-threaded, so a
// function-local workspace is safe.
void synth_nodes(const FourierBasis& basis, const Mat& ys, Mat& Zt) {
  const std::size_t R = ys.rows();
  Zt.resize(basis.m, R);
  const auto& ops = kernels::active();
  for (int i = 0; i < basis.m; ++i)
    ops.block_dot(ys.data(), basis.modes, R, basis.W.row(i), basis.modes,
                  Zt.row(i));
}

}  // namespace

void deinterleave(const SpectralState& state, Mat& q, Mat& p) {
  const std::size_t modes = state.y.cols();
  q.resize(state.n, modes);
  p.resize(state.n, modes);
  for (int i = 0; i < state.n; ++i)
    for (std::size_t j = 0; j < modes; ++j) {
      q(i, j) = state.y(2 * i, j);
      p(i, j) = state.y(2 * i + 1, j);
    }
}

SpectralState reinterleave(const Mat& q, const Mat& p) {
  if (!q.same_shape(p))
    throw std::invalid_argument("reinterleave: q/p shape mismatch");
  SpectralState state;
  state.n = static_cast<int>(q.rows());
  state.y.resize(2 * q.rows(), q.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) {
      state.y(2 * i, j) = q(i, j);
      state.y(2 * i + 1, j) = p(i, j);
    }
  return state;
}

BlockMatrices build_blocks(const ManakovProblem& problem) {
  const int n = problem.n;
  BlockMatrices blocks;
  blocks.beta2.resize(2 * n, 2 * n);
  blocks.gamma2.resize(2 * n, 2 * n);
  blocks.J.resize(2 * n, 2 * n);
  blocks.Q.resize(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    blocks.beta2(2 * i, 2 * i) = problem.beta[i];
    blocks.beta2(2 * i + 1, 2 * i + 1) = problem.beta[i];
    blocks.J(2 * i, 2 * i + 1) = 1.0;
    blocks.J(2 * i + 1, 2 * i) = -1.0;
    blocks.Q(2 * i, 2 * i) = 1.0;
    blocks.Q(2 * i, 2 * i + 1) = 1.0;
    blocks.Q(2 * i + 1, 2 * i) = 1.0;
    blocks.Q(2 * i + 1, 2 * i + 1) = 1.0;
    for (int j = 0; j < n; ++j) {
      blocks.gamma2(2 * i, 2 * j) = problem.gamma(i, j);
      blocks.gamma2(2 * i + 1, 2 * j + 1) = problem.gamma(i, j);
    }
  }
  return blocks;
}

SpectralState initial_state(const ManakovProblem& problem,
                            const FourierBasis& basis) {
  Mat samples(basis.m, 2 * problem.n);
  for (int i = 0; i < basis.m; ++i) {
    const auto values = problem.psi0(basis.nodes[i]);
    if (values.size() != static_cast<std::size_t>(problem.n))
      throw std::invalid_argument("initial_state: psi0 returned wrong arity");
    for (int c = 0; c < problem.n; ++c) {
      samples(i, 2 * c) = values[c].real();
      samples(i, 2 * c + 1) = values[c].imag();
    }
  }
  SpectralState state;
  state.n = problem.n;
  state.y = project(basis, samples);
  return state;
}

void rhs_stacked(const ManakovProblem& problem, const FourierBasis& basis,
                 const Mat& ys, int nblocks, Mat& out) {
  const int n = problem.n;
  const std::size_t R = static_cast<std::size_t>(nblocks) * 2 * n;
  if (ys.rows() != R || ys.cols() != static_cast<std::size_t>(basis.modes))
    throw std::invalid_argument("rhs_stacked: stacked state shape mismatch");
  out.resize(R, basis.modes);

  static thread_local Mat Zt;  // nodal field values, m x R
  synth_nodes(basis, ys, Zt);

  // Pointwise cubic coupling g = [gamma (u^2+v^2)] o (u, v), evaluated in
  // place on the nodal values; the quadrature weight is folded in here so
  // the projection below is a plain accumulation.
  std::vector<double> s2(n), gw(n);
  for (int i = 0; i < basis.m; ++i) {
    double* z = Zt.row(i);
    for (int blk = 0; blk < nblocks; ++blk) {
      double* zb = z + blk * 2 * n;
      for (int c = 0; c < n; ++c)
        s2[c] = zb[2 * c] * zb[2 * c] + zb[2 * c + 1] * zb[2 * c + 1];
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int d = 0; d < n; ++d) acc += problem.gamma(c, d) * s2[d];
        gw[c] = basis.wq * acc;
      }
      for (int c = 0; c < n; ++c) {
        zb[2 * c] *= gw[c];
        zb[2 * c + 1] *= gw[c];
      }
    }
  }

  // G = projection of the cubic term (accumulated rank-1 updates), written
  // straight into `out`.
  out.fill(0.0);
  const auto& ops = kernels::active();
  for (int i = 0; i < basis.m; ++i)
    ops.block_axpy(out.data(), basis.modes, R, Zt.row(i), basis.W.row(i),
                   basis.modes);

  // out = J [ beta2 y D^2 - G ]: componentwise
  //   f_q = beta_c d^2 o p - G_p,   f_p = -beta_c d^2 o q + G_q.
  for (int blk = 0; blk < nblocks; ++blk)
    for (int c = 0; c < n; ++c) {
      const std::size_t rq = static_cast<std::size_t>(blk) * 2 * n + 2 * c;
      const std::size_t rp = rq + 1;
      const double bc = problem.beta[c];
      double* fq = out.row(rq);
      double* fp = out.row(rp);
      const double* q = ys.row(rq);
      const double* p = ys.row(rp);
      for (int j = 0; j < basis.modes; ++j) {
        const double gq = fq[j];
        const double gp = fp[j];
        fq[j] = bc * basis.d2[j] * p[j] - gp;
        fp[j] = -bc * basis.d2[j] * q[j] + gq;
      }
    }
}

Mat rhs(const ManakovProblem& problem, const FourierBasis& basis, const Mat& y) {
  check_state_shape(problem, basis, y, "rhs");
  Mat out;
  rhs_stacked(problem, basis, y, 1, out);
  return out;
}

double hamiltonian(const ManakovProblem& problem, const FourierBasis& basis,
                   const Mat& y) {
  check_state_shape(problem, basis, y, "hamiltonian");
  const int n2 = 2 * problem.n;
  const BlockMatrices blocks = build_blocks(problem);

  // Quadratic part: 1/2 sum_j d_j^2 y_j' beta2 y_j over columns.
  double quad = 0.0;
  for (int j = 0; j < basis.modes; ++j) {
    double acc = 0.0;
    for (int r = 0; r < n2; ++r) {
      double row = 0.0;
      for (int t = 0; t < n2; ++t) row += blocks.beta2(r, t) * y(t, j);
      acc += y(r, j) * row;
    }
    quad += basis.d2[j] * acc;
  }

  // Quartic part: -(1/8) integral [Q (y w)^2]' gamma2 [Q (y w)^2].
  static thread_local Mat Zt;
  synth_nodes(basis, y, Zt);
  std::vector<double> u2(n2), Qu(n2), gQu(n2);
  double quart = 0.0;
  for (int i = 0; i < basis.m; ++i) {
    const double* z = Zt.row(i);
    for (int r = 0; r < n2; ++r) u2[r] = z[r] * z[r];
    for (int r = 0; r < n2; ++r) {
      double acc = 0.0;
      for (int t = 0; t < n2; ++t) acc += blocks.Q(r, t) * u2[t];
      Qu[r] = acc;
    }
    for (int r = 0; r < n2; ++r) {
      double acc = 0.0;
      for (int t = 0; t < n2; ++t) acc += blocks.gamma2(r, t) * Qu[t];
      gQu[r] = acc;
    }
    double val = 0.0;
    for (int r = 0; r < n2; ++r) val += Qu[r] * gQu[r];
    quart += val;
  }

  return 0.5 * quad - 0.125 * basis.wq * quart;
}

double hamiltonian_qp(const ManakovProblem& problem, const FourierBasis& basis,
                      const Mat& y) {
  check_state_shape(problem, basis, y, "hamiltonian_qp");
  const int n = problem.n;

  double quad = 0.0;
  for (int c = 0; c < n; ++c)
    for (int j = 0; j < basis.modes; ++j)
      quad += problem.beta[c] * basis.d2[j] *
              (y(2 * c, j) * y(2 * c, j) + y(2 * c + 1, j) * y(2 * c + 1, j));

  // Deliberately plain nested loops (no shared synthesis helper): this is
  // the cross-check path for the block-matrix form above.
  double quart = 0.0;
  std::vector<double> s2(n);
  for (int i = 0; i < basis.m; ++i) {
    for (int c = 0; c < n; ++c) {
      double u = 0.0, v = 0.0;
      for (int j = 0; j < basis.modes; ++j) {
        u += y(2 * c, j) * basis.W(i, j);
        v += y(2 * c + 1, j) * basis.W(i, j);
      }
      s2[c] = u * u + v * v;
    }
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) quart += s2[c] * problem.gamma(c, d) * s2[d];
  }

  return 0.5 * quad - 0.25 * basis.wq * quart;
}

Invariants invariants(const ManakovProblem& problem, const FourierBasis& basis,
                      const Mat& y) {
  check_state_shape(problem, basis, y, "invariants");
  const int n = problem.n;
  Invariants inv;
  inv.Mi.assign(n, 0.0);
  for (int c = 0; c < n; ++c) {
    double acc = 0.0;
    const double* q = y.row(2 * c);
    const double* p = y.row(2 * c + 1);
    for (int j = 0; j < basis.modes; ++j) acc += q[j] * q[j] + p[j] * p[j];
    inv.Mi[c] = acc;
    inv.M += acc;
  }

  // K = 2 sum_{r=1}^{N} d_{2r} y_{2r-1}' J y_{2r}; per component pair the
  // product is q_{2r-1} p_{2r} - p_{2r-1} q_{2r}.  This coefficient-space
  // expression equals the quadrature of u_x' v - v_x' u.
  double K = 0.0;
  for (int r = 1; r <= basis.N; ++r) {
    const double dr = basis.dj[2 * r];
    double acc = 0.0;
    for (int c = 0; c < n; ++c)
      acc += y(2 * c, 2 * r - 1) * y(2 * c + 1, 2 * r) -
             y(2 * c + 1, 2 * r - 1) * y(2 * c, 2 * r);
    K += dr * acc;
  }
  inv.K = 2.0 * K;

  inv.H = hamiltonian(problem, basis, y);
  return inv;
}

double solution_error(const Mat& y, const Mat& reference) {
  if (!y.same_shape(reference))
    throw std::invalid_argument("solution_error: shape mismatch");
  return maxabs_diff(y, reference);
}

double solution_error(const SpectralState& y, const SpectralState& reference) {
  return solution_error(y.y, reference.y);
}

double solution_error_padded(const Mat& y, const Mat& reference) {
  if (y.rows() != reference.rows() || y.cols() > reference.cols())
    throw std::invalid_argument("solution_error_padded: incompatible shapes");
  double r = 0.0;
  for (std::size_t i = 0; i < y.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j)
      r = std::max(r, std::fabs(y(i, j) - reference(i, j)));
    for (std::size_t j = y.cols(); j < reference.cols(); ++j)
      r = std::max(r, std::fabs(reference(i, j)));
  }
  return r;
}

}  // namespace manakov
