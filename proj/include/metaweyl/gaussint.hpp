#pragma once

// Complex Gaussian integrals over C^n, Gaussian kernels on Fock space and their
// composition, and the block-matrix identities behind the Weyl-symbol formulas.

#include <cmath>
#include <numbers>

#include "metaweyl/matcore.hpp"
#include "metaweyl/quadrature.hpp"
#include "metaweyl/sympgroup.hpp"

namespace metaweyl {

/// exp(-(wAw + ŵDŵ + 2ŵBw)) exp(uw + vŵ) on C^n, ŵ = conj w.
struct GaussianIntegrand {
  int n = 0;
  CMat A;
  CMat B;
  CMat D;
  CVec u;
  CVec v;

  /// M = (A B^t; B D).
  CMat m_matrix() const {
    CMat m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = A;
    m.topRightCorner(n, n) = B.transpose();
    m.bottomLeftCorner(n, n) = B;
    m.bottomRightCorner(n, n) = D;
    return m;
  }

  /// N = U^t M U, the quadratic form in real coordinates (x, y).
  CMat n_matrix() const { return u_matrix(n).transpose() * m_matrix() * u_matrix(n); }

  cplx operator()(std::span<const cplx> w, std::span<const cplx> wh) const {
    const cplx quad = bilinear(w, A, w) + bilinear(wh, D, wh) + 2.0 * bilinear(wh, B, w);
    return std::exp(-quad + dot(u, w) + dot(v, wh));
  }
};

inline void check_shapes(const GaussianIntegrand& gi) {
  const auto n = gi.n;
  if (gi.A.rows() != n || gi.A.cols() != n || gi.B.rows() != n || gi.B.cols() != n || gi.D.rows() != n ||
      gi.D.cols() != n || gi.u.size() != n || gi.v.size() != n) {
    throw Error(Errc::shape_error, "GaussianIntegrand blocks must be n x n and vectors length n");
  }
  const double tol = structural_tol(gi.A.norm() + gi.D.norm());
  if ((gi.A - gi.A.transpose()).norm() > tol || (gi.D - gi.D.transpose()).norm() > tol) {
    throw Error(Errc::shape_error, "A and D must be symmetric");
  }
}

/// π^n det(N)^{-1/2} exp(¼ (u v) M^{-1} (u v)^t).
inline cplx gaussian_integral_closed(const GaussianIntegrand& gi) {
  check_shapes(gi);
  const CMat N = gi.n_matrix();
  if (!hermitian_part_positive_definite(N)) {
    throw Error(Errc::divergent_integral, "Re(N) is not positive definite");
  }
  const cplx root = det_powhalf_posreal(N);
  CVec uv(2 * gi.n);
  uv << gi.u, gi.v;
  const CVec sol = solve(gi.m_matrix(), uv);
  const cplx quad = (uv.transpose() * sol)(0, 0);
  return std::pow(std::numbers::pi, gi.n) / root * std::exp(0.25 * quad);
}

/// Quadrature value of the same integral (independent oracle).
inline cplx gaussian_integral_quadrature(const GaussianIntegrand& gi, int nodes) {
  check_shapes(gi);
  // Same integrand as gi(w, ŵ), with the blocks flattened for the inner loop.
  const int n = gi.n;
  std::vector<cplx> a(n * n), b(n * n), d(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a[i * n + j] = gi.A(i, j);
      b[i * n + j] = 2.0 * gi.B(i, j);
      d[i * n + j] = gi.D(i, j);
    }
  auto f = [&](std::span<const cplx> w, std::span<const cplx> wh) {
    cplx e{};
    for (int i = 0; i < n; ++i) {
      cplx ra{}, rd{}, rb{};
      for (int j = 0; j < n; ++j) {
        ra += a[i * n + j] * w[j];
        rd += d[i * n + j] * wh[j];
        rb += b[i * n + j] * w[j];
      }
      e += gi.u(i) * w[i] + gi.v(i) * wh[i] - w[i] * ra - wh[i] * (rd + rb);
    }
    return std::exp(e);
  };
  return integrate_cn_split(f, n, nodes);
}

// ---------------------------------------------------------------------------
// Gaussian kernels

/// K(z, w) = c exp((λ/4)(zαz + 2zβ conj(w) + conj(w)γ conj(w))).
struct GaussianKernel {
  int n = 0;
  double lambda = 1.0;
  cplx c = 1.0;
  CMat alpha;
  CMat beta;
  CMat gamma;

  /// Split form: wh stands for conj(w).
  cplx eval_split(std::span<const cplx> z, std::span<const cplx> wh) const {
    const cplx e = bilinear(z, alpha, z) + 2.0 * bilinear(z, beta, wh) + bilinear(wh, gamma, wh);
    return c * std::exp(0.25 * lambda * e);
  }

  cplx operator()(std::span<const cplx> z, std::span<const cplx> w) const {
    CPoint wh(w.begin(), w.end());
    for (auto& x : wh) x = std::conj(x);
    return eval_split(z, wh);
  }
};

inline GaussianKernel identity_kernel(int n, double lambda) {
  return {n, lambda, 1.0, CMat::Zero(n, n), identity(n), CMat::Zero(n, n)};
}

/// Largest parameter discrepancy between two kernels, relative to their size.
inline double kernel_distance(const GaussianKernel& a, const GaussianKernel& b) {
  const double scale = 1.0 + a.alpha.norm() + a.beta.norm() + a.gamma.norm();
  double d = (a.alpha - b.alpha).norm() + (a.beta - b.beta).norm() + (a.gamma - b.gamma).norm();
  d /= scale;
  return std::max(d, std::abs(a.c - b.c) / std::max(std::abs(a.c), 1e-300));
}

/// The integral ∫ K1(z,u) K2(u,w) e^{-λ|u|²/2} dμ_λ(u) as a lemgauss integrand in u,
/// with z and conj(w) kept symbolic (linear terms set to zero here).
inline GaussianIntegrand composition_integrand(const GaussianKernel& k1, const GaussianKernel& k2) {
  const double q = k1.lambda / 4.0;
  const int n = k1.n;
  return {n, -q * k2.alpha, q * identity(n), -q * k1.gamma, CVec::Zero(n), CVec::Zero(n)};
}

/// Exact composition of Gaussian kernels through the closed Gaussian integral.
/// The linear terms u = (λ/2)β₂ conj(w), v = (λ/2)β₁^t z are carried symbolically
/// by reading the new quadratic coefficients off the blocks of M^{-1}.
inline GaussianKernel compose_kernels(const GaussianKernel& k1, const GaussianKernel& k2) {
  if (k1.n != k2.n) throw Error(Errc::shape_error, "compose_kernels: dimension mismatch");
  if (k1.lambda != k2.lambda) throw Error(Errc::bad_config, "compose_kernels: lambda mismatch");
  const int n = k1.n;
  const double lambda = k1.lambda;
  const double q = lambda / 4.0;
  const GaussianIntegrand gi = composition_integrand(k1, k2);
  const CMat N = gi.n_matrix();
  if (!hermitian_part_positive_definite(N)) {
    throw Error(Errc::divergent_integral, "composition integral does not converge");
  }
  const CMat minv = inverse(gi.m_matrix());
  const CMat m11 = minv.topLeftCorner(n, n);
  const CMat m21 = minv.bottomLeftCorner(n, n);
  const CMat m22 = minv.bottomRightCorner(n, n);
  GaussianKernel out;
  out.n = n;
  out.lambda = lambda;
  out.alpha = k1.alpha + q * k1.beta * m22 * k1.beta.transpose();
  out.beta = q * k1.beta * m21 * k2.beta;
  out.gamma = k2.gamma + q * k2.beta.transpose() * m11 * k2.beta;
  out.alpha = (0.5 * (out.alpha + out.alpha.transpose())).eval();
  out.gamma = (0.5 * (out.gamma + out.gamma.transpose())).eval();
  out.c = k1.c * k2.c * std::pow(lambda / 2.0, n) / det_powhalf_posreal(N);
  return out;
}

/// Pointwise quadrature of the composition integral at (z, w).
inline cplx compose_quadrature(const GaussianKernel& k1, const GaussianKernel& k2, std::span<const cplx> z,
                               std::span<const cplx> w, int nodes) {
  const int n = k1.n;
  const double lambda = k1.lambda;
  CPoint wbar(w.begin(), w.end());
  for (auto& x : wbar) x = std::conj(x);
  auto integrand = [&](std::span<const cplx> u, std::span<const cplx> uh) {
    return k1.eval_split(z, uh) * k2.eval_split(u, wbar) * std::exp(-0.5 * lambda * dot(u, uh));
  };
  return integrate_cn_mu(integrand, n, lambda, nodes);
}

// ---------------------------------------------------------------------------
// Block-matrix identities

namespace detail {

inline CMat assemble(const CMat& a, const CMat& b, const CMat& c, const CMat& d) {
  const auto n = a.rows();
  CMat m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a;
  m.topRightCorner(n, n) = b;
  m.bottomLeftCorner(n, n) = c;
  m.bottomRightCorner(n, n) = d;
  return m;
}

}  // namespace detail

/// Residual of (a I-p^t; p-I d)(α β; γ δ)(a p^t-I; I-p d) = (4δ-a 3I-4γ-p^t; 3I-4β-p 4α+d)
/// where (α β; γ δ) inverts (-a I+p^t; I+p d).
inline double block_inverse_identity_residual(const CMat& a, const CMat& d, const CMat& p) {
  const auto n = a.rows();
  if (a.cols() != n || d.rows() != n || d.cols() != n || p.rows() != n || p.cols() != n) {
    throw Error(Errc::shape_error, "block identity expects n x n blocks");
  }
  const CMat id = identity(n);
  const CMat pt = p.transpose();
  const CMat inv = inverse(detail::assemble(-a, id + pt, id + p, d));
  const CMat al = inv.topLeftCorner(n, n), be = inv.topRightCorner(n, n);
  const CMat ga = inv.bottomLeftCorner(n, n), de = inv.bottomRightCorner(n, n);
  const CMat lhs = detail::assemble(a, id - pt, p - id, d) * inv * detail::assemble(a, pt - id, id - p, d);
  const CMat rhs = detail::assemble(4.0 * de - a, 3.0 * id - 4.0 * ga - pt, 3.0 * id - 4.0 * be - p, 4.0 * al + d);
  return (lhs - rhs).norm();
}

/// The matrix (-conj(Q)P^{-1}, I+P^{-t}; I+P^{-1}, P^{-1}Q) built from k.
inline CMat cayley_block_matrix(const SuBlocks& k) {
  const CMat id = identity(k.n);
  const CMat pinv = inverse(k.P);
  return detail::assemble(-k.Q.conjugate() * pinv, id + pinv.transpose(), id + pinv, pinv * k.Q);
}

/// Residual of ½ J (k-I)(k+I)^{-1} = (δ ½I-γ; ½I-β α) with (α β; γ δ) the inverse of
/// cayley_block_matrix(k).
inline double cayley_block_identity_residual(const SuBlocks& k) {
  require_su(k);
  const int n = k.n;
  const CMat lhs = 0.5 * j_matrix(n) * cayley(k.full());
  const CMat inv = inverse(cayley_block_matrix(k));
  const CMat id = identity(n);
  const CMat rhs = detail::assemble(inv.bottomRightCorner(n, n), 0.5 * id - inv.bottomLeftCorner(n, n),
                                    0.5 * id - inv.topRightCorner(n, n), inv.topLeftCorner(n, n));
  return (lhs - rhs).norm();
}

/// |det(cayley_block_matrix(k)) - (-1)^n det(P)^{-1} det(k+I)|.
inline double det_identity_residual(const SuBlocks& k) {
  require_su(k);
  const cplx lhs = det(cayley_block_matrix(k));
  const cplx rhs = (k.n % 2 == 0 ? 1.0 : -1.0) / det(k.P) * det(k.full() + identity(2 * k.n));
  return std::abs(lhs - rhs);
}

}  // namespace metaweyl
