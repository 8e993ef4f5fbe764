#pragma once

// Metaplectic operators σ(k), k ∈ S, on Fock space through their Gaussian kernels,
// the infinitesimal operators dσ(X), and their Berezin symbols.

#include <cmath>

#include "metaweyl/gaussint.hpp"
#include "metaweyl/heisenberg.hpp"
#include "metaweyl/polynomial.hpp"
#include "metaweyl/sympgroup.hpp"

namespace metaweyl {

/// Kernel of σ(k): c = (det P)^{-1/2}, α = conj(Q)P^{-1}, β = P^{-t}, γ = -P^{-1}Q.
inline GaussianKernel sigma_kernel(const SuBlocks& k, double lambda) {
  require_su(k);
  const CMat pinv = inverse(k.P);
  GaussianKernel K;
  K.n = k.n;
  K.lambda = lambda;
  K.c = 1.0 / principal_sqrt(det(k.P));
  K.alpha = k.Q.conjugate() * pinv;
  K.beta = pinv.transpose();
  K.gamma = -pinv * k.Q;
  K.alpha = (0.5 * (K.alpha + K.alpha.transpose())).eval();
  K.gamma = (0.5 * (K.gamma + K.gamma.transpose())).eval();
  return K;
}

struct IntertwiningResidual {
  double residual = 0.0;
  double lhs_abs = 0.0;
};

/// Both sides of
///   exp(-(λ/4)|kz0|² + (λ/2) conj(kz0) z) b_k(z - kz0, w)
///     = exp(-(λ/4)|z0|² - (λ/2) conj(w) z0) b_k(z, w + z0).
inline IntertwiningResidual verify_intertwining(const SuBlocks& k, const CVec& z0, const CVec& z, const CVec& w,
                                                double lambda) {
  const GaussianKernel b = sigma_kernel(k, lambda);
  const CVec kz0 = k.act(z0);
  const CPoint zl = to_point(z - kz0), wl = to_point(w), zr = to_point(z), wr = to_point(w + z0);
  const cplx lhs = std::exp(-0.25 * lambda * kz0.squaredNorm() + 0.5 * lambda * (kz0.conjugate().transpose() * z)(0, 0)) *
                   b(zl, wl);
  const cplx rhs =
      std::exp(-0.25 * lambda * z0.squaredNorm() - 0.5 * lambda * (w.conjugate().transpose() * z0)(0, 0)) * b(zr, wr);
  return {std::abs(lhs - rhs), std::abs(lhs)};
}

struct CocycleResult {
  int sign = 1;
  cplx scalar;              // composed = scalar · σ(kk') kernel
  double param_distance;    // (α, β, γ) mismatch between composed and σ(kk')
  cplx alpha_sign;          // 1/α(k,k') from the determinant relation at m = -1/2
};

/// Measures the sign s with σ(k)σ(k') = s σ(kk') by composing the kernels.
inline CocycleResult sigma_cocycle_sign(const SuBlocks& k1, const SuBlocks& k2, double lambda) {
  const GaussianKernel composed = compose_kernels(sigma_kernel(k1, lambda), sigma_kernel(k2, lambda));
  const SuBlocks prod = su_mul(k1, k2);
  const GaussianKernel target = sigma_kernel(prod, lambda);
  CocycleResult r;
  r.scalar = composed.c / target.c;
  GaussianKernel rescaled = target;
  rescaled.c = composed.c;
  r.param_distance = kernel_distance(composed, rescaled);
  if (r.param_distance > 1e-8) {
    throw Error(Errc::not_unimodular, "composed kernel is not proportional to the product kernel");
  }
  if (std::abs(r.scalar - 1.0) <= 1e-8) {
    r.sign = 1;
  } else if (std::abs(r.scalar + 1.0) <= 1e-8) {
    r.sign = -1;
  } else {
    throw Error(Errc::not_unimodular, "relating scalar is not ±1");
  }
  // (det P'')^m = α (det P)^m (det P')^m det(P^{-1} P'' P'^{-1})^{-1/2}, m = -1/2.
  const cplx dpp = principal_sqrt(det(prod.P));
  const cplx d1 = principal_sqrt(det(k1.P));
  const cplx d2 = principal_sqrt(det(k2.P));
  const cplx dmid = principal_sqrt(det(inverse(k1.P) * prod.P * inverse(k2.P)));
  const cplx alpha = (1.0 / dpp) / ((1.0 / d1) * (1.0 / d2) * (1.0 / dmid));
  r.alpha_sign = 1.0 / alpha;
  return r;
}

struct AdjointResidual {
  double conj_same_args = 0.0;     // |b_{k^{-1}}(z,w) - conj b_k(z,w)|
  double conj_swapped_args = 0.0;  // |b_{k^{-1}}(z,w) - conj b_k(w,z)|
};

inline AdjointResidual sigma_adjoint_check(const SuBlocks& k, const CVec& z, const CVec& w, double lambda) {
  const GaussianKernel b = sigma_kernel(k, lambda);
  const GaussianKernel binv = sigma_kernel(su_inv(k), lambda);
  const CPoint zp = to_point(z), wp = to_point(w);
  const cplx v = binv(zp, wp);
  return {std::abs(v - std::conj(b(zp, wp))), std::abs(v - std::conj(b(wp, zp)))};
}

/// Kernel of dσ(X): (-½Tr A + (λ/4) z conj(B) z - (λ/2)(Az)conj(w) - (λ/4) conj(w) B conj(w)) e^{(λ/2) z conj(w)}.
struct DsigmaKernel {
  int n = 0;
  double lambda = 1.0;
  CMat A;
  CMat B;

  cplx prefactor_split(std::span<const cplx> z, std::span<const cplx> wh) const {
    const CMat Bb = B.conjugate();
    const cplx tr = A.trace();
    return -0.5 * tr + 0.25 * lambda * bilinear(z, Bb, z) - 0.5 * lambda * bilinear(wh, A, z) -
           0.25 * lambda * bilinear(wh, B, wh);
  }

  cplx eval_split(std::span<const cplx> z, std::span<const cplx> wh) const {
    return prefactor_split(z, wh) * std::exp(0.5 * lambda * dot(z, wh));
  }

  cplx operator()(std::span<const cplx> z, std::span<const cplx> w) const {
    const CPoint wh = conj_point(w);
    return eval_split(z, wh);
  }
};

inline DsigmaKernel dsigma_kernel(const SuLie& x, double lambda) {
  require_su_lie(x);
  return {x.n, lambda, x.A, x.B};
}

/// (dσ(X)f)(z) = (-½Tr A + (λ/4) z conj(B) z) f - Σ (Az)_j ∂_j f - (1/λ) Σ b_jk ∂_j ∂_k f
/// on polynomials in z.
inline Polynomial dsigma_apply(const SuLie& x, const Polynomial& f, double lambda) {
  require_su_lie(x);
  const int n = x.n;
  if (f.nvars() != n) throw Error(Errc::shape_error, "polynomial arity must equal n");
  Polynomial mult = Polynomial::constant(n, -0.5 * x.A.trace());
  const CMat Bb = x.B.conjugate();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      mult += Polynomial::variable(n, j) * Polynomial::variable(n, k) * (0.25 * lambda * Bb(j, k));
  Polynomial out = mult * f;
  for (int j = 0; j < n; ++j) {
    Polynomial az(n);
    for (int k = 0; k < n; ++k) az += Polynomial::variable(n, k) * x.A(j, k);
    out -= az * f.derivative(j);
  }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) out -= f.derivative(j).derivative(k) * (x.B(j, k) / lambda);
  return out;
}

/// S_λ(σ(k))(z) = (det P)^{-1/2} exp((λ/4)(z conj(Q)P^{-1} z + 2 conj(z)(P^{-1} - I)z - conj(z) P^{-1}Q conj(z))).
inline cplx berezin_symbol_sigma(const SuBlocks& k, const CVec& z, double lambda) {
  require_su(k);
  const CMat pinv = inverse(k.P);
  const CVec zb = z.conjugate();
  const cplx e = bilinear(z, k.Q.conjugate() * pinv, z) + 2.0 * bilinear(zb, pinv - identity(k.n), z) -
                 bilinear(zb, pinv * k.Q, zb);
  return std::exp(0.25 * lambda * e) / principal_sqrt(det(k.P));
}

/// S_λ(dσ(X))(z) = -½Tr A + (λ/4) z conj(B) z - (λ/2)(Az) conj(z) - (λ/4) conj(z) B conj(z).
inline cplx berezin_symbol_dsigma(const SuLie& x, const CVec& z, double lambda) {
  require_su_lie(x);
  const CVec zb = z.conjugate();
  return -0.5 * x.A.trace() + 0.25 * lambda * bilinear(z, x.B.conjugate(), z) - 0.5 * lambda * bilinear(zb, x.A, z) -
         0.25 * lambda * bilinear(zb, x.B, zb);
}

}  // namespace metaweyl
