#pragma once

// The Jacobi group G = H_n ⋊ S, its complexification, the P⁺KᶜP⁻ factorization,
// the action on the domain D = {a(y, Y) : I - Y conj(Y) > 0}, and the kernel and
// automorphy factor of the holomorphic representations π_χ.

#include <cmath>

#include "metaweyl/heisenberg.hpp"
#include "metaweyl/matcore.hpp"
#include "metaweyl/random.hpp"
#include "metaweyl/sympgroup.hpp"

namespace metaweyl {

/// a(y, Y) with Y symmetric.
struct JacobiPoint {
  int n = 0;
  CVec y;
  CMat Y;
};

/// ((z0, conj z0), c, k) in G.
struct JacobiGroupElt {
  int n = 0;
  CVec z0;
  double c = 0.0;
  SuBlocks k;
};

/// ((z0, w0), c, (A B; C D)) in the complexification; (A B; C D) ∈ Sp(n, C).
struct JacobiGroupEltC {
  int n = 0;
  CVec z0;
  CVec w0;
  cplx c = 0.0;
  CMat A, B, C, D;

  CMat full() const {
    CMat k(2 * n, 2 * n);
    k.topLeftCorner(n, n) = A;
    k.topRightCorner(n, n) = B;
    k.bottomLeftCorner(n, n) = C;
    k.bottomRightCorner(n, n) = D;
    return k;
  }
};

/// χ((0, c, diag(P, conj P))) = e^{iλc} (det P)^m.
struct CharParams {
  double lambda = 1.0;
  double m = -0.5;

  /// Integer m with m + n + 1/2 < 0: the range where π_χ is a genuine unitary
  /// representation on a nonzero space.
  bool holomorphic_range(int n) const { return std::floor(m) == m && m + n + 0.5 < 0; }
};

inline JacobiPoint jacobi_origin(int n) { return {n, CVec::Zero(n), CMat::Zero(n, n)}; }

inline bool in_domain(const JacobiPoint& Z, double tol = 1e-12) {
  const CMat h = identity(Z.n) - Z.Y * Z.Y.conjugate();
  if ((Z.Y - Z.Y.transpose()).norm() > structural_tol(Z.Y.norm())) return false;
  return hermitian_part_min_pivot(h) > tol;
}

inline JacobiGroupEltC to_complex(const JacobiGroupElt& g) {
  return {g.n, g.z0, g.z0.conjugate(), cplx(g.c, 0.0), g.k.P, g.k.Q, g.k.Q.conjugate(), g.k.P.conjugate()};
}

inline JacobiGroupElt jacobi_identity(int n) { return {n, CVec::Zero(n), 0.0, su_identity(n)}; }

/// Group law: (z, c, k)(z', c', k') = (z + k z', c + c' + ½ω((z, z̄), k(z', z̄')), k k').
inline JacobiGroupElt jacobi_mul(const JacobiGroupElt& a, const JacobiGroupElt& b) {
  if (a.n != b.n) throw Error(Errc::shape_error, "jacobi_mul: dimension mismatch");
  const CVec kz = a.k.act(b.z0);
  const CVec za = a.z0, zab = a.z0.conjugate(), kzb = kz.conjugate();
  const cplx w = 0.5 * kI * (za.transpose() * kzb - kz.transpose() * zab)(0, 0);
  return {a.n, a.z0 + kz, a.c + b.c + 0.5 * w.real(), su_mul(a.k, b.k)};
}

inline JacobiGroupElt jacobi_inv(const JacobiGroupElt& g) {
  const SuBlocks kinv = su_inv(g.k);
  return {g.n, -kinv.act(g.z0), -g.c, kinv};
}

/// Complexified law: conj z replaced by the independent w component.
inline JacobiGroupEltC jacobi_mul_c(const JacobiGroupEltC& a, const JacobiGroupEltC& b) {
  if (a.n != b.n) throw Error(Errc::shape_error, "jacobi_mul_c: dimension mismatch");
  const CVec zp = a.A * b.z0 + a.B * b.w0;
  const CVec wp = a.C * b.z0 + a.D * b.w0;
  const cplx w = 0.5 * kI * ((a.z0.transpose() * wp)(0, 0) - (zp.transpose() * a.w0)(0, 0));
  const CMat k = a.full() * b.full();
  const int n = a.n;
  return {n,
          a.z0 + zp,
          a.w0 + wp,
          a.c + b.c + 0.5 * w,
          k.topLeftCorner(n, n),
          k.topRightCorner(n, n),
          k.bottomLeftCorner(n, n),
          k.bottomRightCorner(n, n)};
}

inline JacobiGroupEltC jacobi_inv_c(const JacobiGroupEltC& g) {
  const int n = g.n;
  const CMat j = j_matrix(n);
  const CMat kinv = -j * g.full().transpose() * j;
  CVec zw(2 * n);
  zw << g.z0, g.w0;
  const CVec m = -kinv * zw;
  return {n, m.head(n), m.tail(n), -g.c, kinv.topLeftCorner(n, n), kinv.topRightCorner(n, n),
          kinv.bottomLeftCorner(n, n), kinv.bottomRightCorner(n, n)};
}

struct PkpFactors {
  CVec y;
  CMat Y;
  cplx c;
  CMat P;
  CVec v;
  CMat V;
};

/// g = ((y,0),0,(I Y; 0 I)) · ((0,0),c,diag(P, P^{-t})) · ((0,v),0,(I 0; V I)), defined iff det D ≠ 0.
inline PkpFactors pkp_decompose(const JacobiGroupEltC& g) {
  const double scale = std::max(1.0, g.D.norm());
  if (std::abs(det(g.D)) <= 1e-12 * std::pow(scale, g.n)) {
    throw Error(Errc::no_decomposition, "det(D) vanishes");
  }
  PkpFactors f;
  const CMat dinv = inverse(g.D);
  f.Y = g.B * dinv;
  f.y = g.z0 - f.Y * g.w0;
  f.v = dinv * g.w0;
  f.V = dinv * g.C;
  f.P = dinv.transpose();
  f.c = g.c - 0.25 * kI * (f.y.transpose() * g.w0)(0, 0);
  return f;
}

inline JacobiGroupEltC pkp_recompose(const PkpFactors& f) {
  const int n = static_cast<int>(f.y.size());
  const CMat id = identity(n), zero = CMat::Zero(n, n);
  const CVec zv = CVec::Zero(n);
  const JacobiGroupEltC plus{n, f.y, zv, 0.0, id, f.Y, zero, id};
  const JacobiGroupEltC levi{n, zv, zv, f.c, f.P, zero, zero, inverse(f.P.transpose())};
  const JacobiGroupEltC minus{n, zv, f.v, 0.0, id, zero, f.V, id};
  return jacobi_mul_c(jacobi_mul_c(plus, levi), minus);
}

inline double jacobi_c_distance(const JacobiGroupEltC& a, const JacobiGroupEltC& b) {
  return (a.z0 - b.z0).norm() + (a.w0 - b.w0).norm() + std::abs(a.c - b.c) + (a.full() - b.full()).norm();
}

/// g · a(y, Y) = a(y', Y'), Y' = (AY+B)(CY+D)^{-1}, y' = z0 + Ay - Y'(w0 + Cy).
inline JacobiPoint jacobi_action_c(const JacobiGroupEltC& g, const JacobiPoint& Z) {
  const CMat denom = g.C * Z.Y + g.D;
  const CMat Yp = right_divide(g.A * Z.Y + g.B, denom);
  const CVec yp = g.z0 + g.A * Z.y - Yp * (g.w0 + g.C * Z.y);
  return {Z.n, yp, (0.5 * (Yp + Yp.transpose())).eval()};
}

inline JacobiPoint jacobi_action(const JacobiGroupElt& g, const JacobiPoint& Z) {
  JacobiPoint out = jacobi_action_c(to_complex(g), Z);
  if (!in_domain(out)) throw Error(Errc::domain_violation, "image leaves the domain I - Y conj(Y) > 0");
  return out;
}

/// K_χ(Z, W) = det(I - Y conj V)^m exp((λ/4)(2y R conj v + y R conj(V) y + conj(v) Y R conj v)),
/// R = (I - conj(V) Y)^{-1}.
inline cplx k_chi(const JacobiPoint& Z, const JacobiPoint& W, const CharParams& chi) {
  const int n = Z.n;
  const CMat id = identity(n);
  const CMat Vb = W.Y.conjugate();
  const CVec vb = W.y.conjugate();
  const CMat R = inverse(id - Vb * Z.Y);
  const cplx e = 2.0 * bilinear(Z.y, R, vb) + bilinear(Z.y, R * Vb, Z.y) + bilinear(vb, Z.Y * R, vb);
  return half_integer_power(det(id - Z.Y * Vb), chi.m) * std::exp(0.25 * chi.lambda * e);
}

/// J_χ(g, Z) = e^{iλc0} det(conj(Q)Y + conj P)^{-m}
///   × exp((λ/4)(z0 conj z0 + 2 conj(z0) P y + y P^t conj(Q) y - u (PY+Q)(conj(Q)Y + conj P)^{-1} u)),
/// u = conj z0 + conj(Q) y.
inline cplx j_chi(const JacobiGroupElt& g, const JacobiPoint& Z, const CharParams& chi) {
  const CMat& P = g.k.P;
  const CMat& Q = g.k.Q;
  const CMat Qb = Q.conjugate(), Pb = P.conjugate();
  const CVec zb = g.z0.conjugate();
  const CMat denom = Qb * Z.Y + Pb;
  const CVec u = zb + Qb * Z.y;
  const CMat T = right_divide(P * Z.Y + Q, denom);
  const cplx e = (g.z0.transpose() * zb)(0, 0) + 2.0 * bilinear(zb, P, Z.y) +
                 bilinear(Z.y, P.transpose() * Qb, Z.y) - bilinear(u, T, u);
  return std::exp(kI * chi.lambda * g.c) * half_integer_power(det(denom), -chi.m) *
         std::exp(0.25 * chi.lambda * e);
}

/// (π_χ(g) f)(Z) = J_χ(g^{-1}, Z)^{-1} f(g^{-1} · Z).
template <class F>
cplx pi_chi_apply(const JacobiGroupElt& g, F&& f, const JacobiPoint& Z, const CharParams& chi) {
  const JacobiGroupElt ginv = jacobi_inv(g);
  const JacobiPoint moved = jacobi_action_c(to_complex(ginv), Z);
  return f(moved) / j_chi(ginv, Z, chi);
}

/// B_k(a(y,0), a(v,0)) = J_χ(g^{-1}, Z)^{-1} K_χ(g^{-1}·Z, W) for g = ((0,0),0,k),
/// evaluated through the general action and automorphy factor.
inline cplx bk_via_jacobi(const SuBlocks& k, const CVec& y, const CVec& v, const CharParams& chi) {
  require_su(k);
  const int n = k.n;
  const JacobiGroupElt g{n, CVec::Zero(n), 0.0, k};
  const JacobiGroupElt ginv = jacobi_inv(g);
  const JacobiPoint Z{n, y, CMat::Zero(n, n)};
  const JacobiPoint W{n, v, CMat::Zero(n, n)};
  const JacobiPoint moved = jacobi_action_c(to_complex(ginv), Z);
  return k_chi(moved, W, chi) / j_chi(ginv, Z, chi);
}

// ---------------------------------------------------------------------------
// Random data

/// Point of D with operator norm of Y at most `ynorm` (< 1).
inline JacobiPoint random_jacobi_point(int n, Rng& rng, double yscale, double ynorm) {
  CVec y(n);
  for (int i = 0; i < n; ++i) y(i) = rng.complex_uniform(yscale);
  CMat Y = rng.complex_matrix(n, n, 1.0);
  Y = (0.5 * (Y + Y.transpose())).eval();
  Eigen::JacobiSVD<CMat> svd(Y);
  const double s = svd.singularValues()(0);
  if (s > 0) Y *= ynorm * rng.uniform() / s;
  return {n, y, Y};
}

inline JacobiGroupElt random_jacobi_elt(int n, Rng& rng, double zscale, double kscale) {
  const std::uint64_t sub = static_cast<std::uint64_t>(rng.uniform() * 1e15);
  return {n, to_vec(rng.point(n, zscale)), rng.uniform(-1.0, 1.0), random_su(n, sub, kscale)};
}

inline double point_distance(const JacobiPoint& a, const JacobiPoint& b) {
  return (a.y - b.y).norm() + (a.Y - b.Y).norm();
}

}  // namespace metaweyl
