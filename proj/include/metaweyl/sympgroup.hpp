#pragma once

// Sp(n,R), the group S = Sp(n,C) ∩ SU(n,n) of block matrices (P Q; conj Q conj P),
// their Lie algebras, and the conjugation k = U g U^{-1} between the two pictures.

#include <string>
#include <utility>
#include <vector>

#include "metaweyl/matcore.hpp"
#include "metaweyl/random.hpp"

namespace metaweyl {

struct ValidationReport {
  std::vector<std::pair<std::string, double>> residuals;
  double tol = 0.0;

  double max_residual() const {
    double m = 0.0;
    for (const auto& [name, r] : residuals) m = std::max(m, r);
    return m;
  }
  bool ok() const {
    for (const auto& [name, r] : residuals)
      if (!(r <= tol)) return false;
    return true;
  }
  std::string describe() const {
    std::string s;
    for (const auto& [name, r] : residuals) {
      if (!s.empty()) s += ", ";
      s += name + "=" + std::to_string(r);
    }
    return s + " (tol " + std::to_string(tol) + ")";
  }
};

/// Real symplectic matrix g with g^t J g = J.
struct SpReal {
  int n = 0;
  RMat g;

  RMat a() const { return g.topLeftCorner(n, n); }
  RMat b() const { return g.topRightCorner(n, n); }
  RMat c() const { return g.bottomLeftCorner(n, n); }
  RMat d() const { return g.bottomRightCorner(n, n); }
  CMat complex() const { return g.cast<cplx>(); }
};

/// Element k = (P Q; conj Q conj P) of S.
struct SuBlocks {
  int n = 0;
  CMat P;
  CMat Q;

  CMat full() const {
    CMat k(2 * n, 2 * n);
    k.topLeftCorner(n, n) = P;
    k.topRightCorner(n, n) = Q;
    k.bottomLeftCorner(n, n) = Q.conjugate();
    k.bottomRightCorner(n, n) = P.conjugate();
    return k;
  }

  /// kz = P z + Q conj(z).
  CVec act(const CVec& z) const { return P * z + Q * z.conjugate(); }
};

/// X = (A B; C -A^t) in sp(n,R), B and C symmetric.
struct SpLieReal {
  int n = 0;
  RMat A;
  RMat B;
  RMat C;

  RMat full() const {
    RMat x(2 * n, 2 * n);
    x.topLeftCorner(n, n) = A;
    x.topRightCorner(n, n) = B;
    x.bottomLeftCorner(n, n) = C;
    x.bottomRightCorner(n, n) = -A.transpose();
    return x;
  }
  SpLieReal scaled(double t) const { return {n, t * A, t * B, t * C}; }
};

/// X = (A B; conj B conj A), A skew-Hermitian, B symmetric.
struct SuLie {
  int n = 0;
  CMat A;
  CMat B;

  CMat full() const {
    CMat x(2 * n, 2 * n);
    x.topLeftCorner(n, n) = A;
    x.topRightCorner(n, n) = B;
    x.bottomLeftCorner(n, n) = B.conjugate();
    x.bottomRightCorner(n, n) = A.conjugate();
    return x;
  }
  SuLie scaled(double t) const { return {n, t * A, t * B}; }
};

// ---------------------------------------------------------------------------
// Validation

inline ValidationReport validate_sp(const SpReal& s, double base = 1e-10) {
  ValidationReport r;
  const RMat j = j_matrix_real(s.n);
  if (s.g.rows() != 2 * s.n || s.g.cols() != 2 * s.n) {
    r.residuals.emplace_back("shape", std::numeric_limits<double>::infinity());
    return r;
  }
  r.tol = structural_tol(s.g.norm() * s.g.norm(), base);
  r.residuals.emplace_back("gtJg-J", (s.g.transpose() * j * s.g - j).norm());
  return r;
}

inline ValidationReport validate_su(const SuBlocks& k, double base = 1e-10) {
  ValidationReport r;
  const auto n = k.n;
  if (k.P.rows() != n || k.P.cols() != n || k.Q.rows() != n || k.Q.cols() != n) {
    r.residuals.emplace_back("shape", std::numeric_limits<double>::infinity());
    return r;
  }
  const CMat id = identity(n);
  const double norm = k.P.norm() + k.Q.norm();
  r.tol = structural_tol(norm * norm, base);
  const CMat Pa = k.P.adjoint();
  r.residuals.emplace_back("PP*-QQ*-I", (k.P * Pa - k.Q * k.Q.adjoint() - id).norm());
  r.residuals.emplace_back("PQt-QPt", (k.P * k.Q.transpose() - k.Q * k.P.transpose()).norm());
  r.residuals.emplace_back("P*P-QtQbar-I", (Pa * k.P - k.Q.transpose() * k.Q.conjugate() - id).norm());
  r.residuals.emplace_back("P*Q-QtPbar", (Pa * k.Q - k.Q.transpose() * k.P.conjugate()).norm());
  return r;
}

inline ValidationReport validate_sp_lie(const SpLieReal& x, double base = 1e-10) {
  ValidationReport r;
  if (x.A.rows() != x.n || x.B.rows() != x.n || x.C.rows() != x.n || x.A.cols() != x.n ||
      x.B.cols() != x.n || x.C.cols() != x.n) {
    r.residuals.emplace_back("shape", std::numeric_limits<double>::infinity());
    return r;
  }
  const RMat full = x.full();
  const RMat j = j_matrix_real(x.n);
  r.tol = structural_tol(full.norm(), base);
  r.residuals.emplace_back("B-Bt", (x.B - x.B.transpose()).norm());
  r.residuals.emplace_back("C-Ct", (x.C - x.C.transpose()).norm());
  r.residuals.emplace_back("XtJ+JX", (full.transpose() * j + j * full).norm());
  return r;
}

inline ValidationReport validate_su_lie(const SuLie& x, double base = 1e-10) {
  ValidationReport r;
  if (x.A.rows() != x.n || x.A.cols() != x.n || x.B.rows() != x.n || x.B.cols() != x.n) {
    r.residuals.emplace_back("shape", std::numeric_limits<double>::infinity());
    return r;
  }
  r.tol = structural_tol(x.A.norm() + x.B.norm(), base);
  r.residuals.emplace_back("A*+A", (x.A.adjoint() + x.A).norm());
  r.residuals.emplace_back("B-Bt", (x.B - x.B.transpose()).norm());
  return r;
}

inline const SpReal& require_sp(const SpReal& g) {
  const auto rep = validate_sp(g);
  if (!rep.ok()) throw Error(Errc::not_symplectic, rep.describe());
  return g;
}

inline const SuBlocks& require_su(const SuBlocks& k) {
  const auto rep = validate_su(k);
  if (!rep.ok()) throw Error(Errc::not_in_s, rep.describe());
  return k;
}

inline const SpLieReal& require_sp_lie(const SpLieReal& x) {
  const auto rep = validate_sp_lie(x);
  if (!rep.ok()) throw Error(Errc::not_in_lie, rep.describe());
  return x;
}

inline const SuLie& require_su_lie(const SuLie& x) {
  const auto rep = validate_su_lie(x);
  if (!rep.ok()) throw Error(Errc::not_in_lie, rep.describe());
  return x;
}

// ---------------------------------------------------------------------------
// Conversions between the real and complex pictures

inline SuBlocks su_from_sp(const SpReal& s) {
  require_sp(s);
  const CMat A = s.a().cast<cplx>(), B = s.b().cast<cplx>(), C = s.c().cast<cplx>(), D = s.d().cast<cplx>();
  SuBlocks k{s.n, 0.5 * (A + D + kI * (C - B)), 0.5 * (A - D + kI * (C + B))};
  return k;
}

inline SpReal sp_from_su(const SuBlocks& k) {
  require_su(k);
  const CMat g = u_inverse(k.n) * k.full() * u_matrix(k.n);
  if (g.imag().norm() > structural_tol(g.norm(), 1e-9)) {
    throw Error(Errc::not_in_s, "U^{-1} k U is not real");
  }
  return {k.n, g.real()};
}

/// U X U^{-1} for X in sp(n,R); same block formulas as the group map.
inline SuLie su_lie_from_sp_lie(const SpLieReal& x) {
  require_sp_lie(x);
  const CMat A = x.A.cast<cplx>(), B = x.B.cast<cplx>(), C = x.C.cast<cplx>();
  const CMat D = -A.transpose();
  return {x.n, 0.5 * (A + D + kI * (C - B)), 0.5 * (A - D + kI * (C + B))};
}

inline SpLieReal sp_lie_from_su_lie(const SuLie& x) {
  require_su_lie(x);
  const CMat full = u_inverse(x.n) * x.full() * u_matrix(x.n);
  const RMat r = full.real();
  const int n = x.n;
  return {n, r.topLeftCorner(n, n), r.topRightCorner(n, n), r.bottomLeftCorner(n, n)};
}

inline SuBlocks su_from_full(const CMat& k) {
  require_square(k, "su_from_full");
  if (k.rows() % 2 != 0) throw Error(Errc::shape_error, "odd dimension");
  const auto n = k.rows() / 2;
  return {static_cast<int>(n), k.topLeftCorner(n, n), k.topRightCorner(n, n)};
}

// ---------------------------------------------------------------------------
// Group operations

inline SpReal sp_mul(const SpReal& a, const SpReal& b) {
  if (a.n != b.n) throw Error(Errc::shape_error, "sp_mul: dimension mismatch");
  return {a.n, a.g * b.g};
}

/// g^{-1} = -J g^t J.
inline SpReal sp_inv(const SpReal& s) {
  require_sp(s);
  const RMat j = j_matrix_real(s.n);
  return {s.n, -j * s.g.transpose() * j};
}

inline SuBlocks su_mul(const SuBlocks& a, const SuBlocks& b) {
  if (a.n != b.n) throw Error(Errc::shape_error, "su_mul: dimension mismatch");
  return {a.n, a.P * b.P + a.Q * b.Q.conjugate(), a.P * b.Q + a.Q * b.P.conjugate()};
}

/// k^{-1} = (P* -Q^t; -Q* P^t).
inline SuBlocks su_inv(const SuBlocks& k) {
  require_su(k);
  return {k.n, k.P.adjoint(), -k.Q.transpose()};
}

inline SuBlocks su_identity(int n) { return {n, identity(n), CMat::Zero(n, n)}; }
inline SpReal sp_identity(int n) { return {n, RMat::Identity(2 * n, 2 * n)}; }

inline SpReal sp_exp(const SpLieReal& x) {
  require_sp_lie(x);
  return {x.n, mat_exp(x.full().cast<cplx>()).real()};
}

inline SuBlocks su_exp(const SuLie& x) {
  require_su_lie(x);
  return su_from_full(mat_exp(x.full()));
}

/// Rotation (cos t, sin t; -sin t, cos t) in each coordinate plane; P = e^{-it} I.
inline SpReal sp_rotation(int n, double theta) {
  RMat g = RMat::Zero(2 * n, 2 * n);
  g.topLeftCorner(n, n) = std::cos(theta) * RMat::Identity(n, n);
  g.bottomRightCorner(n, n) = std::cos(theta) * RMat::Identity(n, n);
  g.topRightCorner(n, n) = std::sin(theta) * RMat::Identity(n, n);
  g.bottomLeftCorner(n, n) = -std::sin(theta) * RMat::Identity(n, n);
  return {n, g};
}

/// n = 1 squeeze with P = cosh r, Q = sinh r.
inline SuBlocks su_squeeze(double r) {
  CMat P(1, 1), Q(1, 1);
  P(0, 0) = std::cosh(r);
  Q(0, 0) = std::sinh(r);
  return {1, P, Q};
}

// ---------------------------------------------------------------------------
// Random elements (single exponentials of algebra elements)

inline SpLieReal random_sp_lie(int n, std::uint64_t seed, double scale, std::uint64_t tag = 0) {
  Rng rng(seed, {0x5350u, tag});
  RMat A = rng.real_matrix(n, n, scale);
  RMat B = rng.real_matrix(n, n, scale);
  RMat C = rng.real_matrix(n, n, scale);
  B = 0.5 * (B + B.transpose()).eval();
  C = 0.5 * (C + C.transpose()).eval();
  return {n, A, B, C};
}

inline SpReal random_sp(int n, std::uint64_t seed, double scale, std::uint64_t tag = 0) {
  return sp_exp(random_sp_lie(n, seed, scale, tag));
}

inline SuBlocks random_su(int n, std::uint64_t seed, double scale, std::uint64_t tag = 0) {
  return su_from_sp(random_sp(n, seed, scale, tag));
}

inline SuLie random_su_lie(int n, std::uint64_t seed, double scale, std::uint64_t tag = 0) {
  return su_lie_from_sp_lie(random_sp_lie(n, seed, scale, tag));
}

}  // namespace metaweyl
