#pragma once

// Dense complex matrix algebra plus the branch-sensitive scalar and matrix
// functions used throughout the library. Backed by Eigen.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "metaweyl/error.hpp"

namespace metaweyl {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// A point of C^n passed to pointwise evaluators.
using CPoint = std::vector<cplx>;

inline constexpr cplx kI{0.0, 1.0};

inline CMat identity(Eigen::Index n) { return CMat::Identity(n, n); }

/// J = [[0, I], [-I, 0]] of size 2n.
inline CMat j_matrix(Eigen::Index n) {
  CMat j = CMat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -CMat::Identity(n, n);
  return j;
}

inline RMat j_matrix_real(Eigen::Index n) { return j_matrix(n).real(); }

/// U = [[I, iI], [I, -iI]]; maps (x, y) to (z, conj z).
inline CMat u_matrix(Eigen::Index n) {
  CMat u(2 * n, 2 * n);
  u.topLeftCorner(n, n).setIdentity();
  u.topRightCorner(n, n) = kI * CMat::Identity(n, n);
  u.bottomLeftCorner(n, n).setIdentity();
  u.bottomRightCorner(n, n) = -kI * CMat::Identity(n, n);
  return u;
}

/// U^{-1} = (1/2) [[I, I], [-iI, iI]].
inline CMat u_inverse(Eigen::Index n) {
  CMat u(2 * n, 2 * n);
  u.topLeftCorner(n, n).setIdentity();
  u.topRightCorner(n, n).setIdentity();
  u.bottomLeftCorner(n, n) = -kI * CMat::Identity(n, n);
  u.bottomRightCorner(n, n) = kI * CMat::Identity(n, n);
  return 0.5 * u;
}

inline void require_square(const CMat& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(Errc::shape_error, std::string(what) + ": expected a square matrix, got " +
                                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

inline bool all_finite(const CMat& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

/// Absolute tolerance for structural checks: base * (1 + ||input||).
inline double structural_tol(double norm, double base = 1e-10) { return base * (1.0 + norm); }

/// Bilinear pairing zw = sum_k z_k w_k (no conjugation).
inline cplx dot(std::span<const cplx> z, std::span<const cplx> w) {
  cplx s{};
  for (std::size_t k = 0; k < z.size(); ++k) s += z[k] * w[k];
  return s;
}

/// z^t M w for complex vectors.
inline cplx bilinear(const CVec& z, const CMat& m, const CVec& w) { return (z.transpose() * m * w)(0, 0); }

/// z^t M w on raw spans; allocation-free for use inside quadrature loops.
inline cplx bilinear(std::span<const cplx> z, const CMat& m, std::span<const cplx> w) {
  cplx s{};
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    cplx row{};
    for (Eigen::Index j = 0; j < m.cols(); ++j) row += m(i, j) * w[static_cast<std::size_t>(j)];
    s += z[static_cast<std::size_t>(i)] * row;
  }
  return s;
}

inline cplx dot(const CVec& a, std::span<const cplx> b) {
  cplx s{};
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b[static_cast<std::size_t>(i)];
  return s;
}

inline CVec to_vec(std::span<const cplx> z) {
  CVec v(static_cast<Eigen::Index>(z.size()));
  for (std::size_t k = 0; k < z.size(); ++k) v(static_cast<Eigen::Index>(k)) = z[k];
  return v;
}

inline CPoint to_point(const CVec& v) { return CPoint(v.data(), v.data() + v.size()); }

// ---------------------------------------------------------------------------
// Scalars

/// Principal square root with Arg in (-pi, pi]; the negative real axis maps to +i*sqrt|c|.
inline cplx principal_sqrt(cplx c) {
  if (c == cplx{}) return {};
  // Normalize a signed zero imaginary part so that -1 - 0i is treated as Arg = pi.
  if (c.imag() == 0.0) {
    if (c.real() < 0.0) return {0.0, std::sqrt(-c.real())};
    return {std::sqrt(c.real()), 0.0};
  }
  const double r = std::sqrt(std::abs(c));
  const double arg = std::arg(c);
  return std::polar(r, 0.5 * arg);
}

/// c^m for m an integer or half-integer. Half-integer powers go through principal_sqrt.
inline cplx half_integer_power(cplx c, double m) {
  const double twice = 2.0 * m;
  const long long k = std::llround(twice);
  if (std::abs(twice - static_cast<double>(k)) > 1e-12) {
    throw Error(Errc::bad_config, "exponent must be an integer or half-integer");
  }
  if (k % 2 == 0) return std::pow(c, static_cast<int>(k / 2));
  const cplx root = principal_sqrt(c);
  if (root == cplx{} && k < 0) throw Error(Errc::singular_matrix, "negative power of zero");
  return std::pow(root, static_cast<int>(k));
}

// ---------------------------------------------------------------------------
// Linear algebra

inline cplx det(const CMat& m) {
  require_square(m, "det");
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

inline std::vector<cplx> eigenvalues(const CMat& m) {
  require_square(m, "eigenvalues");
  Eigen::ComplexEigenSolver<CMat> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw Error(Errc::singular_matrix, "eigenvalue iteration failed");
  const CVec& ev = solver.eigenvalues();
  return std::vector<cplx>(ev.data(), ev.data() + ev.size());
}

inline constexpr double kMaxCondition = 1e14;

/// Solves M X = B; refuses when the reciprocal condition estimate is below 1e-14.
inline CMat solve(const CMat& m, const CMat& b) {
  require_square(m, "solve");
  if (m.rows() != b.rows()) throw Error(Errc::shape_error, "solve: row mismatch");
  Eigen::PartialPivLU<CMat> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond * kMaxCondition > 1.0)) {
    throw Error(Errc::singular_matrix, "condition estimate exceeds 1e14");
  }
  return lu.solve(b);
}

inline CMat inverse(const CMat& m) { return solve(m, CMat::Identity(m.rows(), m.cols())); }

/// X B^{-1} computed as (B^{-t} X^t)^t.
inline CMat right_divide(const CMat& x, const CMat& b) {
  return solve(b.transpose(), x.transpose()).transpose();
}

inline CMat mat_exp(const CMat& m) {
  require_square(m, "mat_exp");
  return m.exp();
}

inline CMat mat_cosh(const CMat& m) {
  require_square(m, "mat_cosh");
  const CMat e = m.exp();
  const CMat einv = (-m).exp();
  return 0.5 * (e + einv);
}

inline CMat mat_sinh(const CMat& m) {
  require_square(m, "mat_sinh");
  return 0.5 * (m.exp() - (-m).exp());
}

/// sinh(M) cosh(M)^{-1}; SingularMatrix when cosh(M) is not invertible.
inline CMat mat_tanh(const CMat& m) {
  const CMat c = mat_cosh(m);
  const CMat s = mat_sinh(m);
  return right_divide(s, c);
}

inline CMat mat_cos(const CMat& m) { return mat_cosh(kI * m); }

/// sin(M) cos(M)^{-1} = -i tanh(iM).
inline CMat mat_tan(const CMat& m) { return -kI * mat_tanh(kI * m); }

/// (g - I)(g + I)^{-1}.
inline CMat cayley(const CMat& g) {
  require_square(g, "cayley");
  const CMat id = identity(g.rows());
  const CMat plus = g + id;
  const double scale = std::max(1.0, plus.norm());
  const cplx d = det(plus);
  if (std::abs(d) <= 1e-12 * std::pow(scale, static_cast<double>(g.rows()))) {
    throw Error(Errc::cayley_singular, "det(g + I) vanishes");
  }
  try {
    return right_divide(g - id, plus);
  } catch (const Error&) {
    throw Error(Errc::cayley_singular, "g + I is numerically singular");
  }
}

/// Smallest Cholesky pivot of the Hermitian part (N + N*)/2, or a non-positive
/// value when the factorization breaks down.
inline double hermitian_part_min_pivot(const CMat& n) {
  require_square(n, "hermitian_part_min_pivot");
  const CMat h = 0.5 * (n + n.adjoint());
  Eigen::LLT<CMat> llt(h);
  if (llt.info() != Eigen::Success) return -1.0;
  const CMat l = llt.matrixL();
  double pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < l.rows(); ++i) pivot = std::min(pivot, std::norm(l(i, i)));
  return pivot;
}

inline bool hermitian_part_positive_definite(const CMat& n, double threshold = 1e-12) {
  return hermitian_part_min_pivot(n) > threshold * std::max(1.0, n.norm());
}

/// det(N)^{1/2} as the product of principal square roots of the eigenvalues of N.
/// Requires the Hermitian part of N to be positive definite so every eigenvalue
/// sits in the open right half-plane.
inline cplx det_powhalf_posreal(const CMat& n) {
  require_square(n, "det_powhalf_posreal");
  if (!hermitian_part_positive_definite(n)) {
    throw Error(Errc::not_positive_real, "Hermitian part is not positive definite");
  }
  cplx prod = 1.0;
  for (const cplx& ev : eigenvalues(n)) prod *= principal_sqrt(ev);
  return prod;
}

}  // namespace metaweyl
