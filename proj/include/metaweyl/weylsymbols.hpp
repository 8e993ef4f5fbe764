#pragma once

// Complex Weyl symbols W₀ on Fock space, classical Weyl symbols W₁ on L²(R^n),
// the heat semigroup on Gaussian symbols, and the metaplectic phase constants.

#include <cmath>
#include <functional>
#include <numbers>
#include <span>

#include "metaweyl/gaussint.hpp"
#include "metaweyl/heisenberg.hpp"
#include "metaweyl/metaplectic.hpp"
#include "metaweyl/random.hpp"
#include "metaweyl/sympgroup.hpp"

namespace metaweyl {

/// v ↦ γ exp(v^t S v) on R^{2n}, v = (x, y), z = x + iy.
struct GaussianSymbol {
  int n = 0;
  cplx gamma = 1.0;
  CMat S;

  cplx at(std::span<const double> v) const {
    cplx q{};
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j) q += v[i] * S(i, j) * v[j];
    return gamma * std::exp(q);
  }

  cplx at_z(std::span<const cplx> z) const {
    std::vector<double> v(2 * n);
    for (int k = 0; k < n; ++k) {
      v[k] = z[k].real();
      v[n + k] = z[k].imag();
    }
    return at(v);
  }
};

/// γ exp((z, z̄) K (z, z̄)^t) rewritten in the real frame: S = sym(U^t K U).
inline GaussianSymbol gaussian_symbol_from_zform(int n, cplx gamma, const CMat& K) {
  const CMat u = u_matrix(n);
  const CMat s = u.transpose() * K * u;
  return {n, gamma, 0.5 * (s + s.transpose())};
}

/// Real symmetric 2n×2n matrix M and its quadratic form q_M(v) = v^t M v.
struct QuadForm2n {
  int n = 0;
  RMat M;

  double operator()(std::span<const double> v) const {
    double q = 0.0;
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j) q += v[i] * M(i, j) * v[j];
    return q;
  }
};

inline void check_quadform(const QuadForm2n& q) {
  if (q.M.rows() != 2 * q.n || q.M.cols() != 2 * q.n) throw Error(Errc::shape_error, "M must be 2n x 2n");
  if ((q.M - q.M.transpose()).norm() > structural_tol(q.M.norm())) {
    throw Error(Errc::shape_error, "M must be symmetric");
  }
}

// ---------------------------------------------------------------------------
// W₀ by quadrature

/// W₀(A)(z) = 2^n ∫ k_A(z+w, z-w) exp((λ/2)(-z z̄ - w w̄ + z w̄ - z̄ w)) dμ_λ(w).
/// The kernel is supplied in split form eval_split(z, ŵ) with ŵ standing for conj(w).
template <class Kernel>
cplx w0_integral(const Kernel& kernel, std::span<const cplx> z, double lambda, int nodes = 80) {
  const int n = static_cast<int>(z.size());
  if (n < 1 || n > 2) throw Error(Errc::bad_config, "w0_integral supports n in {1, 2}");
  const CPoint zb = conj_point(z);
  const cplx zz = dot(z, zb);
  CPoint a(n), bh(n);
  auto integrand = [&](std::span<const cplx> w, std::span<const cplx> wh) {
    for (int k = 0; k < n; ++k) {
      a[k] = z[k] + w[k];
      bh[k] = zb[k] - wh[k];
    }
    const cplx e = 0.5 * lambda * (-zz - dot(w, wh) + dot(z, wh) - dot(zb, w));
    return kernel.eval_split(a, bh) * std::exp(e);
  };
  return std::pow(2.0, n) * integrate_cn_mu(integrand, n, lambda, nodes);
}

/// The non-symmetric form W₀(A)(z) = 2^n ∫ k_A(w, 2z - w) exp(λ(-z z̄ + z w̄ - ½ w w̄)) dμ_λ(w).
template <class Kernel>
cplx w0_integral_shifted(const Kernel& kernel, std::span<const cplx> z, double lambda, int nodes = 80) {
  const int n = static_cast<int>(z.size());
  if (n < 1 || n > 2) throw Error(Errc::bad_config, "w0_integral supports n in {1, 2}");
  const CPoint zb = conj_point(z);
  const cplx zz = dot(z, zb);
  CPoint bh(n);
  auto integrand = [&](std::span<const cplx> w, std::span<const cplx> wh) {
    for (int k = 0; k < n; ++k) bh[k] = 2.0 * zb[k] - wh[k];
    const cplx e = lambda * (-zz + dot(z, wh) - 0.5 * dot(w, wh));
    return kernel.eval_split(w, bh) * std::exp(e);
  };
  return std::pow(2.0, n) * integrate_cn_mu(integrand, n, lambda, nodes);
}

// ---------------------------------------------------------------------------
// Phase constants

/// det(I + k), asserted real for k in S.
inline double det_one_plus(const SuBlocks& k) {
  const cplx d = det(k.full() + identity(2 * k.n));
  if (std::abs(d.imag()) > 1e-8 * (1.0 + std::abs(d))) {
    throw Error(Errc::not_in_s, "det(I + k) is not real");
  }
  return d.real();
}

/// c_n(k): 2^n det(I+k)^{-1/2} when det(I+k) > 0, otherwise ∓i 2^n |det(I+k)|^{-1/2}
/// according to the sign of Arg(det P).
inline cplx metaplectic_phase_c(const SuBlocks& k) {
  require_su(k);
  const double d = det_one_plus(k);
  if (std::abs(d) <= 1e-12 * std::pow(std::max(1.0, (k.full() + identity(2 * k.n)).norm()), 2 * k.n)) {
    throw Error(Errc::cayley_singular, "det(I + k) vanishes");
  }
  const double scale = std::pow(2.0, k.n) / std::sqrt(std::abs(d));
  if (d > 0) return scale;
  const cplx p = det(k.P);
  if (std::abs(p.imag()) < 1e-8) {
    throw Error(Errc::ambiguous_phase, "det(I + k) < 0 with det P real");
  }
  return p.imag() > 0 ? -kI * scale : kI * scale;
}

/// W₀(σ(k))(0) evaluated as the closed Gaussian integral with every square root
/// taken eigenvalue by eigenvalue. This is the value the defining integral actually
/// takes; for n = 1 it coincides with c_n(k).
inline cplx metaplectic_phase_c_integral(const SuBlocks& k, double lambda = 1.0) {
  const GaussianKernel b = sigma_kernel(k, lambda);
  const int n = k.n;
  // b(w, -w) exp(-(λ/2) w w̄) as exp(-(wAw + ŵDŵ + 2ŵBw)).
  const double q = 0.25 * lambda;
  const GaussianIntegrand gi{n, -q * b.alpha, q * (b.beta.transpose() + identity(n)), -q * b.gamma, CVec::Zero(n),
                             CVec::Zero(n)};
  return std::pow(2.0, n) * b.c * std::pow(lambda / (2.0 * std::numbers::pi), n) * gaussian_integral_closed(gi);
}

/// ±i 2^n |det(I + k)|^{-1/2}, the sign picked by the quadrature value of W₀(σ(k))(0).
/// Meaningful when det(I + k) < 0.
inline cplx adjudicate_phase_by_quadrature(const SuBlocks& k, double lambda = 1.0, int nodes = 80) {
  const double scale = std::pow(2.0, k.n) / std::sqrt(std::abs(det_one_plus(k)));
  const CPoint zero(k.n, cplx{});
  const cplx value = w0_integral(sigma_kernel(k, lambda), zero, lambda, nodes);
  return std::abs(value - kI * scale) < std::abs(value + kI * scale) ? kI * scale : -kI * scale;
}

/// metaplectic_phase_c, except that an ambiguous case is settled by quadrature.
inline cplx metaplectic_phase_c_adjudicated(const SuBlocks& k, double lambda = 1.0, int nodes = 80) {
  try {
    return metaplectic_phase_c(k);
  } catch (const Error& e) {
    if (e.code() != Errc::ambiguous_phase) throw;
  }
  return adjudicate_phase_by_quadrature(k, lambda, nodes);
}

// ---------------------------------------------------------------------------
// Closed forms

/// The (z, z̄)-form λ/2 · J (k - I)(k + I)^{-1} of the W₀ exponent.
inline CMat w0_exponent_zform(const SuBlocks& k, double lambda) {
  return 0.5 * lambda * j_matrix(k.n) * cayley(k.full());
}

inline GaussianSymbol w0_sigma_symbol(const SuBlocks& k, double lambda, cplx phase) {
  return gaussian_symbol_from_zform(k.n, phase, w0_exponent_zform(k, lambda));
}

inline GaussianSymbol w0_sigma_symbol(const SuBlocks& k, double lambda) {
  return w0_sigma_symbol(k, lambda, metaplectic_phase_c(k));
}

/// c_n(k) exp((λ/2)(z z̄) J (k - I)(k + I)^{-1} (z z̄)^t).
inline cplx w0_sigma_closed_with_phase(const SuBlocks& k, std::span<const cplx> z, double lambda, cplx phase) {
  require_su(k);
  const int n = k.n;
  if (static_cast<int>(z.size()) != n) throw Error(Errc::shape_error, "point dimension mismatch");
  CVec zz(2 * n);
  for (int j = 0; j < n; ++j) {
    zz(j) = z[j];
    zz(n + j) = std::conj(z[j]);
  }
  return phase * std::exp(bilinear(zz, w0_exponent_zform(k, lambda), zz));
}

inline cplx w0_sigma_closed(const SuBlocks& k, std::span<const cplx> z, double lambda) {
  return w0_sigma_closed_with_phase(k, z, lambda, metaplectic_phase_c(k));
}

/// (λ/4)(z B̄ z - z̄ B z̄ - 2 (Az) z̄).
inline cplx w0_dsigma_closed(const SuLie& x, std::span<const cplx> z, double lambda) {
  require_su_lie(x);
  const CPoint zb = conj_point(z);
  return 0.25 * lambda *
         (bilinear(z, x.B.conjugate(), z) - bilinear(zb, x.B, zb) - 2.0 * bilinear(zb, x.A, z));
}

namespace detail {

inline CVec real_pair(int n, std::span<const double> x, std::span<const double> y) {
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) {
    throw Error(Errc::shape_error, "point dimension mismatch");
  }
  CVec v(2 * n);
  for (int k = 0; k < n; ++k) {
    v(k) = x[k];
    v(n + k) = y[k];
  }
  return v;
}

}  // namespace detail

/// c'_n(g) exp(-iλ (x y) J (g - I)(g + I)^{-1} (x y)^t). The phase follows the
/// case analysis on det(I + g) and Arg det(A + D + i(C - B)), which is c_n of the
/// corresponding element of S.
inline cplx w1_sigma_closed_with_phase(const SpReal& g, std::span<const double> x, std::span<const double> y,
                                       double lambda, cplx phase) {
  require_sp(g);
  const CVec v = detail::real_pair(g.n, x, y);
  const CMat e = j_matrix(g.n) * cayley(g.complex());
  return phase * std::exp(-kI * lambda * bilinear(v, e, v));
}

inline cplx w1_sigma_closed(const SpReal& g, std::span<const double> x, std::span<const double> y,
                            double lambda = 1.0) {
  return w1_sigma_closed_with_phase(g, x, y, lambda, metaplectic_phase_c(su_from_sp(require_sp(g))));
}

/// The same symbol through W₁(A)(a, b) = W₀(B A B^{-1})(a + ib).
inline cplx w1_sigma_via_w0(const SpReal& g, std::span<const double> x, std::span<const double> y,
                            double lambda = 1.0) {
  CPoint z(g.n);
  for (int k = 0; k < g.n; ++k) z[k] = cplx(x[k], y[k]);
  return w0_sigma_closed(su_from_sp(g), z, lambda);
}

/// det(cosh(X/2))^{-1/2} exp(-iλ (x y) J tanh(X/2) (x y)^t), real nonnegative root.
inline cplx w1_exp_closed(const SpLieReal& X, std::span<const double> x, std::span<const double> y,
                          double lambda = 1.0) {
  require_sp_lie(X);
  const CVec v = detail::real_pair(X.n, x, y);
  const CMat half = 0.5 * X.full().cast<cplx>();
  const CMat ch = mat_cosh(half);
  const double d = det(ch).real();
  if (d <= 1e-14) throw Error(Errc::singular_matrix, "cosh(X/2) is singular");
  const CMat th = right_divide(mat_sinh(half), ch);
  return std::exp(-kI * lambda * bilinear(v, j_matrix(X.n) * th, v)) / std::sqrt(d);
}

/// w1_exp_closed continued to X ↦ tX with complex t; the root is taken on det
/// directly (principal branch).
inline cplx w1_exp_closed_complex(const SpLieReal& X, cplx t, std::span<const double> x,
                                  std::span<const double> y, double lambda = 1.0) {
  require_sp_lie(X);
  const CVec v = detail::real_pair(X.n, x, y);
  const CMat half = 0.5 * t * X.full().cast<cplx>();
  const CMat ch = mat_cosh(half);
  const CMat th = right_divide(mat_sinh(half), ch);
  return std::exp(-kI * lambda * bilinear(v, j_matrix(X.n) * th, v)) / principal_sqrt(det(ch));
}

/// ½ i (2 y(Ax) + y(By) - x(Cx)).
inline cplx w1_dsigma_closed(const SpLieReal& X, std::span<const double> x, std::span<const double> y,
                             double lambda = 1.0) {
  require_sp_lie(X);
  const int n = X.n;
  const Eigen::Map<const RVec> xv(x.data(), n), yv(y.data(), n);
  const double s = 2.0 * yv.dot(X.A * xv) + yv.dot(X.B * yv) - xv.dot(X.C * xv);
  return 0.5 * kI * lambda * s;
}

/// -½ i (x y) J X (x y)^t, the second form of the same symbol.
inline cplx w1_dsigma_closed_matrix_form(const SpLieReal& X, std::span<const double> x, std::span<const double> y,
                                         double lambda = 1.0) {
  require_sp_lie(X);
  const CVec v = detail::real_pair(X.n, x, y);
  return -0.5 * kI * lambda * bilinear(v, j_matrix(X.n) * X.full().cast<cplx>(), v);
}

/// det(cos(JM))^{-1/2} exp(-(x y) J tan(JM) (x y)^t).
inline cplx hormander_exp_symbol(const QuadForm2n& q, std::span<const double> x, std::span<const double> y) {
  check_quadform(q);
  const CVec v = detail::real_pair(q.n, x, y);
  const CMat jm = j_matrix(q.n) * q.M.cast<cplx>();
  const CMat c = mat_cos(jm);
  const CMat t = -kI * right_divide(mat_sinh(kI * jm), c);
  return std::exp(-bilinear(v, j_matrix(q.n) * t, v)) / principal_sqrt(det(c));
}

// ---------------------------------------------------------------------------
// Heat semigroup on Gaussian symbols

/// e^{tΔ} on R^{2n}: γ exp(v^t S v) ↦ γ det(I - 4tS)^{-1/2} exp(v^t S (I - 4tS)^{-1} v),
/// the root taken eigenvalue by eigenvalue.
inline GaussianSymbol heat_flow_gaussian(const GaussianSymbol& f, double t) {
  const int d = 2 * f.n;
  const CMat m = identity(d) - 4.0 * t * f.S;
  cplx root = 1.0;
  for (const cplx& ev : eigenvalues(m)) {
    if (std::abs(ev) <= 1e-12) throw Error(Errc::heat_flow_singular, "I - 4tS is singular");
    root *= principal_sqrt(ev);
  }
  CMat s;
  try {
    s = right_divide(f.S, m);
  } catch (const Error&) {
    throw Error(Errc::heat_flow_singular, "I - 4tS is singular");
  }
  return {f.n, f.gamma / root, 0.5 * (s + s.transpose())};
}

/// B_λ = exp(Δ/2λ).
inline GaussianSymbol berezin_transform_gaussian(const GaussianSymbol& f, double lambda) {
  return heat_flow_gaussian(f, 1.0 / (2.0 * lambda));
}

/// (B_λ f)(z) = ∫ f(z + u) e^{-λ|u|²/2} dμ_λ(u) with the plain rule.
template <class F>
cplx berezin_transform_quadrature(F&& f, std::span<const cplx> z, double lambda, int nodes = 60) {
  const int n = static_cast<int>(z.size());
  CPoint shifted(n);
  auto g = [&](std::span<const cplx> u) {
    for (int k = 0; k < n; ++k) shifted[k] = z[k] + u[k];
    return f(std::span<const cplx>(shifted));
  };
  return quadrature_cn(g, n, lambda, nodes);
}

/// sup over 10 sample points of |B_λ^{1/2} W₀(σ(k)) - S_λ(σ(k))|.
inline double polar_relation_residual(const SuBlocks& k, double lambda, std::uint64_t sample_seed = 0x504f4c) {
  const GaussianSymbol w0 = w0_sigma_symbol(k, lambda);
  const GaussianSymbol flowed = heat_flow_gaussian(w0, 1.0 / (4.0 * lambda));
  Rng rng(sample_seed, {static_cast<std::uint64_t>(k.n)});
  double worst = 0.0;
  for (int s = 0; s < 10; ++s) {
    const CPoint z = rng.point(k.n, 1.0);
    const cplx lhs = flowed.at_z(z);
    const cplx rhs = berezin_symbol_sigma(k, to_vec(z), lambda);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Classical Weyl calculus, n = 1

/// Tr(Ω₁(a, b) W(f)) by quadrature: the kernel of W(f) is built from the partial
/// Fourier transform (F₂f)(x, y) = (2π)^{-1/2} ∫ e^{-iyt} f(x, t) dt and the trace is
/// the integral of the kernel of Ω₁(a, b)W(f) along the diagonal. The rules use
/// unit Gaussian frames, suited to symbols decaying like e^{-x²-t²}. The outer rule
/// is capped at 32 nodes: its extreme nodes would otherwise ask the inner Fourier
/// rule for frequencies 2|x - a| beyond what `nodes` points resolve.
inline cplx w1_of_classical_weyl(const std::function<cplx(double, double)>& f, double a, double b, double lambda,
                                 int nodes = 96) {
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto f2 = [&](double x, double y) {
    const double zero = 0.0;
    auto inner = [&](std::span<const double> t) { return std::exp(-kI * y * t[0]) * f(x, t[0]); };
    return inv_sqrt_2pi * integrate_real(inner, std::span<const double>(&zero, 1), 1.0, nodes);
  };
  auto kernel = [&](double x, double y) { return inv_sqrt_2pi * f2(0.5 * (x + y), x - y); };
  auto diag = [&](std::span<const double> x) {
    return 2.0 * std::exp(2.0 * kI * lambda * b * (a - x[0])) * kernel(2.0 * a - x[0], x[0]);
  };
  return integrate_real(diag, std::span<const double>(&a, 1), 1.0, std::min(nodes, 32));
}

}  // namespace metaweyl
