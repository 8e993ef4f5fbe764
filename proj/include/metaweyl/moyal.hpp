#pragma once

// Moyal star product on polynomials of (p, q) ∈ R^{2n} at t = -i/2, star
// exponentials of quadratic forms, and Weyl quantization of polynomial symbols
// as differential operators in p.

#include <algorithm>
#include <cmath>
#include <map>
#include <span>

#include "metaweyl/matcore.hpp"
#include "metaweyl/polynomial.hpp"
#include "metaweyl/weylsymbols.hpp"

namespace metaweyl {

/// Polynomial in 2n variables ordered (p_1..p_n, q_1..q_n).
using PhasePoly = Polynomial;

inline int phase_dim(const PhasePoly& f) {
  if (f.nvars() % 2 != 0) throw Error(Errc::shape_error, "phase-space polynomial needs an even variable count");
  return f.nvars() / 2;
}

inline PhasePoly phase_p(int n, int k) { return Polynomial::variable(2 * n, k); }
inline PhasePoly phase_q(int n, int k) { return Polynomial::variable(2 * n, n + k); }

/// q_M(p, q) = v^t M v with v = (p, q).
inline PhasePoly quadform_poly(const QuadForm2n& q) {
  check_quadform(q);
  const int d = 2 * q.n;
  PhasePoly out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      MultiIndex e(d, 0);
      e[i] += 1;
      e[j] += 1;
      out.add_term(e, q.M(i, j));
    }
  return out;
}

/// P^l(u, v) = Σ Λ^{i1 j1}···Λ^{il jl} ∂^l_{i} u ∂^l_{j} v with Λ^{p_k q_k} = 1 = -Λ^{q_k p_k}.
/// Grouping the l factors by type gives the multinomial form
///   Σ l!/(α!β!) (-1)^{|β|} ∂_p^α ∂_q^β u · ∂_q^α ∂_p^β v,  |α| + |β| = l.
inline PhasePoly poisson_power(const PhasePoly& u, const PhasePoly& v, int l) {
  if (l < 0) throw Error(Errc::bad_config, "poisson_power: l must be nonnegative");
  const int n = phase_dim(u);
  if (phase_dim(v) != n) throw Error(Errc::shape_error, "poisson_power: dimension mismatch");
  PhasePoly out(2 * n);
  if (l == 0) return u * v;
  if (l > std::min(u.degree(), v.degree())) return out;
  for (const MultiIndex& ab : monomials_up_to(2 * n, l)) {
    int total = 0, beta = 0;
    for (int k = 0; k < 2 * n; ++k) total += ab[k];
    if (total != l) continue;
    double coef = factorial(l);
    for (int k = 0; k < 2 * n; ++k) coef /= factorial(ab[k]);
    for (int k = 0; k < n; ++k) beta += ab[n + k];
    if (beta % 2 == 1) coef = -coef;
    // ab[k] = α_k counts (∂p_k on u, ∂q_k on v); ab[n+k] = β_k counts (∂q_k on u, ∂p_k on v).
    MultiIndex du(2 * n, 0), dv(2 * n, 0);
    for (int k = 0; k < n; ++k) {
      du[k] = ab[k];
      du[n + k] = ab[n + k];
      dv[n + k] = ab[k];
      dv[k] = ab[n + k];
    }
    const PhasePoly a = u.derivative(du);
    if (a.is_zero()) continue;
    const PhasePoly b = v.derivative(dv);
    if (b.is_zero()) continue;
    out += (a * b) * coef;
  }
  return out;
}

/// u * v = Σ_l (-i/2)^l / l! P^l(u, v).
inline PhasePoly moyal_mul(const PhasePoly& u, const PhasePoly& v) {
  const int n = phase_dim(u);
  PhasePoly out(2 * n);
  if (u.is_zero() || v.is_zero()) return out;
  const int top = std::min(u.degree(), v.degree());
  cplx t_pow = 1.0;
  for (int l = 0; l <= top; ++l) {
    out += poisson_power(u, v, l) * (t_pow / factorial(l));
    t_pow *= -0.5 * kI;
  }
  return out;
}

struct StarExpResult {
  cplx value;
  double last_term = 0.0;
};

/// Σ_{l≤L} (s q_M)^{*l}(point) / l!, within ‖sM‖ ≤ 0.25, |point| ≤ 1.5, L ≤ 60.
inline StarExpResult star_exp_series(const QuadForm2n& q, cplx s, int L, std::span<const double> point) {
  check_quadform(q);
  if (L < 0 || L > 60) throw Error(Errc::bad_config, "star_exp_series: L must lie in [0, 60]");
  if (static_cast<int>(point.size()) != 2 * q.n) throw Error(Errc::shape_error, "point must have 2n entries");
  Eigen::JacobiSVD<RMat> svd(q.M);
  const double snorm = std::abs(s) * (q.M.size() ? svd.singularValues()(0) : 0.0);
  double pnorm = 0.0;
  for (double x : point) pnorm += x * x;
  if (snorm > 0.25 || std::sqrt(pnorm) > 1.5) {
    throw Error(Errc::non_convergent, "star_exp_series: outside the certified envelope");
  }
  std::vector<cplx> pt(point.begin(), point.end());
  const PhasePoly sq = quadform_poly(q) * s;
  PhasePoly term = Polynomial::constant(2 * q.n, 1.0);
  StarExpResult r{1.0, 1.0};
  for (int l = 1; l <= L; ++l) {
    term = moyal_mul(term, sq) * (1.0 / l);
    const cplx tv = term(pt);
    r.value += tv;
    r.last_term = std::abs(tv);
  }
  if (L > 0 && r.last_term > 1e-10 * std::abs(r.value)) {
    throw Error(Errc::non_convergent, "star_exp_series: last term too large");
  }
  return r;
}

/// det(cosh(JM))^{-1/2} exp(i v^t J tanh(JM) v) for a complex symmetric M; the root
/// is the product of principal roots of the eigenvalues of cosh(JM).
inline cplx star_exp_quadratic_closed(int n, const CMat& M, std::span<const double> point) {
  if (M.rows() != 2 * n || M.cols() != 2 * n) throw Error(Errc::shape_error, "M must be 2n x 2n");
  CVec v(2 * n);
  for (int k = 0; k < 2 * n; ++k) v(k) = point[k];
  const CMat jm = j_matrix(n) * M;
  const CMat ch = mat_cosh(jm);
  const CMat th = right_divide(mat_sinh(jm), ch);
  cplx root = 1.0;
  for (const cplx& ev : eigenvalues(ch)) root *= principal_sqrt(ev);
  return std::exp(kI * bilinear(v, j_matrix(n) * th, v)) / root;
}

inline cplx star_exp_quadratic_closed(const QuadForm2n& q, std::span<const double> point) {
  check_quadform(q);
  return star_exp_quadratic_closed(q.n, q.M.cast<cplx>(), point);
}

// ---------------------------------------------------------------------------
// Weyl quantization

/// Σ c_β(p) ∂^β acting on functions of p ∈ R^n.
struct DiffOp {
  int n = 0;
  std::map<MultiIndex, Polynomial> terms;

  void add(const MultiIndex& order, const Polynomial& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(order, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
};

inline DiffOp diffop_identity(int n) {
  DiffOp d{n, {}};
  d.add(MultiIndex(n, 0), Polynomial::constant(n, 1.0));
  return d;
}

/// W(p^a q^α) = i^{|α|} Σ_{β≤α} C(α,β) 2^{-|β|} (a)_β p^{a-β} ∂^{α-β}, the expansion of
/// (i ∂_s)^α (p + s/2)^a φ(p + s) at s = 0.
inline DiffOp weyl_quantize_poly(const PhasePoly& f) {
  const int n = phase_dim(f);
  DiffOp out{n, {}};
  for (const auto& [e, c] : f.terms()) {
    MultiIndex a(e.begin(), e.begin() + n), alpha(e.begin() + n, e.end());
    int order = 0;
    for (int v : alpha) order += v;
    const cplx front = c * std::pow(kI, order);
    MultiIndex lim = alpha;
    // Enumerate β ≤ α.
    MultiIndex beta(n, 0);
    for (;;) {
      double coef = 1.0;
      bool alive = true;
      MultiIndex pe(n), de(n);
      for (int k = 0; k < n; ++k) {
        if (beta[k] > a[k]) {
          alive = false;
          break;
        }
        coef *= factorial(alpha[k]) / (factorial(beta[k]) * factorial(alpha[k] - beta[k]));
        coef *= std::pow(0.5, beta[k]) * factorial(a[k]) / factorial(a[k] - beta[k]);
        pe[k] = a[k] - beta[k];
        de[k] = alpha[k] - beta[k];
      }
      if (alive) out.add(de, Polynomial::monomial(pe, front * coef));
      int k = 0;
      while (k < n && beta[k] == lim[k]) beta[k++] = 0;
      if (k == n) break;
      ++beta[k];
    }
  }
  return out;
}

/// (Σ c_β ∂^β)(Σ d_γ ∂^γ) = Σ c_β Σ_{μ≤β} C(β,μ) (∂^μ d_γ) ∂^{β-μ+γ}.
inline DiffOp diffop_compose(const DiffOp& d1, const DiffOp& d2) {
  if (d1.n != d2.n) throw Error(Errc::shape_error, "diffop_compose: dimension mismatch");
  const int n = d1.n;
  DiffOp out{n, {}};
  for (const auto& [beta, c] : d1.terms) {
    for (const auto& [gamma, d] : d2.terms) {
      MultiIndex mu(n, 0);
      for (;;) {
        double binom = 1.0;
        MultiIndex order(n);
        for (int k = 0; k < n; ++k) {
          binom *= factorial(beta[k]) / (factorial(mu[k]) * factorial(beta[k] - mu[k]));
          order[k] = beta[k] - mu[k] + gamma[k];
        }
        const Polynomial dd = d.derivative(mu);
        if (!dd.is_zero()) out.add(order, (c * dd) * binom);
        int k = 0;
        while (k < n && mu[k] == beta[k]) mu[k++] = 0;
        if (k == n) break;
        ++mu[k];
      }
    }
  }
  return out;
}

inline Polynomial diffop_apply(const DiffOp& d, const Polynomial& phi) {
  if (phi.nvars() != d.n) throw Error(Errc::shape_error, "diffop_apply: dimension mismatch");
  Polynomial out(d.n);
  for (const auto& [order, c] : d.terms) out += c * phi.derivative(order);
  return out;
}

/// Largest coefficient discrepancy between two operators.
inline double diffop_distance(const DiffOp& a, const DiffOp& b) {
  double worst = 0.0;
  for (const auto& [order, c] : a.terms) {
    auto it = b.terms.find(order);
    worst = std::max(worst, max_coefficient_diff(c, it == b.terms.end() ? Polynomial(a.n) : it->second));
  }
  for (const auto& [order, c] : b.terms) {
    if (!a.terms.count(order)) worst = std::max(worst, max_coefficient_diff(c, Polynomial(b.n)));
  }
  return worst;
}

/// max coefficient deviation of W(f1 * f2) from W(f1) W(f2).
inline double homomorphism_residual(const PhasePoly& f1, const PhasePoly& f2) {
  return diffop_distance(weyl_quantize_poly(moyal_mul(f1, f2)),
                         diffop_compose(weyl_quantize_poly(f1), weyl_quantize_poly(f2)));
}

/// |exp_*(-i q_M) - W₁(σ'(exp X))| at a point, M = ½ J X.
inline double star_exp_bridge_residual(const SpLieReal& X, std::span<const double> point) {
  require_sp_lie(X);
  const int n = X.n;
  const RMat m = 0.5 * j_matrix_real(n) * X.full();
  const QuadForm2n q{n, 0.5 * (m + m.transpose())};
  const cplx lhs = star_exp_quadratic_closed(q, point);
  const cplx rhs = w1_exp_closed(X, point.subspan(0, n), point.subspan(n, n));
  return std::abs(lhs - rhs);
}

}  // namespace metaweyl
