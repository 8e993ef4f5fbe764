#pragma once

// The Heisenberg group and its two models: Fock space (ρ_λ, coherent states,
// Ω₀) and L²(R^n) (ρ'_λ, Ω₁), linked by the Bargmann transform.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "metaweyl/matcore.hpp"
#include "metaweyl/quadrature.hpp"

namespace metaweyl {

/// ((z0, conj z0), c) in H_n.
struct HeisElt {
  CPoint z0;
  double c = 0.0;

  int n() const { return static_cast<int>(z0.size()); }
};

/// ω((z, w), (z', w')) = (i/2)(z w' - z' w).
inline cplx omega(std::span<const cplx> z, std::span<const cplx> w, std::span<const cplx> zp,
                  std::span<const cplx> wp) {
  return 0.5 * kI * (dot(z, wp) - dot(zp, w));
}

inline CPoint conj_point(std::span<const cplx> z) {
  CPoint out(z.begin(), z.end());
  for (auto& v : out) v = std::conj(v);
  return out;
}

inline double norm_sq(std::span<const cplx> z) {
  double s = 0.0;
  for (const auto& v : z) s += std::norm(v);
  return s;
}

inline HeisElt heis_mul(const HeisElt& a, const HeisElt& b) {
  if (a.n() != b.n()) throw Error(Errc::shape_error, "heis_mul: dimension mismatch");
  HeisElt out{CPoint(a.z0.size()), 0.0};
  for (std::size_t k = 0; k < a.z0.size(); ++k) out.z0[k] = a.z0[k] + b.z0[k];
  const cplx w = omega(a.z0, conj_point(a.z0), b.z0, conj_point(b.z0));
  out.c = a.c + b.c + 0.5 * w.real();
  return out;
}

inline HeisElt heis_inv(const HeisElt& a) {
  HeisElt out{a.z0, -a.c};
  for (auto& v : out.z0) v = -v;
  return out;
}

/// (ρ_λ(h) f)(z) = exp(iλc + (λ/2) conj(z0) z - (λ/4)|z0|²) f(z - z0).
template <class F>
cplx rho_fock_apply(const HeisElt& h, F&& f, std::span<const cplx> z, double lambda) {
  CPoint shifted(z.begin(), z.end());
  for (std::size_t k = 0; k < shifted.size(); ++k) shifted[k] -= h.z0[k];
  const cplx e = kI * lambda * h.c + 0.5 * lambda * dot(conj_point(h.z0), z) - 0.25 * lambda * norm_sq(h.z0);
  return std::exp(e) * f(std::span<const cplx>(shifted));
}

/// (ρ'_λ(h) φ)(x) = exp(iλ(c - b x + ½ a b)) φ(x - a) with z0 = a + ib.
template <class F>
cplx rho_schrod_apply(const HeisElt& h, F&& phi, std::span<const double> x, double lambda) {
  std::vector<double> shifted(x.begin(), x.end());
  double bx = 0.0, ab = 0.0;
  for (std::size_t k = 0; k < shifted.size(); ++k) {
    const double a = h.z0[k].real(), b = h.z0[k].imag();
    shifted[k] -= a;
    bx += b * x[k];
    ab += a * b;
  }
  return std::exp(kI * lambda * (h.c - bx + 0.5 * ab)) * phi(std::span<const double>(shifted));
}

/// e_z(w) = exp(λ conj(z) w / 2).
inline cplx coherent_eval(std::span<const cplx> z, std::span<const cplx> w, double lambda) {
  return std::exp(0.5 * lambda * dot(conj_point(z), w));
}

/// (λ/π)^{n/4} ∫ exp(-(λ/4) z² + λ z x - (λ/2) x²) φ(x) dx by Gauss–Hermite.
/// The frame assumes φ decays like e^{-λx²/2} (Hermite-type probes): the integrand
/// then peaks near x = Re(z)/2 with width λ^{-1/2}.
template <class F>
cplx bargmann_apply(F&& phi, std::span<const cplx> z, double lambda, int nodes = 96) {
  const int n = static_cast<int>(z.size());
  const cplx zz = dot(z, z);
  std::vector<double> center(n);
  for (int k = 0; k < n; ++k) center[k] = 0.5 * z[k].real();
  auto integrand = [&](std::span<const double> x) {
    cplx zx{};
    double xx = 0.0;
    for (int k = 0; k < n; ++k) {
      zx += z[k] * x[k];
      xx += x[k] * x[k];
    }
    return std::exp(-0.25 * lambda * zz + lambda * zx - 0.5 * lambda * xx) * phi(x);
  };
  const cplx integral = integrate_real(integrand, center, 1.0 / std::sqrt(lambda), nodes);
  return std::pow(lambda / std::numbers::pi, 0.25 * n) * integral;
}

/// Physicists' Hermite polynomial H_j.
inline double hermite_poly(int j, double x) {
  double h0 = 1.0;
  if (j == 0) return h0;
  double h1 = 2.0 * x;
  for (int k = 1; k < j; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

/// Product Hermite function ∏ H_{j_k}(sqrt(λ) x_k) e^{-λ x_k²/2}.
inline double hermite_function(std::span<const int> order, double lambda, std::span<const double> x) {
  double v = 1.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    v *= hermite_poly(order[k], std::sqrt(lambda) * x[k]) * std::exp(-0.5 * lambda * x[k] * x[k]);
  }
  return v;
}

/// (Ω₀(zc) f)(w) = 2^n exp(λ(w conj(zc) - |zc|²)) f(2 zc - w).
template <class F>
cplx omega0_apply(std::span<const cplx> zc, F&& f, std::span<const cplx> w, double lambda) {
  const int n = static_cast<int>(zc.size());
  CPoint arg(n);
  for (int k = 0; k < n; ++k) arg[k] = 2.0 * zc[k] - w[k];
  const cplx e = lambda * (dot(w, conj_point(zc)) - norm_sq(zc));
  return std::pow(2.0, n) * std::exp(e) * f(std::span<const cplx>(arg));
}

/// (R₀ f)(z) = 2^n f(-z).
template <class F>
cplx parity_fock_apply(F&& f, std::span<const cplx> z) {
  CPoint arg(z.begin(), z.end());
  for (auto& v : arg) v = -v;
  return std::pow(2.0, static_cast<double>(z.size())) * f(std::span<const cplx>(arg));
}

/// (Ω₁(a, b) φ)(x) = 2^n exp(2iλ b(a - x)) φ(2a - x).
template <class F>
cplx omega1_apply(std::span<const double> a, std::span<const double> b, F&& phi, std::span<const double> x,
                  double lambda) {
  const int n = static_cast<int>(x.size());
  std::vector<double> arg(n);
  double phase = 0.0;
  for (int k = 0; k < n; ++k) {
    arg[k] = 2.0 * a[k] - x[k];
    phase += b[k] * (a[k] - x[k]);
  }
  return std::pow(2.0, n) * std::exp(2.0 * kI * lambda * phase) * phi(std::span<const double>(arg));
}

/// (R₁ φ)(x) = 2^n φ(-x).
template <class F>
cplx parity_schrod_apply(F&& phi, std::span<const double> x) {
  std::vector<double> arg(x.begin(), x.end());
  for (auto& v : arg) v = -v;
  return std::pow(2.0, static_cast<double>(x.size())) * phi(std::span<const double>(arg));
}

/// s(z, w) = K(z, w) / <e_w, e_z> with <e_w, e_z> = exp(λ conj(w) z / 2).
template <class K>
cplx berezin_double_symbol(K&& kernel, std::span<const cplx> z, std::span<const cplx> w, double lambda) {
  return kernel(z, w) / coherent_eval(w, z, lambda);
}

}  // namespace metaweyl
