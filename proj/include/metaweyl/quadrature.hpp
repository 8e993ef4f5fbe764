#pragma once

// Tensor-product Gauss–Hermite quadrature on R^d and C^n.
//
// Two entry points matter:
//  * quadrature_cn: plain rule against e^{-λ|w|²/2} dμ_λ, for any pointwise integrand.
//  * integrate_cn / integrate_rd with a probed frame: the integrand is given in its
//    holomorphic split form F(w, ŵ) (ŵ standing in for conj w), so the real
//    integration contour can be shifted and rotated onto the integrand's saddle.
//    The frame is estimated from the integrand values alone, which keeps the
//    quadrature independent of any closed form it is used to check.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "metaweyl/matcore.hpp"

namespace metaweyl {

struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;         // for the weight e^{-x²}
  std::vector<double> scaled_weights;  // weights[i] * e^{nodes[i]²}
};

namespace detail {

inline GaussHermiteRule build_gauss_hermite(int m) {
  // Newton iteration on the orthonormal Hermite recurrence, roots seeded from
  // the largest one downwards.
  GaussHermiteRule rule;
  rule.nodes.assign(m, 0.0);
  rule.weights.assign(m, 0.0);
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  const int half = (m + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * m + 1.0) - 1.85575 * std::pow(2.0 * m + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(m), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * m) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[i] = z;
    rule.nodes[m - 1 - i] = -z;
    rule.weights[i] = rule.weights[m - 1 - i] = 2.0 / (pp * pp);
  }
  rule.scaled_weights.resize(m);
  for (int i = 0; i < m; ++i) {
    const double x = rule.nodes[i];
    rule.scaled_weights[i] = std::exp(std::log(rule.weights[i]) + x * x);
  }
  return rule;
}

}  // namespace detail

/// Cached rule with m nodes (1 <= m <= 256). Safe to call concurrently.
inline const GaussHermiteRule& gauss_hermite(int m) {
  if (m < 1 || m > 256) throw Error(Errc::bad_config, "node count must be in [1, 256]");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(detail::build_gauss_hermite(m));
  return *slot;
}

/// Affine contour v = center + transform * s, s in R^d.
struct Frame {
  CVec center;
  CMat transform;
};

inline Frame identity_frame(int d, double scale = 1.0) {
  return {CVec::Zero(d), scale * CMat::Identity(d, d)};
}

namespace detail {

template <class F>
void tensor_sum(F& f, const std::vector<CMat>& columns, const std::vector<double>& w, int level, CVec& v,
                std::vector<CVec>& partial, double weight, cplx& acc) {
  const int d = static_cast<int>(columns.size());
  const int m = static_cast<int>(w.size());
  const CVec& base = partial[level];
  if (level == d - 1) {
    cplx local{};
    const cplx* col = columns[level].data();
    for (int i = 0; i < m; ++i, col += d) {
      for (int k = 0; k < d; ++k) v(k) = base(k) + col[k];
      local += w[i] * f(std::span<const cplx>(v.data(), static_cast<std::size_t>(d)));
    }
    acc += weight * local;
    return;
  }
  for (int i = 0; i < m; ++i) {
    partial[level + 1] = base + columns[level].col(i);
    tensor_sum(f, columns, w, level + 1, v, partial, weight * w[i], acc);
  }
}

}  // namespace detail

/// ∫_{R^d} f(v) dv along the contour of `frame`, where f accepts complex coordinates.
/// With a real identity frame this is the ordinary integral; otherwise f must be
/// the holomorphic extension of the real integrand.
template <class F>
cplx integrate_rd(F&& f, int d, const Frame& frame, int nodes) {
  if (d < 1 || d > 4) throw Error(Errc::bad_config, "tensor quadrature supports 1 <= d <= 4");
  const auto& rule = gauss_hermite(nodes);
  std::vector<CMat> columns(d);
  for (int k = 0; k < d; ++k) {
    columns[k].resize(d, nodes);
    for (int i = 0; i < nodes; ++i) columns[k].col(i) = frame.transform.col(k) * rule.nodes[i];
  }
  std::vector<CVec> partial(d, CVec::Zero(d));
  partial[0] = frame.center;
  CVec v(d);
  cplx acc{};
  detail::tensor_sum(f, columns, rule.scaled_weights, 0, v, partial, 1.0, acc);
  return det(frame.transform) * acc;
}

namespace detail {

/// Central-difference gradient and Hessian of log f at v; nullopt when f vanishes or
/// is not finite on the stencil.
template <class F>
std::optional<std::pair<CVec, CMat>> log_derivatives(F& f, const CVec& v, double h) {
  const int d = static_cast<int>(v.size());
  auto eval = [&](const CVec& u) { return f(std::span<const cplx>(u.data(), static_cast<std::size_t>(d))); };
  const cplx f0 = eval(v);
  if (f0 == cplx{} || !std::isfinite(std::abs(f0))) return std::nullopt;
  auto lratio = [&](const CVec& u, bool& ok) {
    const cplx r = eval(u) / f0;
    if (r == cplx{} || !std::isfinite(std::abs(r))) {
      ok = false;
      return cplx{};
    }
    return std::log(r);
  };
  bool ok = true;
  CVec g(d);
  CMat H(d, d);
  std::vector<cplx> lp(d), lm(d);
  for (int i = 0; i < d; ++i) {
    CVec u = v;
    u(i) += h;
    lp[i] = lratio(u, ok);
    u(i) -= 2 * h;
    lm[i] = lratio(u, ok);
    g(i) = (lp[i] - lm[i]) / (2 * h);
    H(i, i) = (lp[i] + lm[i]) / (h * h);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      CVec u = v;
      u(i) += h;
      u(j) += h;
      const cplx pp = lratio(u, ok);
      u(j) -= 2 * h;
      const cplx pm = lratio(u, ok);
      u(i) -= 2 * h;
      const cplx mm = lratio(u, ok);
      u(j) += 2 * h;
      const cplx mp = lratio(u, ok);
      H(i, j) = H(j, i) = (pp - pm - mp + mm) / (4 * h * h);
    }
  }
  if (!ok) return std::nullopt;
  return std::make_pair(g, H);
}

/// Frame centred at v for a log-Hessian `hess`: writing hess = -2N with Re N positive
/// definite, the transform C satisfies C^t N C = I and rotates each generalized
/// eigen-direction of (Im N, Re N) through less than pi/4, so the contour deformation
/// stays inside the region of decay.
inline std::optional<Frame> frame_from_hessian(const CVec& v, const CMat& hess) {
  const int d = static_cast<int>(v.size());
  const CMat N = -0.5 * (hess + hess.transpose());
  const RMat re = N.real();
  const RMat im = N.imag();
  Eigen::SelfAdjointEigenSolver<RMat> re_eig(0.5 * (re + re.transpose()));
  if (re_eig.info() != Eigen::Success || re_eig.eigenvalues().minCoeff() <= 1e-10 * std::max(1.0, re.norm())) {
    return std::nullopt;
  }
  const RMat re_inv_sqrt =
      re_eig.eigenvectors() * re_eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      re_eig.eigenvectors().transpose();
  const RMat h_tilde = re_inv_sqrt * im * re_inv_sqrt;
  Eigen::SelfAdjointEigenSolver<RMat> im_eig(0.5 * (h_tilde + h_tilde.transpose()));
  CVec scale(d);
  for (int k = 0; k < d; ++k) scale(k) = 1.0 / principal_sqrt(cplx(1.0, im_eig.eigenvalues()(k)));
  // Keep the real frame orientation-preserving so det(transform) is the Jacobian of
  // a deformation of the positively oriented real contour.
  RMat basis = im_eig.eigenvectors();
  if (basis.determinant() < 0) basis.col(0) = -basis.col(0);
  const CMat transform = (re_inv_sqrt * basis).cast<cplx>() * scale.asDiagonal();
  return Frame{v, transform};
}

/// Largest relative change of the log-Hessian one frame unit away from the centre.
/// Zero for an exact Gaussian; large when the frame was fitted next to a zero of f.
template <class F>
double frame_drift(F& f, const Frame& frame, const CMat& hess, double h) {
  const int d = static_cast<int>(frame.center.size());
  double worst = 0.0;
  for (int k = 0; k < d; ++k) {
    for (double s : {1.0, -1.0}) {
      auto der = log_derivatives(f, CVec(frame.center + s * frame.transform.col(k)), h);
      if (!der) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, (der->second - hess).norm() / hess.norm());
    }
  }
  return worst;
}

}  // namespace detail

/// Saddle-adapted frame for a Gaussian-dominated integrand on R^d. Newton's method
/// locates the (complex) stationary point of log f and the Hessian there shapes the
/// frame. Returns nullopt when the probe breaks down (zeros on the stencil, no decay).
/// Returns nullopt when the probe breaks down (zeros on the stencil, no decay).
template <class F>
std::optional<Frame> probe_frame(F&& f, int d, const CVec& start, double h = 1e-2) {
  CVec v = start;
  CMat hess;
  for (int iter = 0; iter < 40; ++iter) {
    auto der = detail::log_derivatives(f, v, h);
    if (!der) return std::nullopt;
    const auto& [g, H] = *der;
    hess = H;
    Eigen::PartialPivLU<CMat> lu(H);
    if (lu.rcond() < 1e-12) return std::nullopt;
    const CVec step = -lu.solve(g);
    v += step;
    if (!all_finite(v)) return std::nullopt;
    if (step.norm() <= 1e-11 * (1.0 + v.norm())) break;
  }
  return detail::frame_from_hessian(v, hess);
}

/// Frame for a Gaussian times a polynomial. Newton on log f can settle near a zero of
/// the polynomial, where the Hessian says nothing about the Gaussian. When the Newton
/// frame drifts, the Hessian is re-estimated as the medoid of samples spread around
/// `fallback`, and the centre is located by chord iterations with that Hessian.
template <class F>
std::optional<Frame> probe_frame_robust(F&& f, int d, const Frame& fallback, double h = 1e-2) {
  auto newton = probe_frame(f, d, fallback.center, h);
  double newton_drift = std::numeric_limits<double>::infinity();
  if (newton) {
    const auto der = detail::log_derivatives(f, newton->center, h);
    if (der) newton_drift = detail::frame_drift(f, *newton, der->second, h);
    if (newton_drift < 0.1) return newton;
  }
  std::vector<CMat> samples;
  std::vector<CVec> points{fallback.center};
  for (int k = 0; k < d; ++k)
    for (double s : {2.0, -2.0}) points.push_back(fallback.center + s * fallback.transform.col(k));
  for (const CVec& p : points)
    if (auto der = detail::log_derivatives(f, p, h)) samples.push_back(der->second);
  if (samples.empty()) return newton;
  std::size_t best = 0;
  double best_spread = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double spread = 0.0;
    for (const CMat& other : samples) spread += (samples[i] - other).norm();
    if (spread < best_spread) best_spread = spread, best = i;
  }
  const CMat& hess = samples[best];
  Eigen::PartialPivLU<CMat> lu(hess);
  if (lu.rcond() < 1e-12) return newton;
  CVec v = fallback.center;
  for (int iter = 0; iter < 60; ++iter) {
    auto der = detail::log_derivatives(f, v, h);
    if (!der) break;
    const CVec step = -lu.solve(der->first);
    v += step;
    if (!all_finite(v)) return newton;
    if (step.norm() <= 1e-11 * (1.0 + v.norm())) break;
  }
  auto chord = detail::frame_from_hessian(v, hess);
  if (!chord) return newton;
  const double chord_drift = detail::frame_drift(f, *chord, hess, h);
  return chord_drift < newton_drift ? chord : newton;
}

/// ∫_{R^d} f over the probed frame, falling back to `fallback` when probing fails.
template <class F>
cplx integrate_rd_adapted(F&& f, int d, int nodes, const Frame& fallback) {
  auto frame = probe_frame_robust(f, d, fallback);
  return integrate_rd(f, d, frame ? *frame : fallback, nodes);
}

/// ∫_{C^n} F(w, ŵ) dm(w), with F the holomorphic split form of the integrand
/// (F(w, conj w) is the actual integrand). Lebesgue measure dm = dx dy.
template <class F>
cplx integrate_cn_split(F&& f, int n, int nodes, double fallback_scale = 1.0) {
  const int d = 2 * n;
  std::vector<cplx> w(n), wh(n);
  auto real_form = [&](std::span<const cplx> v) {
    for (int k = 0; k < n; ++k) {
      w[k] = v[k] + kI * v[n + k];
      wh[k] = v[k] - kI * v[n + k];
    }
    return f(std::span<const cplx>(w), std::span<const cplx>(wh));
  };
  return integrate_rd_adapted(real_form, d, nodes, identity_frame(d, fallback_scale));
}

/// ∫_{C^n} F(w, ŵ) dμ_λ(w) with dμ_λ = (2π)^{-n} λ^n dm.
template <class F>
cplx integrate_cn_mu(F&& f, int n, double lambda, int nodes) {
  const double norm = std::pow(lambda / (2.0 * std::numbers::pi), n);
  return norm * integrate_cn_split(f, n, nodes, std::sqrt(2.0 / lambda));
}

/// Plain tensor Gauss–Hermite approximation of ∫ f(w) e^{-λ|w|²/2} dμ_λ(w); f ≡ 1 gives 1.
/// The integrand is sampled on the real nodes w = sqrt(2/λ)(s + i t).
template <class F>
cplx quadrature_cn(F&& f, int n, double lambda, int nodes) {
  if (n < 1 || n > 2) throw Error(Errc::bad_config, "quadrature_cn supports n in {1, 2}");
  if (!(lambda > 0)) throw Error(Errc::bad_config, "lambda must be positive");
  const auto& rule = gauss_hermite(nodes);
  const double sigma = std::sqrt(2.0 / lambda);
  std::vector<cplx> w(n);
  auto real_form = [&](std::span<const cplx> v) {
    for (int k = 0; k < n; ++k) w[k] = sigma * (v[k] + kI * v[n + k]);
    return f(std::span<const cplx>(w));
  };
  // Reuse the tensor driver with unmodified weights by summing directly.
  const int d = 2 * n;
  std::vector<int> idx(d, 0);
  CVec v(d);
  cplx acc{};
  const int total = static_cast<int>(std::pow(nodes, d));
  for (int flat = 0; flat < total; ++flat) {
    int r = flat;
    double weight = 1.0;
    for (int k = 0; k < d; ++k) {
      const int i = r % nodes;
      r /= nodes;
      v(k) = rule.nodes[i];
      weight *= rule.weights[i];
    }
    acc += weight * real_form(std::span<const cplx>(v.data(), static_cast<std::size_t>(d)));
  }
  return acc / std::pow(std::numbers::pi, n);
}

/// ∫_{R^d} f(x) dx for a real-variable integrand concentrated around `center` with
/// width `scale`: x = center + scale * s, weights carry e^{s²}.
template <class F>
cplx integrate_real(F&& f, std::span<const double> center, double scale, int nodes) {
  const int d = static_cast<int>(center.size());
  if (d < 1 || d > 2) throw Error(Errc::bad_config, "integrate_real supports d in {1, 2}");
  const auto& rule = gauss_hermite(nodes);
  std::vector<double> x(d);
  cplx acc{};
  if (d == 1) {
    for (int i = 0; i < nodes; ++i) {
      x[0] = center[0] + scale * rule.nodes[i];
      acc += rule.scaled_weights[i] * f(std::span<const double>(x));
    }
  } else {
    for (int i = 0; i < nodes; ++i) {
      x[0] = center[0] + scale * rule.nodes[i];
      cplx inner{};
      for (int j = 0; j < nodes; ++j) {
        x[1] = center[1] + scale * rule.nodes[j];
        inner += rule.scaled_weights[j] * f(std::span<const double>(x));
      }
      acc += rule.scaled_weights[i] * inner;
    }
  }
  return std::pow(scale, d) * acc;
}

}  // namespace metaweyl
