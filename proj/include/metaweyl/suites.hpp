#pragma once

// Named randomized verification suites. Every trial draws its inputs from an Rng
// keyed by (seed, suite, trial), so a report depends only on its configuration and
// trials could run in any order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "metaweyl/gaussint.hpp"
#include "metaweyl/heisenberg.hpp"
#include "metaweyl/jacobi.hpp"
#include "metaweyl/metaplectic.hpp"
#include "metaweyl/moyal.hpp"
#include "metaweyl/random.hpp"
#include "metaweyl/weylsymbols.hpp"

namespace metaweyl {

struct SuiteConfig {
  std::string name;
  int n = 1;
  double lambda = 1.0;
  int trials = 10;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int nodes = 0;  // 0 selects the suite default
};

struct SuiteRecord {
  int index = 0;
  std::string digest;
  double residual = 0.0;
  bool pass = false;
};

struct SuiteReport {
  SuiteConfig config;
  int failures = 0;
  double max_residual = 0.0;
  std::vector<SuiteRecord> records;

  bool ok() const { return failures == 0; }
};

/// 64-bit FNV-1a over the bit patterns of the trial inputs.
class Digest {
 public:
  Digest& add(double v) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof v);
    std::memcpy(&bits, &v, sizeof v);
    for (int i = 0; i < 8; ++i) {
      h_ ^= (bits >> (8 * i)) & 0xffu;
      h_ *= 0x100000001b3ull;
    }
    return *this;
  }
  Digest& add(cplx v) { return add(v.real()).add(v.imag()); }
  Digest& add(const CMat& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) add(m(i));
    return *this;
  }
  Digest& add(const RMat& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) add(m(i));
    return *this;
  }
  Digest& add(const CVec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) add(v(i));
    return *this;
  }
  Digest& add(std::span<const cplx> v) {
    for (const cplx& x : v) add(x);
    return *this;
  }
  Digest& add(std::span<const double> v) {
    for (double x : v) add(x);
    return *this;
  }

  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

// ---------------------------------------------------------------------------
// Random inputs shared by the suites and the tests

/// Integrand with Re N comfortably positive definite (Cholesky pivot ≥ 0.1).
inline GaussianIntegrand random_gaussian_integrand(int n, Rng& rng) {
  for (;;) {
    CMat A = rng.complex_matrix(n, n, 0.3);
    CMat D = rng.complex_matrix(n, n, 0.3);
    A = (0.5 * (A + A.transpose())).eval();
    D = (0.5 * (D + D.transpose())).eval();
    const CMat B = 0.5 * identity(n) + rng.complex_matrix(n, n, 0.15);
    GaussianIntegrand gi{n, A, B, D, to_vec(rng.point(n, 0.5)), to_vec(rng.point(n, 0.5))};
    if (hermitian_part_min_pivot(gi.n_matrix()) >= 0.1) return gi;
  }
}

/// n = 1 element g = R(θ) diag(e^r, e^{-r}) with |θ| ∈ [0.85π, 0.95π], r ∈ [1, 1.6],
/// for which det(I + g) = 2 + 2 cos θ cosh r < 0. The sign of θ selects the ±i case.
inline SuBlocks random_negative_det_element(Rng& rng) {
  const double theta = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.85, 0.95) * std::numbers::pi;
  const double r = rng.uniform(1.0, 1.6);
  RMat rot(2, 2), sq(2, 2);
  rot << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  sq << std::exp(r), 0.0, 0.0, std::exp(-r);
  return su_from_sp({1, rot * sq});
}

/// Random sp(n, R) element rescaled so that its Frobenius norm is at most `bound`.
inline SpLieReal random_bounded_sp_lie(int n, Rng& rng, double bound) {
  const SpLieReal x = random_sp_lie(n, rng.bits(), 1.0);
  const double norm = x.full().norm();
  return x.scaled(bound * rng.uniform() / std::max(norm, 1e-300));
}

/// Real symmetric 2n×2n M with spectral norm at most `bound`.
inline QuadForm2n random_quadform(int n, Rng& rng, double bound) {
  RMat m = rng.real_matrix(2 * n, 2 * n, 1.0);
  m = (0.5 * (m + m.transpose())).eval();
  Eigen::JacobiSVD<RMat> svd(m);
  m *= bound * rng.uniform() / std::max(svd.singularValues()(0), 1e-300);
  return {n, m};
}

/// Up to 5 monomials of total degree at most `deg` with complex coefficients.
inline PhasePoly random_phase_poly(int n, Rng& rng, int deg) {
  const auto basis = monomials_up_to(2 * n, deg);
  PhasePoly f(2 * n);
  const int terms = rng.integer(1, 5);
  for (int t = 0; t < terms; ++t) {
    f.add_term(basis[rng.integer(0, static_cast<int>(basis.size()) - 1)], rng.complex_uniform(1.0));
  }
  return f;
}

inline std::vector<double> random_real_point(int d, Rng& rng, double scale) {
  std::vector<double> v(d);
  for (auto& x : v) x = rng.uniform(-scale, scale);
  return v;
}

// ---------------------------------------------------------------------------
// Suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gaussint",     "lemmatrices", "jacobi-bk", "intertwining",
                                              "cocycle",      "w0-quadrature", "w1-bridge", "polar",
                                              "star-exp",     "quantize-hom", "bargmann",  "phase"};
  return names;
}

/// Short aliases accepted by `weyl verify`.
inline std::string canonical_suite_name(const std::string& name) {
  if (name == "w0") return "w0-quadrature";
  if (name == "w1") return "w1-bridge";
  return name;
}

namespace detail {

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline std::uint64_t suite_tag(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline void require_n(const SuiteConfig& c, int lo, int hi) {
  if (c.n < lo || c.n > hi) {
    throw Error(Errc::bad_config, c.name + " supports n in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

inline int nodes_or(const SuiteConfig& c, int fallback) { return c.nodes > 0 ? c.nodes : fallback; }

}  // namespace detail

/// One trial: returns the residual and fills the digest with the inputs used.
inline double run_trial(const SuiteConfig& c, Rng& rng, Digest& dg) {
  const int n = c.n;
  const double lambda = c.lambda;
  const std::string& s = c.name;

  if (s == "gaussint") {
    const GaussianIntegrand gi = random_gaussian_integrand(n, rng);
    dg.add(gi.A).add(gi.B).add(gi.D).add(gi.u).add(gi.v);
    const int nodes = detail::nodes_or(c, n == 1 ? 80 : 40);
    return detail::rel_err(gaussian_integral_quadrature(gi, nodes), gaussian_integral_closed(gi));
  }
  if (s == "lemmatrices") {
    CMat a = rng.complex_matrix(n, n, 0.5), d = rng.complex_matrix(n, n, 0.5), p = rng.complex_matrix(n, n, 0.5);
    const SuBlocks k = random_su(n, rng.bits(), 0.6);
    dg.add(a).add(d).add(p).add(k.P).add(k.Q);
    return std::max({block_inverse_identity_residual(a, d, p), cayley_block_identity_residual(k),
                      det_identity_residual(k)});
  }
  if (s == "jacobi-bk") {
    const SuBlocks k = random_su(n, rng.bits(), 0.6);
    const CVec y = to_vec(rng.point(n, 0.7)), v = to_vec(rng.point(n, 0.7));
    dg.add(k.P).add(k.Q).add(y).add(v);
    const cplx direct = sigma_kernel(k, lambda)(to_point(y), to_point(v));
    return detail::rel_err(bk_via_jacobi(k, y, v, CharParams{lambda, -0.5}), direct);
  }
  if (s == "intertwining") {
    const SuBlocks k = random_su(n, rng.bits(), 0.6);
    const CVec z0 = to_vec(rng.point(n, 0.6)), z = to_vec(rng.point(n, 0.6)), w = to_vec(rng.point(n, 0.6));
    dg.add(k.P).add(k.Q).add(z0).add(z).add(w);
    const IntertwiningResidual r = verify_intertwining(k, z0, z, w, lambda);
    return r.residual / (1.0 + r.lhs_abs);
  }
  if (s == "cocycle") {
    const SuBlocks k1 = random_su(n, rng.bits(), 0.8), k2 = random_su(n, rng.bits(), 0.8);
    dg.add(k1.P).add(k1.Q).add(k2.P).add(k2.Q);
    const CocycleResult r = sigma_cocycle_sign(k1, k2, lambda);
    const double sign_dev = std::abs(r.scalar - static_cast<double>(r.sign));
    const GaussianKernel unit = compose_kernels(sigma_kernel(k1, lambda), sigma_kernel(su_inv(k1), lambda));
    const double unitarity = kernel_distance(unit, identity_kernel(n, lambda));
    return std::max({sign_dev, r.param_distance, unitarity});
  }
  if (s == "w0-quadrature") {
    const bool negative = n == 1 && rng.integer(0, 4) == 0;
    const SuBlocks k = negative ? random_negative_det_element(rng) : random_su(n, rng.bits(), 0.6);
    const CPoint z = rng.point(n, 0.5);
    dg.add(k.P).add(k.Q).add(std::span<const cplx>(z));
    const int nodes = detail::nodes_or(c, n == 1 ? 80 : 32);
    return detail::rel_err(w0_integral(sigma_kernel(k, lambda), z, lambda, nodes), w0_sigma_closed(k, z, lambda));
  }
  if (s == "phase") {
    const SuBlocks k = random_negative_det_element(rng);
    dg.add(k.P).add(k.Q);
    const CPoint zero(1, cplx{});
    const int nodes = detail::nodes_or(c, 80);
    return detail::rel_err(w0_integral(sigma_kernel(k, lambda), zero, lambda, nodes), metaplectic_phase_c(k));
  }
  if (s == "w1-bridge") {
    const SpLieReal X = random_bounded_sp_lie(n, rng, 1.0);
    const auto x = random_real_point(n, rng, 1.0), y = random_real_point(n, rng, 1.0);
    dg.add(X.full()).add(std::span<const double>(x)).add(std::span<const double>(y));
    return detail::rel_err(w1_exp_closed(X, x, y, lambda), w1_sigma_closed(sp_exp(X), x, y, lambda));
  }
  if (s == "polar") {
    const SuBlocks k = random_su(n, rng.bits(), 0.6);
    dg.add(k.P).add(k.Q);
    return polar_relation_residual(k, lambda);
  }
  if (s == "star-exp") {
    const QuadForm2n q = random_quadform(n, rng, 0.2);
    std::vector<double> pt = random_real_point(2 * n, rng, 1.0);
    dg.add(q.M).add(std::span<const double>(pt));
    const StarExpResult series = star_exp_series(q, -kI, 40, pt);
    return detail::rel_err(series.value, star_exp_quadratic_closed(q, pt));
  }
  if (s == "quantize-hom") {
    const PhasePoly f1 = random_phase_poly(n, rng, 3), f2 = random_phase_poly(n, rng, 3);
    for (const auto* f : {&f1, &f2})
      for (const auto& [e, coef] : f->terms()) {
        for (int v : e) dg.add(static_cast<double>(v));
        dg.add(coef);
      }
    return homomorphism_residual(f1, f2);
  }
  if (s == "bargmann") {
    std::vector<int> order(n);
    for (auto& o : order) o = rng.integer(0, 4);
    const HeisElt h{rng.point(n, 0.5), rng.uniform(-1.0, 1.0)};
    const CPoint z = rng.point(n, 0.5);
    for (int o : order) dg.add(static_cast<double>(o));
    dg.add(std::span<const cplx>(h.z0)).add(h.c).add(std::span<const cplx>(z));
    const int nodes = detail::nodes_or(c, n == 1 ? 96 : 48);
    auto phi = [&](std::span<const double> x) { return cplx(hermite_function(order, lambda, x)); };
    auto moved = [&](std::span<const double> x) { return rho_schrod_apply(h, phi, x, lambda); };
    auto image = [&](std::span<const cplx> w) { return bargmann_apply(phi, w, lambda, nodes); };
    return std::abs(bargmann_apply(moved, z, lambda, nodes) - rho_fock_apply(h, image, z, lambda));
  }
  throw Error(Errc::unknown_suite, "unknown suite " + s);
}

inline void check_suite_config(const SuiteConfig& c) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), c.name) == names.end()) {
    throw Error(Errc::unknown_suite, "unknown suite " + c.name);
  }
  if (c.trials < 0) throw Error(Errc::bad_config, "trials must be nonnegative");
  if (!(c.lambda > 0)) throw Error(Errc::bad_config, "lambda must be positive");
  if (!(c.tol >= 0)) throw Error(Errc::bad_config, "tol must be nonnegative");
  const std::string& s = c.name;
  if (s == "gaussint" || s == "w0-quadrature" || s == "bargmann") {
    detail::require_n(c, 1, 2);
  } else if (s == "phase" || s == "star-exp") {
    detail::require_n(c, 1, 1);
  } else {
    detail::require_n(c, 1, 4);
  }
}

inline SuiteReport run_suite(SuiteConfig config) {
  config.name = canonical_suite_name(config.name);
  check_suite_config(config);
  SuiteReport report{config, 0, 0.0, {}};
  const std::uint64_t tag = detail::suite_tag(config.name);
  for (int t = 0; t < config.trials; ++t) {
    Rng rng(config.seed, {tag, static_cast<std::uint64_t>(config.n), static_cast<std::uint64_t>(t)});
    Digest dg;
    double residual;
    try {
      residual = run_trial(config, rng, dg);
    } catch (const Error&) {
      residual = std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(residual)) residual = std::numeric_limits<double>::infinity();
    const bool pass = residual <= config.tol;
    if (!pass) ++report.failures;
    report.max_residual = std::max(report.max_residual, residual);
    report.records.push_back({t, dg.hex(), residual, pass});
  }
  return report;
}

}  // namespace metaweyl
