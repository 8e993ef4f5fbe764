// Acceptance run: one PASS/FAIL line per criterion with its residual, tolerance and
// wall time. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "metaweyl/metaweyl.hpp"

using namespace metaweyl;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

/// Folds one measured residual into the outcome.
void check(Outcome& o, double residual, double tol) {
  if (!(residual <= tol)) o.pass = false;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

SuiteReport suite(const std::string& name, int n, int trials, double tol, int nodes = 0) {
  SuiteConfig c;
  c.name = name;
  c.n = n;
  c.trials = trials;
  c.seed = 20240611;
  c.tol = tol;
  c.nodes = nodes;
  return run_suite(c);
}

/// Runs `name` for n = 1 and n = 2 and records both maxima.
void suite_pair(Outcome& o, const std::string& name, int trials_each, double tol) {
  for (int n : {1, 2}) {
    const SuiteReport r = suite(name, n, trials_each, tol);
    check(o, r.max_residual, tol);
    o.detail += "n=" + std::to_string(n) + ": " + std::to_string(trials_each) + " cases max " + sci(r.max_residual) +
                ", " + std::to_string(r.failures) + " failed; ";
  }
}

template <class F>
cplx richardson_derivative(F&& f, double h = 1e-3) {
  auto central = [&](double s) { return (f(s) - f(-s)) / (2.0 * s); };
  return (4.0 * central(h / 2) - central(h)) / 3.0;
}

// ---------------------------------------------------------------------------

Outcome gaussian_integral_law() {
  constexpr double tol = 1e-8;
  Outcome o;
  const SuiteReport a = suite("gaussint", 1, 100, tol, 80);
  const SuiteReport b = suite("gaussint", 2, 100, tol, 40);
  check(o, a.max_residual, tol);
  check(o, b.max_residual, tol);
  o.detail = "200 integrands (n=1 at 80 nodes, n=2 at 40): max rel " + sci(std::max(a.max_residual, b.max_residual)) +
             " <= " + sci(tol);
  return o;
}

Outcome block_identities() {
  constexpr double tol = 1e-10;
  Outcome o;
  double r1 = 0, r2 = 0, r3 = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 2;
    Rng rng(20240611, {0xb10c, static_cast<std::uint64_t>(t)});
    const CMat a = rng.complex_matrix(n, n, 0.5), d = rng.complex_matrix(n, n, 0.5), p = rng.complex_matrix(n, n, 0.5);
    const SuBlocks k = random_su(n, rng.bits(), 0.6);
    r1 = std::max(r1, block_inverse_identity_residual(a, d, p));
    r2 = std::max(r2, cayley_block_identity_residual(k));
    r3 = std::max(r3, det_identity_residual(k));
  }
  check(o, r1, tol);
  check(o, r2, tol);
  check(o, r3, tol);
  o.detail = "100 inputs each: inverse-block " + sci(r1) + ", cayley-block " + sci(r2) + ", determinant " + sci(r3) +
             " <= " + sci(tol);
  return o;
}

Outcome dual_kernel() {
  Outcome o;
  suite_pair(o, "jacobi-bk", 100, 1e-9);
  o.detail += "rel tol 1e-09";
  return o;
}

Outcome intertwining() {
  Outcome o;
  suite_pair(o, "intertwining", 250, 1e-10);
  o.detail += "residual/(1+|LHS|) tol 1e-10";
  return o;
}

Outcome projective_law() {
  Outcome o;
  suite_pair(o, "cocycle", 100, 1e-9);
  // Explicit unitarity check on top of the suite: σ(k)σ(k^{-1}) = identity with scalar 1.
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + t % 2;
    const SuBlocks k = random_su(n, 7000 + t, 1.0);
    const GaussianKernel unit = compose_kernels(sigma_kernel(k, 1.0), sigma_kernel(su_inv(k), 1.0));
    worst = std::max({worst, std::abs(unit.c - 1.0), kernel_distance(unit, identity_kernel(n, 1.0))});
  }
  check(o, worst, 1e-9);
  o.detail += "unitarity |c-1| " + sci(worst) + " <= 1e-09";
  return o;
}

Outcome w0_closed_form() {
  constexpr double tol = 1e-6;
  constexpr int nodes = 80;
  Outcome o;
  double worst = 0.0;
  int negative = 0, adjudicated_agree = 0;
  for (int t = 0; t < 100; ++t) {
    Rng rng(20240611, {0x3030, static_cast<std::uint64_t>(t)});
    const bool neg = t % 5 == 0;
    const SuBlocks k = neg ? random_negative_det_element(rng) : random_su(1, rng.bits(), 0.6);
    const CPoint z = rng.point(1, 0.5);
    const double lambda = rng.uniform(0.7, 1.5);
    const cplx quad = w0_integral(sigma_kernel(k, lambda), z, lambda, nodes);
    cplx phase = metaplectic_phase_c(k);
    if (neg) {
      if (!(det_one_plus(k) < 0)) {
        o.pass = false;
        continue;
      }
      ++negative;
      const cplx adjudicated = adjudicate_phase_by_quadrature(k, lambda, nodes);
      if (std::abs(adjudicated - phase) <= 1e-12 * std::abs(phase)) ++adjudicated_agree;
      phase = adjudicated;
    }
    worst = std::max(worst, rel(quad, w0_sigma_closed_with_phase(k, z, lambda, phase)));
  }
  check(o, worst, tol);
  if (negative < 5) o.pass = false;
  o.detail = "100 elements (n=1, 80 nodes), max rel " + sci(worst) + " <= " + sci(tol) + "; " +
             std::to_string(negative) + " with det(I+k)<0, quadrature phase agrees with case analysis on " +
             std::to_string(adjudicated_agree);
  return o;
}

Outcome polar() {
  Outcome o;
  suite_pair(o, "polar", 25, 1e-8);
  o.detail += "tol 1e-08";
  return o;
}

Outcome w1_chain() {
  Outcome o;
  suite_pair(o, "w1-bridge", 50, 1e-8);
  constexpr double fd_tol = 1e-6;
  double w0_fd = 0.0, w1_fd = 0.0;
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 2;
    Rng rng(20240611, {0xfd, static_cast<std::uint64_t>(t)});
    const SpLieReal X = random_bounded_sp_lie(n, rng, 1.0);
    const SuLie Xs = su_lie_from_sp_lie(X);
    const CPoint z = rng.point(n, 0.8);
    const auto x = random_real_point(n, rng, 1.0), y = random_real_point(n, rng, 1.0);
    const cplx d0 = richardson_derivative([&](double s) { return w0_sigma_closed(su_exp(Xs.scaled(s)), z, 1.0); });
    const cplx d1 = richardson_derivative([&](double s) { return w1_sigma_closed(sp_exp(X.scaled(s)), x, y); });
    w0_fd = std::max(w0_fd, std::abs(d0 - w0_dsigma_closed(Xs, z, 1.0)));
    w1_fd = std::max(w1_fd, std::abs(d1 - w1_dsigma_closed(X, x, y)));
  }
  check(o, w0_fd, fd_tol);
  check(o, w1_fd, fd_tol);
  o.detail += "tol 1e-08; t->0 derivative W0 " + sci(w0_fd) + ", W1 " + sci(w1_fd) + " <= " + sci(fd_tol);
  return o;
}

Outcome moyal_engine() {
  Outcome o;
  const PhasePoly p = phase_p(1, 0), q = phase_q(1, 0);
  PhasePoly comm = moyal_mul(p, q);
  comm -= moyal_mul(q, p);
  const bool exact = comm.terms().size() == 1 && comm.coefficient({0, 0}) == cplx(0.0, -1.0);
  if (!exact) o.pass = false;
  o.detail = std::string("p*q-q*p = -i ") + (exact ? "exactly" : "NOT exact") + "; hom ";
  double hom = 0.0;
  for (int n : {1, 2}) hom = std::max(hom, suite("quantize-hom", n, 50, 1e-12).max_residual);
  check(o, hom, 1e-12);
  const SuiteReport se = suite("star-exp", 1, 50, 1e-6);
  check(o, se.max_residual, 1e-6);
  o.detail += sci(hom) + " <= 1e-12 (100 pairs); star-exp " + sci(se.max_residual) + " <= 1e-06 (50 M)";
  // Harmonic oscillator at the origin, series as ground truth.
  struct Case {
    int n;
    double t;
    int order;
  };
  for (const Case c : {Case{1, 0.2, 40}, Case{2, 0.05, 12}}) {
    const QuadForm2n h{c.n, c.t * RMat::Identity(2 * c.n, 2 * c.n)};
    const std::vector<double> origin(2 * c.n, 0.0);
    const cplx series = star_exp_series(h, -kI, c.order, origin).value;
    const double to_n = rel(series, std::pow(std::cos(c.t), -c.n));
    const double to_half = rel(series, std::pow(std::cos(c.t), -0.5));
    check(o, to_n, 1e-9);
    if (!(to_half > 1e-4)) o.pass = false;
    o.detail += "; n=" + std::to_string(c.n) + " oscillator: (cos t)^-n off by " + sci(to_n) + ", (cos t)^-1/2 off by " +
                sci(to_half);
  }
  return o;
}

Outcome heisenberg_layer() {
  Outcome o;
  double rep = 0.0, repro = 0.0;
  for (int t = 0; t < 10; ++t) {
    Rng rng(20240611, {0x4e15, static_cast<std::uint64_t>(t)});
    const double lambda = rng.uniform(0.5, 2.0);
    const HeisElt a{rng.point(1, 0.6), rng.uniform(-1, 1)}, b{rng.point(1, 0.6), rng.uniform(-1, 1)};
    const CPoint u = rng.point(1, 0.5), z = rng.point(1, 0.5);
    auto f = [&](std::span<const cplx> w) { return coherent_eval(u, w, lambda) * (1.0 + w[0] * w[0]); };
    auto fb = [&](std::span<const cplx> w) { return rho_fock_apply(b, f, w, lambda); };
    rep = std::max(rep, rel(rho_fock_apply(a, fb, z, lambda), rho_fock_apply(heis_mul(a, b), f, z, lambda)));
    const int order[1] = {t % 4};
    auto phi = [&](std::span<const double> x) { return cplx(hermite_function(order, lambda, x)); };
    auto phib = [&](std::span<const double> x) { return rho_schrod_apply(b, phi, x, lambda); };
    const double x[1] = {rng.uniform(-1, 1)};
    rep = std::max(rep, std::abs(rho_schrod_apply(a, phib, x, lambda) - rho_schrod_apply(heis_mul(a, b), phi, x, lambda)));
    auto integrand = [&](std::span<const cplx> w) { return f(w) * std::conj(coherent_eval(z, w, lambda)); };
    repro = std::max(repro, rel(quadrature_cn(integrand, 1, lambda, 60), f(z)));
  }
  check(o, rep, 1e-12);
  check(o, repro, 1e-7);
  double barg = 0.0;
  for (int n : {1, 2}) barg = std::max(barg, suite("bargmann", n, n == 1 ? 20 : 5, 1e-6).max_residual);
  check(o, barg, 1e-6);
  const std::vector<std::function<cplx(double, double)>> symbols{
      [](double x, double t) { return cplx(std::exp(-x * x - t * t)); },
      [](double x, double t) { return (1.0 + x * t) * std::exp(-x * x - t * t); },
      [](double x, double t) { return cplx(x * x, -t) * std::exp(-x * x - 0.5 * t * t + 0.3 * x); }};
  const double points[][2] = {{0.3, -0.2}, {-0.5, 0.4}, {0.1, 0.7}};
  double inv = 0.0;
  for (const auto& f : symbols)
    for (const auto& pt : points) inv = std::max(inv, rel(w1_of_classical_weyl(f, pt[0], pt[1], 1.0), f(pt[0], pt[1])));
  check(o, inv, 1e-5);
  o.detail = "representation " + sci(rep) + " <= 1e-12, reproducing " + sci(repro) + " <= 1e-07, Bargmann " +
             sci(barg) + " <= 1e-06, W1(W(f)) " + sci(inv) + " <= 1e-05";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Gaussian integral law", 30, gaussian_integral_law},
      {2, "block identities", 5, block_identities},
      {3, "dual derivation of the metaplectic kernel", 10, dual_kernel},
      {4, "intertwining functional equation", 10, intertwining},
      {5, "projective group law", 60, projective_law},
      {6, "W0 closed form vs quadrature", 120, w0_closed_form},
      {7, "polar decomposition", 20, polar},
      {8, "W1 chain", 30, w1_chain},
      {9, "Moyal engine", 60, moyal_engine},
      {10, "Heisenberg layer", 60, heisenberg_layer},
  };
  int failed = 0;
  double total = 0.0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += secs;
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("[%s] %2d %s: %s | %.2fs (budget %.0fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", EXCEEDED");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failed, criteria.size(), total);
  return failed == 0 ? 0 : 1;
}
