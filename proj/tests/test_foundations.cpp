// matcore, sympgroup, quadrature, gaussint, heisenberg, jacobi.

#include "test_util.hpp"

using namespace metaweyl;
using mwtest::c1;
using mwtest::expect_errc;
using mwtest::rel;

// ---------------------------------------------------------------------------
// matcore

TEST(Matcore, PrincipalSqrtOnTheCut) {
  // Arg(-4) = π, so the root is 2i whichever sign the zero imaginary part carries.
  EXPECT_EQ(principal_sqrt(cplx(-4.0, 0.0)), cplx(0.0, 2.0));
  EXPECT_NEAR(std::abs(principal_sqrt(cplx(-4.0, -0.0)) - cplx(0.0, 2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(principal_sqrt(cplx(0.0, 2.0)) - cplx(1.0, 1.0)), 0.0, 1e-15);
}

TEST(Matcore, HalfIntegerPower) {
  EXPECT_NEAR(std::abs(half_integer_power(4.0, -0.5) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(half_integer_power(cplx(-1.0, 0.0), 1.5) - cplx(0.0, -1.0)), 0.0, 1e-15);
  expect_errc([] { half_integer_power(2.0, 0.3); }, Errc::bad_config);
}

TEST(Matcore, ExpMatchesTaylorSeries) {
  Rng rng(11);
  const CMat m = rng.complex_matrix(3, 3, 0.5);
  CMat sum = identity(3), term = identity(3);
  for (int k = 1; k < 40; ++k) {
    term = (term * m / static_cast<double>(k)).eval();
    sum += term;
  }
  EXPECT_LT((mat_exp(m) - sum).norm(), 1e-13);
}

TEST(Matcore, ExpOfJIsARotation) {
  const double t = 0.7;
  const CMat expected = std::cos(t) * identity(2) + std::sin(t) * j_matrix(1);
  EXPECT_LT((mat_exp(t * j_matrix(1)) - expected).norm(), 1e-14);
  // cosh(tJ) = cos t, sinh(tJ) = J sin t since J² = -I.
  EXPECT_LT((mat_cosh(t * j_matrix(1)) - std::cos(t) * identity(2)).norm(), 1e-14);
  EXPECT_LT((mat_tanh(t * j_matrix(1)) - std::tan(t) * j_matrix(1)).norm(), 1e-14);
}

TEST(Matcore, UIntertwinesJ) {
  // U^t J U = -2i J, checked by hand for n = 1 and holding blockwise for all n.
  for (int n : {1, 2, 3}) {
    const CMat u = u_matrix(n);
    EXPECT_LT((u.transpose() * j_matrix(n) * u + 2.0 * kI * j_matrix(n)).norm(), 1e-14);
    EXPECT_LT((u_inverse(n) * u - identity(2 * n)).norm(), 1e-14);
  }
}

TEST(Matcore, CayleyTransform) {
  EXPECT_LT(cayley(identity(4)).norm(), 1e-15);
  expect_errc([] { cayley(-identity(2)); }, Errc::cayley_singular);
  // (g - I)(g + I)^{-1} for g = diag(3, 1/3) is diag(1/2, -1/2).
  CMat g = CMat::Zero(2, 2);
  g(0, 0) = 3.0;
  g(1, 1) = 1.0 / 3.0;
  const CMat c = cayley(g);
  EXPECT_NEAR(std::abs(c(0, 0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c(1, 1) + 0.5), 0.0, 1e-15);
}

TEST(Matcore, DetPowHalf) {
  CMat n = CMat::Zero(2, 2);
  n(0, 0) = 4.0;
  n(1, 1) = 9.0;
  EXPECT_NEAR(std::abs(det_powhalf_posreal(n) - 6.0), 0.0, 1e-14);
  // Eigenvalues 1 ± 2i: the product of principal roots is sqrt(5) e^{0} = sqrt(5).
  CMat m(2, 2);
  m << 1.0, 2.0, -2.0, 1.0;
  EXPECT_NEAR(std::abs(det_powhalf_posreal(m) - std::sqrt(5.0)), 0.0, 1e-14);
  expect_errc([] { det_powhalf_posreal(-identity(2)); }, Errc::not_positive_real);
}

TEST(Matcore, SingularSolveIsReported) {
  CMat m(2, 2);
  m << 1.0, 2.0, 2.0, 4.0;
  expect_errc([&] { solve(m, identity(2)); }, Errc::singular_matrix);
}

// ---------------------------------------------------------------------------
// sympgroup

TEST(Sympgroup, JMapsToMinusI) {
  const SuBlocks k = su_from_sp({1, j_matrix_real(1)});
  EXPECT_NEAR(std::abs(k.P(0, 0) - cplx(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(k.Q(0, 0)), 0.0, 1e-15);
}

TEST(Sympgroup, SqueezeBlocks) {
  const double r = 0.4;
  RMat g = RMat::Zero(2, 2);
  g(0, 0) = std::exp(r);
  g(1, 1) = std::exp(-r);
  const SuBlocks k = su_from_sp({1, g});
  EXPECT_NEAR(std::abs(k.P(0, 0) - std::cosh(r)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(k.Q(0, 0) - std::sinh(r)), 0.0, 1e-15);
}

TEST(Sympgroup, ConjugationIsAHomomorphism) {
  for (int n : {1, 2, 3}) {
    const SpReal a = random_sp(n, 5, 0.7), b = random_sp(n, 6, 0.7);
    EXPECT_TRUE(validate_sp(a).ok()) << validate_sp(a).describe();
    const SuBlocks ka = su_from_sp(a), kb = su_from_sp(b);
    EXPECT_TRUE(validate_su(ka).ok()) << validate_su(ka).describe();
    const SuBlocks lhs = su_from_sp(sp_mul(a, b)), rhs = su_mul(ka, kb);
    EXPECT_LT((lhs.full() - rhs.full()).norm(), 1e-12);
    EXPECT_LT((sp_from_su(ka).g - a.g).norm(), 1e-12);
    EXPECT_LT((su_mul(ka, su_inv(ka)).full() - identity(2 * n)).norm(), 1e-12);
    EXPECT_LT((sp_mul(a, sp_inv(a)).g - RMat::Identity(2 * n, 2 * n)).norm(), 1e-12);
  }
}

TEST(Sympgroup, LieConjugationCommutesWithExp) {
  const SpLieReal x = random_sp_lie(2, 9, 0.6);
  const SuLie xs = su_lie_from_sp_lie(x);
  EXPECT_TRUE(validate_su_lie(xs).ok());
  EXPECT_LT((su_exp(xs).full() - su_from_sp(sp_exp(x)).full()).norm(), 1e-12);
  const SpLieReal back = sp_lie_from_su_lie(xs);
  EXPECT_LT((back.full() - x.full()).norm(), 1e-13);
}

TEST(Sympgroup, ValidatorsReject) {
  RMat g = RMat::Identity(2, 2);
  g(0, 1) = 0.5;
  g(1, 0) = 0.5;
  expect_errc([&] { su_from_sp({1, g}); }, Errc::not_symplectic);
  expect_errc([] { require_su({1, c1(2.0), c1(0.0)}); }, Errc::not_in_s);
  expect_errc([] { require_su_lie({1, c1(1.0), c1(0.0)}); }, Errc::not_in_lie);
}

// ---------------------------------------------------------------------------
// quadrature

TEST(Quadrature, HermiteMoments) {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (int m : {8, 40, 80}) {
    const auto& rule = gauss_hermite(m);
    double s0 = 0, s2 = 0, s4 = 0;
    for (int i = 0; i < m; ++i) {
      const double x = rule.nodes[i];
      s0 += rule.weights[i];
      s2 += rule.weights[i] * x * x;
      s4 += rule.weights[i] * x * x * x * x;
    }
    EXPECT_NEAR(s0, sqrt_pi, 1e-13);
    EXPECT_NEAR(s2, sqrt_pi / 2, 1e-13);
    EXPECT_NEAR(s4, 3 * sqrt_pi / 4, 1e-13);
  }
}

TEST(Quadrature, ProbabilityMeasureMoments) {
  // E|w|² = 2/λ under e^{-λ|w|²/2} dμ_λ.
  for (double lambda : {0.5, 1.0, 3.0}) {
    auto one = [](std::span<const cplx>) { return cplx(1.0); };
    auto sq = [](std::span<const cplx> w) { return cplx(std::norm(w[0])); };
    EXPECT_NEAR(std::abs(quadrature_cn(one, 1, lambda, 20) - 1.0), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(quadrature_cn(sq, 1, lambda, 20) - 2.0 / lambda), 0.0, 1e-12);
  }
}

TEST(Quadrature, AdaptedContourForOscillatoryGaussian) {
  // ∫ exp(-(1 + 3i) x²) dx = sqrt(π / (1 + 3i)), principal root.
  auto f = [](std::span<const cplx> v) { return std::exp(-cplx(1.0, 3.0) * v[0] * v[0]); };
  const cplx got = integrate_rd_adapted(f, 1, 40, identity_frame(1));
  EXPECT_LT(rel(got, principal_sqrt(std::numbers::pi / cplx(1.0, 3.0))), 1e-12);
}

// ---------------------------------------------------------------------------
// gaussint

TEST(Gaussint, WorkedExample) {
  // A = D = 0, B = ½, u = v = 1: the integrand is exp(-x² - y² + 2x), integral π e.
  const GaussianIntegrand gi{1, c1(0.0), c1(0.5), c1(0.0), CVec::Ones(1), CVec::Ones(1)};
  EXPECT_LT(rel(gaussian_integral_closed(gi), std::numbers::pi * std::exp(1.0)), 1e-14);
  EXPECT_LT(rel(gaussian_integral_quadrature(gi, 40), std::numbers::pi * std::exp(1.0)), 1e-12);
}

TEST(Gaussint, ClosedFormAgreesWithQuadrature) {
  for (int n : {1, 2}) {
    for (int t = 0; t < (n == 1 ? 10 : 1); ++t) {
      Rng rng(21, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)});
      const GaussianIntegrand gi = random_gaussian_integrand(n, rng);
      EXPECT_LT(rel(gaussian_integral_quadrature(gi, n == 1 ? 80 : 40), gaussian_integral_closed(gi)), 1e-8);
    }
  }
}

TEST(Gaussint, DivergentIntegrandIsRejected) {
  const GaussianIntegrand gi{1, c1(1.0), c1(0.1), c1(0.0), CVec::Zero(1), CVec::Zero(1)};
  expect_errc([&] { gaussian_integral_closed(gi); }, Errc::divergent_integral);
}

TEST(Gaussint, ComposeIdentityKernels) {
  const GaussianKernel id = identity_kernel(2, 1.5);
  EXPECT_LT(kernel_distance(compose_kernels(id, id), id), 1e-14);
}

TEST(Gaussint, ComposeAgreesWithPointwiseQuadrature) {
  const double lambda = 1.3;
  const GaussianKernel a = sigma_kernel(random_su(1, 3, 0.6), lambda);
  const GaussianKernel b = sigma_kernel(random_su(1, 4, 0.6), lambda);
  const CPoint z{cplx(0.3, -0.2)}, w{cplx(-0.1, 0.4)};
  EXPECT_LT(rel(compose_quadrature(a, b, z, w, 80), compose_kernels(a, b)(z, w)), 1e-10);
}

TEST(Gaussint, BlockIdentities) {
  // a = d = 0, p = I: both sides vanish.
  EXPECT_LT(block_inverse_identity_residual(CMat::Zero(2, 2), CMat::Zero(2, 2), identity(2)), 1e-15);
  EXPECT_LT(cayley_block_identity_residual(su_identity(2)), 1e-15);
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const int n = 1 + t % 3;
    const CMat a = rng.complex_matrix(n, n, 0.5), d = rng.complex_matrix(n, n, 0.5), p = rng.complex_matrix(n, n, 0.5);
    EXPECT_LT(block_inverse_identity_residual(a, d, p), 1e-10);
    const SuBlocks k = random_su(n, rng.bits(), 0.6);
    EXPECT_LT(cayley_block_identity_residual(k), 1e-10);
    EXPECT_LT(det_identity_residual(k), 1e-10);
  }
}

// ---------------------------------------------------------------------------
// heisenberg

TEST(Heisenberg, GroupLaw) {
  const HeisElt a{{cplx(0.3, 0.1)}, 0.2}, b{{cplx(-0.5, 0.7)}, -0.4}, c{{cplx(0.2, -0.3)}, 0.9};
  const HeisElt l = heis_mul(heis_mul(a, b), c), r = heis_mul(a, heis_mul(b, c));
  EXPECT_NEAR(std::abs(l.z0[0] - r.z0[0]), 0.0, 1e-15);
  EXPECT_NEAR(l.c - r.c, 0.0, 1e-15);
  const HeisElt e = heis_mul(a, heis_inv(a));
  EXPECT_NEAR(std::abs(e.z0[0]), 0.0, 1e-15);
  EXPECT_NEAR(e.c, 0.0, 1e-15);
}

TEST(Heisenberg, FockRepresentationProperty) {
  const double lambda = 1.7;
  const HeisElt a{{cplx(0.3, 0.1), cplx(-0.2, 0.4)}, 0.2}, b{{cplx(-0.5, 0.7), cplx(0.1, 0.1)}, -0.4};
  const CPoint u{cplx(0.2, 0.5), cplx(-0.3, 0.1)};
  auto f = [&](std::span<const cplx> w) { return coherent_eval(u, w, lambda) * (1.0 + w[0] * w[1]); };
  const CPoint z{cplx(0.4, -0.6), cplx(0.9, 0.2)};
  auto inner = [&](std::span<const cplx> w) { return rho_fock_apply(b, f, w, lambda); };
  const cplx lhs = rho_fock_apply(a, inner, z, lambda);
  const cplx rhs = rho_fock_apply(heis_mul(a, b), f, z, lambda);
  EXPECT_LT(rel(lhs, rhs), 1e-13);
}

TEST(Heisenberg, SchrodingerRepresentationProperty) {
  const double lambda = 0.8;
  const HeisElt a{{cplx(0.3, 0.1)}, 0.2}, b{{cplx(-0.5, 0.7)}, -0.4};
  const int order[1] = {2};
  auto phi = [&](std::span<const double> x) { return cplx(hermite_function(order, lambda, x)); };
  auto inner = [&](std::span<const double> x) { return rho_schrod_apply(b, phi, x, lambda); };
  const double x[1] = {0.35};
  EXPECT_LT(rel(rho_schrod_apply(a, inner, x, lambda), rho_schrod_apply(heis_mul(a, b), phi, x, lambda)), 1e-13);
}

TEST(Heisenberg, ReproducingProperty) {
  // ∫ f(w) conj(e_z(w)) e^{-λ|w|²/2} dμ_λ(w) = f(z) for f = e_u times a polynomial.
  const double lambda = 1.2;
  const CPoint u{cplx(0.3, -0.2)}, z{cplx(-0.4, 0.5)};
  auto f = [&](std::span<const cplx> w) { return coherent_eval(u, w, lambda) * (1.0 + w[0] * w[0]); };
  auto integrand = [&](std::span<const cplx> w) { return f(w) * std::conj(coherent_eval(z, w, lambda)); };
  EXPECT_LT(rel(quadrature_cn(integrand, 1, lambda, 60), f(z)), 1e-7);
}

TEST(Heisenberg, BargmannOfGroundState) {
  // (λ/π)^{1/4} ∫ exp(-λz²/4 + λzx - λx²) dx = (λ/π)^{1/4} sqrt(π/λ) = (π/λ)^{1/4}.
  const double lambda = 2.0;
  const int order[1] = {0};
  auto phi = [&](std::span<const double> x) { return cplx(hermite_function(order, lambda, x)); };
  const CPoint z{cplx(0.7, -0.3)};
  EXPECT_LT(rel(bargmann_apply(phi, z, lambda), std::pow(std::numbers::pi / lambda, 0.25)), 1e-12);
}

TEST(Heisenberg, BargmannIntertwines) {
  for (int n : {1, 2}) {
    SuiteConfig c;
    c.name = "bargmann";
    c.n = n;
    c.trials = 4;
    c.seed = 3;
    c.tol = 1e-6;
    EXPECT_TRUE(run_suite(c).ok());
  }
}

// ---------------------------------------------------------------------------
// jacobi

TEST(Jacobi, SqueezeKernelAtOrigin) {
  const double r = 0.4;
  const CVec zero = CVec::Zero(1);
  const cplx v = bk_via_jacobi(su_squeeze(r), zero, zero, CharParams{1.0, -0.5});
  EXPECT_LT(rel(v, std::pow(std::cosh(r), -0.5)), 1e-14);
}

TEST(Jacobi, ActionIsCompatibleWithProduct) {
  Rng rng(17);
  for (int n : {1, 2}) {
    const JacobiGroupElt g1 = random_jacobi_elt(n, rng, 0.5, 0.4), g2 = random_jacobi_elt(n, rng, 0.5, 0.4);
    const JacobiPoint Z = random_jacobi_point(n, rng, 0.5, 0.6);
    const JacobiPoint lhs = jacobi_action(g1, jacobi_action(g2, Z));
    const JacobiPoint rhs = jacobi_action(jacobi_mul(g1, g2), Z);
    EXPECT_LT(point_distance(lhs, rhs), 1e-12);
  }
}

TEST(Jacobi, PkpRecomposes) {
  Rng rng(19);
  for (int n : {1, 2}) {
    // Element of the complexified group: complex Sp(n,C) exponential plus complex data.
    CMat a = rng.complex_matrix(n, n, 0.4), b = rng.complex_matrix(n, n, 0.4), c = rng.complex_matrix(n, n, 0.4);
    b = (0.5 * (b + b.transpose())).eval();
    c = (0.5 * (c + c.transpose())).eval();
    CMat x(2 * n, 2 * n);
    x << a, b, c, -a.transpose();
    const CMat g = mat_exp(x);
    const JacobiGroupEltC e{n,
                            to_vec(rng.point(n, 0.5)),
                            to_vec(rng.point(n, 0.5)),
                            rng.complex_uniform(0.5),
                            g.topLeftCorner(n, n),
                            g.topRightCorner(n, n),
                            g.bottomLeftCorner(n, n),
                            g.bottomRightCorner(n, n)};
    EXPECT_LT(jacobi_c_distance(pkp_recompose(pkp_decompose(e)), e), 1e-12);
  }
  const JacobiGroupEltC bad{1, CVec::Zero(1), CVec::Zero(1), 0.0, c1(0.0), c1(1.0), c1(-1.0), c1(0.0)};
  expect_errc([&] { pkp_decompose(bad); }, Errc::no_decomposition);
}

TEST(Jacobi, AutomorphyFactorCocycle) {
  // J(g1 g2, Z) = J(g1, g2·Z) J(g2, Z), integer m in the holomorphic range.
  Rng rng(23);
  const CharParams chi{1.4, -3.0};
  for (int n : {1, 2}) {
    const JacobiGroupElt g1 = random_jacobi_elt(n, rng, 0.5, 0.4), g2 = random_jacobi_elt(n, rng, 0.5, 0.4);
    const JacobiPoint Z = random_jacobi_point(n, rng, 0.5, 0.6);
    const cplx lhs = j_chi(jacobi_mul(g1, g2), Z, chi);
    const cplx rhs = j_chi(g1, jacobi_action(g2, Z), chi) * j_chi(g2, Z, chi);
    EXPECT_LT(rel(lhs, rhs), 1e-12);
  }
}

TEST(Jacobi, KernelIsHermitian) {
  Rng rng(29);
  const CharParams chi{0.9, -2.0};
  const JacobiPoint Z = random_jacobi_point(2, rng, 0.5, 0.6), W = random_jacobi_point(2, rng, 0.5, 0.6);
  EXPECT_LT(rel(k_chi(Z, W, chi), std::conj(k_chi(W, Z, chi))), 1e-13);
}

TEST(Jacobi, HeisenbergTranslationFormula) {
  // π((z0, z̄0), 0, I) f(Z) = exp((λ/4)(-|z0|² + 2 z̄0 y + z̄0 Y z̄0)) f(a(y - z0 + Y z̄0, Y)).
  Rng rng(31);
  const int n = 2;
  const CharParams chi{1.1, -3.0};
  const JacobiGroupElt g{n, to_vec(rng.point(n, 0.5)), 0.0, su_identity(n)};
  const JacobiPoint Z = random_jacobi_point(n, rng, 0.5, 0.6);
  const JacobiPoint probe = random_jacobi_point(n, rng, 0.5, 0.6);
  auto f = [&](const JacobiPoint& X) { return k_chi(X, probe, chi); };
  const CVec zb = g.z0.conjugate();
  const cplx e = -g.z0.squaredNorm() + 2.0 * (zb.transpose() * Z.y)(0, 0) + bilinear(zb, Z.Y, zb);
  const JacobiPoint moved{n, Z.y - g.z0 + Z.Y * zb, Z.Y};
  const cplx expected = std::exp(0.25 * chi.lambda * e) * f(moved);
  EXPECT_LT(rel(pi_chi_apply(g, f, Z, chi), expected), 1e-12);
}

TEST(Jacobi, KernelRestrictionMatchesSigmaKernel) {
  Rng rng(37);
  for (int n : {1, 2}) {
    for (int t = 0; t < 5; ++t) {
      const SuBlocks k = random_su(n, rng.bits(), 0.7);
      const CVec y = to_vec(rng.point(n, 0.7)), v = to_vec(rng.point(n, 0.7));
      const cplx direct = sigma_kernel(k, 1.3)(to_point(y), to_point(v));
      EXPECT_LT(rel(bk_via_jacobi(k, y, v, CharParams{1.3, -0.5}), direct), 1e-10);
    }
  }
}
