#include <gtest/gtest.h>

#include <cmath>

#include "agler/error.hpp"
#include "agler/interpolation.hpp"
#include "agler/random.hpp"
#include "oracles.hpp"

using namespace agler;

namespace {

ComplexVector vec(std::initializer_list<Complex> v) {
  ComplexVector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (Complex c : v) out(i++) = c;
  return out;
}

InterpolationProblem disc_problem(std::vector<Complex> z, std::initializer_list<Complex> x, double c = 1.0) {
  return InterpolationProblem::make(disc_points(z), vec(x), c, TestFunctionFamily::disc());
}

}  // namespace

TEST(PickMatrix, ScalarCase) {
  const InterpolationProblem p = disc_problem({0.0}, {0.5});
  const HermitianMatrix m = pick_matrix(p, szego_gram(p.points()));
  EXPECT_NEAR(m(0, 0).real(), 0.75, 1e-15);
  EXPECT_TRUE(is_psd(m).psd);
}

TEST(PickMatrix, SchwarzExamples) {
  const InterpolationProblem bad = disc_problem({0.0, 0.5}, {0.0, 0.6});
  const HermitianMatrix m = pick_matrix(bad, szego_gram(bad.points()));
  EXPECT_NEAR(m(1, 1).real(), 0.64 * 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(m(0, 1).real(), 1.0, 1e-15);
  EXPECT_FALSE(is_psd(m).psd);

  const InterpolationProblem edge = disc_problem({0.0, 0.5}, {0.0, 0.5});
  const HermitianMatrix e = pick_matrix(edge, szego_gram(edge.points()));
  EXPECT_NEAR(e(1, 1).real(), 1.0, 1e-14);
  EXPECT_TRUE(is_psd(e).psd);
}

TEST(PickMatrix, PointMismatch) {
  const InterpolationProblem p = disc_problem({0.0, 0.5}, {0.0, 0.5});
  try {
    pick_matrix(p, szego_gram(disc_points({0.0, 0.4})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointMismatch);
  }
}

TEST(ProblemValidation, Rejections) {
  EXPECT_THROW(disc_problem({0.0, 0.5}, {0.0}), Error);
  EXPECT_THROW(disc_problem({0.0, 0.5}, {0.0, 0.1}, -1.0), Error);
  EXPECT_THROW(disc_problem({0.2, 0.2}, {0.0, 0.1}), Error);
  EXPECT_THROW(InterpolationProblem::make(disc_points({0.0}), vec({0.0}), 1.0, TestFunctionFamily::polydisc(2)), Error);
}

TEST(AglerFeasibility, SchwarzFeasible) {
  const InterpolationProblem p = disc_problem({0.0, 0.5}, {0.0, 0.5});
  const FeasibilityResult r = agler_feasibility(p);
  ASSERT_EQ(r.status(), FeasibilityStatus::Feasible);
  const CertificateCheck c = verify_certificate(*r.certificate(), p);
  EXPECT_TRUE(c.passed);
  EXPECT_LE(c.residual, 1e-8);
  EXPECT_EQ(r.route.label(), "EXACT");
  // Single test function: Gamma is (C^2 - x x*) o s, i.e. the Pick matrix.
  const HermitianMatrix expect = pick_matrix(p, szego_gram(p.points()));
  EXPECT_LT((r.certificate()->gammas[0].matrix() - expect.matrix()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(AglerFeasibility, SchwarzInfeasible) {
  const InterpolationProblem p = disc_problem({0.0, 0.5}, {0.0, 0.6});
  const FeasibilityResult r = agler_feasibility(p);
  ASSERT_EQ(r.status(), FeasibilityStatus::Infeasible);
  EXPECT_GT(r.witness()->violation, 0.0);
  const WitnessCheck w = verify_witness(*r.witness(), p);
  EXPECT_TRUE(w.passed);
  EXPECT_NEAR(w.trace, 1.0, 1e-9);
  EXPECT_GE(w.min_eigenvalue, -1e-9);
  EXPECT_GE(w.min_masked_eigenvalue, -1e-9);
}

TEST(AglerFeasibility, DiagonalBidisc) {
  const DomainTag d2 = DomainTag::polydisc(2);
  const PointConfig pts(d2, {Point::make(d2, {0.0, 0.0}), Point::make(d2, {0.5, 0.5})});
  const InterpolationProblem p = InterpolationProblem::make(pts, vec({0.0, 0.5}), 1.0, TestFunctionFamily::polydisc(2));
  const FeasibilityResult r = agler_feasibility(p);
  ASSERT_EQ(r.status(), FeasibilityStatus::Feasible);
  EXPECT_TRUE(verify_certificate(*r.certificate(), p).passed);
}

TEST(AglerFeasibility, NegativeDiagonalShortcut) {
  const InterpolationProblem p = disc_problem({0.0, 0.5}, {0.0, 1.5});
  const FeasibilityResult r = agler_feasibility(p);
  ASSERT_EQ(r.status(), FeasibilityStatus::Infeasible);
  EXPECT_TRUE(verify_witness(*r.witness(), p).passed);
}

TEST(AglerFeasibility, BidiscRoundTrips) {
  const DomainTag d2 = DomainTag::polydisc(2);
  int decided = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(101, s);
    std::vector<Point> pts;
    ComplexVector x(3);
    for (int i = 0; i < 3; ++i) {
      pts.push_back(Point::make(d2, {rng.in_disc(0.8), rng.in_disc(0.8)}));
      x(i) = rng.in_disc(1.0);
    }
    const InterpolationProblem p = InterpolationProblem::make(PointConfig(d2, pts), x, 1.0, TestFunctionFamily::polydisc(2));
    const FeasibilityResult r = agler_feasibility(p);
    if (r.feasible()) {
      EXPECT_TRUE(verify_certificate(*r.certificate(), p).passed) << s;
      ++decided;
    } else if (r.infeasible()) {
      EXPECT_TRUE(verify_witness(*r.witness(), p).passed) << s;
      ++decided;
    }
  }
  EXPECT_GE(decided, 15);
}

TEST(AglerFeasibility, KernelCheckAgreesWithInfeasibility) {
  // A necessary-condition failure at an admissible kernel rules out feasibility.
  const DomainTag d2 = DomainTag::polydisc(2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(202, s);
    std::vector<Point> pts;
    ComplexVector x(3);
    for (int i = 0; i < 3; ++i) {
      pts.push_back(Point::make(d2, {rng.in_disc(0.8), rng.in_disc(0.8)}));
      x(i) = rng.in_disc(1.0);
    }
    const InterpolationProblem p = InterpolationProblem::make(PointConfig(d2, pts), x, 1.0, TestFunctionFamily::polydisc(2));
    const std::vector<KernelSample> ks{product_szego_gram(p.points())};
    const std::vector<KernelMargin> m = kernel_necessary_check(p, ks);
    if (m[0].min_eigenvalue < -1e-6) EXPECT_NE(agler_feasibility(p).status(), FeasibilityStatus::Feasible) << s;
  }
}

TEST(VerifyCertificate, HandBuiltScalar) {
  const InterpolationProblem p = disc_problem({0.0}, {0.0});
  AglerCertificate cert;
  cert.gammas.push_back(HermitianMatrix::identity(1));
  EXPECT_TRUE(verify_certificate(cert, p).passed);
}

TEST(VerifyCertificate, PerturbationFails) {
  const InterpolationProblem p = disc_problem({0.0, 0.5}, {0.0, 0.5});
  const FeasibilityResult r = agler_feasibility(p);
  ASSERT_TRUE(r.feasible());
  AglerCertificate cert = *r.certificate();
  ComplexMatrix g = cert.gammas[0].matrix();
  g(1, 1) += 1e-3;
  cert.gammas[0] = HermitianMatrix::from(g);
  const CertificateCheck c = verify_certificate(cert, p);
  EXPECT_FALSE(c.passed);
  EXPECT_NEAR(c.residual, 1e-3 * 0.75, 1e-6);  // D(1, 1) = 1 - 0.25
}

TEST(VerifyWitness, RejectsBadTrace) {
  const InterpolationProblem p = disc_problem({0.0, 0.5}, {0.0, 0.6});
  const FeasibilityResult r = agler_feasibility(p);
  ASSERT_TRUE(r.infeasible());
  DualWitness w = *r.witness();
  w.W = HermitianMatrix::from(2.0 * w.W.matrix());
  EXPECT_FALSE(verify_witness(w, p).passed);
}

TEST(MinimalNorm, ZeroTargets) {
  const MinimalNormResult r = minimal_norm(disc_points({0.0, 0.5}), vec({0.0, 0.0}), TestFunctionFamily::disc());
  EXPECT_EQ(r.status, MinimalNormStatus::Converged);
  EXPECT_EQ(r.value, 0.0);
}

TEST(MinimalNorm, ScaleAndSchwarz) {
  const MinimalNormResult r = minimal_norm(disc_points({0.0, 0.5}), vec({0.0, 0.6}), TestFunctionFamily::disc());
  EXPECT_EQ(r.status, MinimalNormStatus::Converged);
  EXPECT_NEAR(r.value, 1.2, 1e-6);
  EXPECT_EQ(r.route.label(), "EXACT");
}

TEST(MinimalNorm, TwoPointClosedForm) {
  for (double r : {0.3, 0.5, 0.7}) {
    const MinimalNormResult m = minimal_norm(disc_points({0.0, r}), vec({1.0, 0.0}), TestFunctionFamily::disc());
    EXPECT_NEAR(m.value, 1.0 / r, 1e-6) << r;
    EXPECT_NEAR(m.value, oracle::two_point_norm(0.0, r, 1.0, 0.0), 1e-6) << r;
    EXPECT_LE(m.lower, m.value);
  }
}

TEST(MinimalNorm, RandomTwoPointOracle) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(303, s);
    const Complex z1 = rng.in_disc(0.9), z2 = rng.in_disc(0.9), x1 = rng.in_disc(), x2 = rng.in_disc();
    const MinimalNormResult m = minimal_norm(disc_points({z1, z2}), vec({x1, x2}), TestFunctionFamily::disc());
    EXPECT_NEAR(m.value, oracle::two_point_norm(z1, z2, x1, x2), 1e-6) << s;
  }
}

TEST(KernelNecessaryCheck, Examples) {
  const InterpolationProblem feas = disc_problem({0.0, 0.5, -0.3}, {0.0, 0.25, 0.09});  // z^2
  std::vector<KernelSample> samples;
  for (std::uint64_t s = 0; s < 100; ++s) samples.push_back(scale_by_random_psd(szego_gram(feas.points()), s));
  for (const KernelMargin& m : kernel_necessary_check(feas, samples)) EXPECT_GE(m.min_eigenvalue, -1e-9);

  const InterpolationProblem bad = disc_problem({0.0, 0.5}, {0.0, 0.6});
  const std::vector<KernelSample> sz{szego_gram(bad.points())};
  const std::vector<KernelMargin> m = kernel_necessary_check(bad, sz);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_LT(m[0].min_eigenvalue, 0.0);
  EXPECT_EQ(m[0].provenance, "szego");

  EXPECT_TRUE(kernel_necessary_check(bad, {}).empty());
}
