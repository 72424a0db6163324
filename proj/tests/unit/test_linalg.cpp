#include <gtest/gtest.h>

#include "agler/error.hpp"
#include "agler/linalg.hpp"
#include "agler/random.hpp"
#include "agler/kernels.hpp"
#include "oracles.hpp"

using namespace agler;

namespace {

HermitianMatrix random_hermitian(Index n, std::uint64_t seed) {
  Rng rng(seed, 0);
  const ComplexMatrix g = rng.gaussian_matrix(n, n);
  return HermitianMatrix::from((g + g.adjoint()) * 0.5);
}

HermitianMatrix random_psd(Index n, std::uint64_t seed) {
  Rng rng(seed, 0);
  const ComplexMatrix g = rng.gaussian_matrix(n, n);
  return HermitianMatrix::from(g.adjoint() * g, 1e-10);
}

ComplexMatrix real2(double a, double b, double c, double d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(Linalg, IdentityExtremes) {
  const SpectralReport r = min_max_eigenvalues(HermitianMatrix::identity(2));
  EXPECT_DOUBLE_EQ(r.min_eig, 1.0);
  EXPECT_DOUBLE_EQ(r.max_eig, 1.0);
}

TEST(Linalg, AllOnesExtremes) {
  const SpectralReport r = min_max_eigenvalues(HermitianMatrix::all_ones(2));
  EXPECT_NEAR(r.min_eig, 0.0, 1e-15);
  EXPECT_NEAR(r.max_eig, 2.0, 1e-15);
}

TEST(Linalg, EigenvaluesMatchInertiaOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HermitianMatrix h = random_hermitian(5, seed);
    const RealVector ev = eigenvalues(h);
    const std::vector<double> ref = oracle::eigenvalues(oracle::to_mat(h.matrix()));
    for (Index k = 0; k < 5; ++k) EXPECT_NEAR(ev(k), ref[k], 1e-8) << "seed " << seed;
  }
}

TEST(Linalg, WitnessVectorRealisesMinimum) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HermitianMatrix h = random_hermitian(6, seed + 100);
    const SpectralReport r = min_max_eigenvalues(h);
    const ComplexVector& v = r.witness_vector;
    const double q = (v.adjoint() * h.matrix() * v)(0, 0).real();
    EXPECT_NEAR(q, r.min_eig * v.squaredNorm(), 1e-8 * std::max(1.0, std::abs(r.min_eig)));
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LE(r.min_eig, r.max_eig);
  }
}

TEST(Linalg, NonHermitianRejected) {
  try {
    HermitianMatrix::from(real2(1, 2, 0, 1));
    FAIL() << "expected NonHermitianInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonHermitianInput);
  }
}

TEST(Linalg, NearHermitianIsSymmetrised) {
  ComplexMatrix m = real2(1, 2, 2, 1);
  m(0, 1) += 1e-13;
  const HermitianMatrix h = HermitianMatrix::from(m);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(Linalg, IsPsdExamples) {
  EXPECT_TRUE(is_psd(HermitianMatrix::identity(3), 0.0).psd);
  const PsdCheck bad = is_psd(HermitianMatrix::from(real2(1, 2, 2, 1)), 1e-9);
  EXPECT_FALSE(bad.psd);
  EXPECT_NEAR(bad.report.min_eig, -1.0, 1e-12);
  EXPECT_TRUE(is_psd(szego_gram(disc_points({0.0, 0.5})).gram()).psd);
}

TEST(Linalg, DefaultToleranceIsRelative) {
  const HermitianMatrix h = HermitianMatrix::from(real2(1e6, 0, 0, -1e-4));
  EXPECT_DOUBLE_EQ(default_psd_tolerance(h), 1e-9 * 1e6);
  EXPECT_TRUE(is_psd(h).psd);
  EXPECT_FALSE(is_psd(h, 0.0).psd);
}

TEST(Linalg, SchurProductExamples) {
  const HermitianMatrix a = HermitianMatrix::from(real2(1, 2, 2, 1));
  const HermitianMatrix b = HermitianMatrix::from(real2(5, 6, 6, 5));
  const ComplexMatrix ab = schur_product(a, b).matrix();
  EXPECT_EQ(ab, real2(5, 12, 12, 5));
  const ComplexMatrix ai = schur_product(a, HermitianMatrix::identity(2)).matrix();
  EXPECT_EQ(ai, real2(1, 0, 0, 1));
  try {
    schur_product(a, HermitianMatrix::identity(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Linalg, SchurProductOfPsdIsPsd) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 6);
    const HermitianMatrix p = schur_product(random_psd(n, 2 * seed), random_psd(n, 2 * seed + 1));
    ASSERT_TRUE(is_psd(p, 1e-9 * std::max(1.0, p.max_diagonal())).psd) << "seed " << seed;
  }
}

TEST(Linalg, UnitaryDiagonalInvariance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const HermitianMatrix h = random_hermitian(5, seed + 7);
    Rng rng(seed, 3);
    ComplexVector phases(5);
    for (Index i = 0; i < 5; ++i) phases(i) = std::polar(1.0, rng.uniform(0.0, 6.283185307179586));
    const ComplexMatrix d = phases.asDiagonal();
    const SpectralReport a = min_max_eigenvalues(h);
    const SpectralReport b = min_max_eigenvalues(HermitianMatrix::from(d.adjoint() * h.matrix() * d));
    EXPECT_NEAR(a.min_eig, b.min_eig, 1e-8);
    EXPECT_NEAR(a.max_eig, b.max_eig, 1e-8);
  }
}

TEST(Linalg, OnlyZeroIsPsdAndNsd) {
  const HermitianMatrix z = HermitianMatrix::from(ComplexMatrix::Zero(3, 3));
  EXPECT_TRUE(is_psd(z, 0.0).psd);
  const HermitianMatrix h = random_hermitian(3, 5);
  const HermitianMatrix neg = HermitianMatrix::from(-h.matrix());
  EXPECT_FALSE(is_psd(h, 0.0).psd && is_psd(neg, 0.0).psd);
}

TEST(Linalg, ProjectPsdClipsNegativeSpectrum) {
  const HermitianMatrix p = project_psd(HermitianMatrix::from(real2(1, 2, 2, 1)));
  EXPECT_EQ(p.dim(), 2);
  EXPECT_NEAR(min_max_eigenvalues(p).min_eig, 0.0, 1e-12);
  EXPECT_NEAR(min_max_eigenvalues(p).max_eig, 3.0, 1e-12);
}

TEST(Linalg, LeastSquaresExamples) {
  ComplexVector b(3);
  b << 1.0, Complex(2, -1), 3.0;
  const LeastSquaresResult id = solve_least_squares(ComplexMatrix::Identity(3, 3), b);
  EXPECT_LT((id.x - b).norm(), 1e-14);

  ComplexMatrix a(2, 1);
  a << 1.0, 1.0;
  ComplexVector obs(2);
  obs << 1.0, 3.0;
  const LeastSquaresResult mean = solve_least_squares(a, obs);
  EXPECT_NEAR(std::abs(mean.x(0) - 2.0), 0.0, 1e-14);

  Rng rng(9, 0);
  const ComplexMatrix m = rng.gaussian_matrix(8, 5);
  const ComplexVector rhs = rng.gaussian_matrix(8, 1).col(0);
  const LeastSquaresResult ls = solve_least_squares(m, rhs);
  EXPECT_LT((m.adjoint() * (m * ls.x - rhs)).norm(), 1e-8);
  EXPECT_FALSE(ls.rank_deficient);
}

TEST(Linalg, LeastSquaresFlagsRankDeficiency) {
  ComplexMatrix a = ComplexMatrix::Zero(3, 2);
  a.col(0) << 1.0, 2.0, 3.0;
  a.col(1) = a.col(0);
  ComplexVector b(3);
  b << 1.0, 2.0, 3.0;
  const LeastSquaresResult r = solve_least_squares(a, b);
  EXPECT_TRUE(r.rank_deficient);
  EXPECT_EQ(r.rank, 1);
  EXPECT_NEAR(std::abs(r.x(0) - r.x(1)), 0.0, 1e-12);  // minimum-norm solution splits evenly
}
