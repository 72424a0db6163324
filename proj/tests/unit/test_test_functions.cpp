#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "agler/error.hpp"
#include "agler/random.hpp"
#include "agler/test_functions.hpp"

using namespace agler;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::SpecError;
}

}  // namespace

TEST(TestFunctions, CoordinateProjection) {
  const TestFunctionFamily fam = TestFunctionFamily::polydisc(2);
  const Point x = Point::make(DomainTag::polydisc(2), {0.3, Complex(0, -0.4)});
  EXPECT_EQ(evaluate(fam, 0, x), Complex(0.3, 0));
  EXPECT_EQ(evaluate(fam, 1, x), Complex(0, -0.4));
  EXPECT_EQ(describe(fam.descriptor(0)), "z1");
}

TEST(TestFunctions, MagicFunctionAtZero) {
  const TestFunctionFamily fam = TestFunctionFamily::custom(DomainTag::symmetrized_bidisc(), {MagicFunction{0.0}});
  const Point x = symmetrize(0.2, Complex(0.1, 0.3));
  EXPECT_LT(std::abs(evaluate(fam, 0, x) + x[0] / 2.0), 1e-15);
}

TEST(TestFunctions, MagicFunctionAtOne) {
  const TestFunctionFamily fam = TestFunctionFamily::custom(DomainTag::symmetrized_bidisc(), {MagicFunction{1.0}});
  const Point x = symmetrize(0.3, Complex(0, -0.4));
  EXPECT_LT(std::abs(x[0] - Complex(0.3, -0.4)), 1e-15);
  EXPECT_LT(std::abs(x[1] - Complex(0, -0.12)), 1e-15);
  const Complex v = evaluate(fam, 0, x);
  EXPECT_LT(std::abs(v - (2.0 * x[1] - x[0]) / (2.0 - x[0])), 1e-15);
  EXPECT_LT(std::abs(v), 1.0);
}

TEST(TestFunctions, EVectors) {
  const ComplexVector e1 = e_vector(TestFunctionFamily::disc(), Point::disc(0.5));
  ASSERT_EQ(e1.size(), 1);
  EXPECT_EQ(e1(0), Complex(0.5, 0));
  const ComplexVector e2 = e_vector(TestFunctionFamily::polydisc(2), Point::make(DomainTag::polydisc(2), {0.1, Complex(0, 0.2)}));
  EXPECT_EQ(e2(0), Complex(0.1, 0));
  EXPECT_EQ(e2(1), Complex(0, 0.2));
  const ComplexVector e4 = e_vector(TestFunctionFamily::g2_grid(4), symmetrize(0.6, Complex(-0.3, 0.5)));
  ASSERT_EQ(e4.size(), 4);
  EXPECT_LT(e4.cwiseAbs().maxCoeff(), 1.0);
  EXPECT_EQ(e4, e_vector(TestFunctionFamily::g2_grid(4), symmetrize(0.6, Complex(-0.3, 0.5))));
}

TEST(TestFunctions, DomainMismatchOnEvaluate) {
  EXPECT_EQ(code_of([] { evaluate(TestFunctionFamily::disc(), 0, symmetrize(0.1, 0.2)); }), ErrorCode::DomainMismatch);
}

TEST(TestFunctions, SymmetrizeExamples) {
  const Point o = symmetrize(0.0, 0.0);
  EXPECT_EQ(o[0], Complex(0, 0));
  EXPECT_EQ(o[1], Complex(0, 0));
  const Point h = symmetrize(0.5, 0.5);
  EXPECT_EQ(h[0], Complex(1.0, 0));
  EXPECT_EQ(h[1], Complex(0.25, 0));
  EXPECT_TRUE(membership_check(symmetrize(0.3, Complex(0, -0.4)), 256).inside);
  EXPECT_EQ(code_of([] { symmetrize(1.0, 0.0); }), ErrorCode::NotInDisc);
}

TEST(TestFunctions, DesymmetrizeRoundTrip) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(3, s);
    const Complex z1 = rng.in_disc(0.99), z2 = rng.in_disc(0.99);
    const auto [a, b] = desymmetrize(symmetrize(z1, z2));
    const double direct = std::abs(a - z1) + std::abs(b - z2);
    const double swapped = std::abs(a - z2) + std::abs(b - z1);
    EXPECT_LT(std::min(direct, swapped), 1e-8);
  }
}

TEST(TestFunctions, MembershipExamples) {
  EXPECT_TRUE(membership_check(DomainTag::polydisc(2), {0.9, 0.99}, 64).inside);
  // pi(1, 1) = (2, 1) lies on the boundary: just inside and just outside.
  EXPECT_FALSE(membership_check(DomainTag::symmetrized_bidisc(), {2.0, 1.0}, 64).inside);
  EXPECT_TRUE(membership_check(DomainTag::symmetrized_bidisc(), {2.0 * 0.999, 0.999 * 0.999}, 64).inside);
  EXPECT_FALSE(membership_check(DomainTag::symmetrized_bidisc(), {2.0 * 1.001, 1.001 * 1.001}, 64).inside);
  const MembershipResult r = membership_check(symmetrize(0.2, 0.3), 64);
  EXPECT_TRUE(r.inside);
  EXPECT_LT(r.worst_modulus, 1.0);
  EXPECT_EQ(code_of([] { membership_check(symmetrize(0.2, 0.3), 4); }), ErrorCode::SpecError);
}

TEST(TestFunctions, RandomSymmetrizedPointsAreMembers) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    Rng rng(5, s);
    const Point x = symmetrize(rng.in_disc(), rng.in_disc());
    ASSERT_TRUE(membership_check(x, 256).inside) << s;
    EXPECT_LT(e_vector(TestFunctionFamily::g2_grid(64), x).cwiseAbs().maxCoeff(), 1.0);
  }
}

TEST(TestFunctions, PointValidation) {
  EXPECT_EQ(code_of([] { Point::disc(1.0); }), ErrorCode::NotInDisc);
  EXPECT_EQ(code_of([] { Point::make(DomainTag::polydisc(2), {0.1}); }), ErrorCode::DomainMismatch);
  EXPECT_EQ(code_of([] { Point::make(DomainTag::symmetrized_bidisc(), {2.0, 1.0}); }), ErrorCode::NotInDisc);
  EXPECT_EQ(code_of([] { TestFunctionFamily::custom(DomainTag::disc(), {}); }), ErrorCode::SpecError);
  EXPECT_EQ(code_of([] { TestFunctionFamily::custom(DomainTag::disc(), {Coordinate{1}}); }), ErrorCode::DomainMismatch);
}

TEST(TestFunctions, GridFamilyShape) {
  const TestFunctionFamily f = TestFunctionFamily::g2_grid();
  EXPECT_EQ(f.size(), 64u);
  EXPECT_EQ(f.grid_size(), 64u);
  EXPECT_TRUE(f.is_grid());
  EXPECT_LT(std::abs(std::get<MagicFunction>(f.descriptor(16)).alpha - Complex(0, 1)), 1e-15);
  EXPECT_FALSE(TestFunctionFamily::polydisc(3).is_grid());
  EXPECT_EQ(TestFunctionFamily::for_domain(DomainTag::polydisc(3)).size(), 3u);
}
