#include "coderiv/derivatives.hpp"
#include "coderiv/mappings.hpp"
#include "coderiv/sampling.hpp"

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace coderiv;

namespace {

// Richardson-extrapolated central differences in the row layout, with the
// step scaled to the distance from the non-smooth set.
MatX richardson_jacobian(MapId map, const VecX& z, double scale) {
  const int n = dimension(map);
  auto central = [&](double h) {
    MatX out(n, n);
    for (int j = 0; j < n; ++j) {
      VecX p = z, m = z;
      p[j] += h;
      m[j] -= h;
      out.row(j) = ((evaluate(map, p) - evaluate(map, m)) / (2 * h)).transpose();
    }
    return out;
  };
  const double h = 1e-3 * scale;
  return (4.0 * central(h / 2) - central(h)) / 3.0;
}

// Jacobian of the angle doubling map from polar coordinates:
// d/dr and (1/r) d/dt of r (cos 2t, sin 2t).
Mat2 polar_jacobian(double t) {
  Mat2 basis_in, basis_out;
  basis_in << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  basis_out << std::cos(2 * t), -2 * std::sin(2 * t), std::sin(2 * t), 2 * std::cos(2 * t);
  return basis_out * basis_in.transpose();  // standard orientation
}

}  // namespace

TEST(DerivativesTest, JacobianFAtAxisPoint) {
  EXPECT_TRUE(jacobian_f(Point2(1, 0)).isApprox((Mat2() << 1, 0, 0, 2).finished()));
  EXPECT_TRUE(jacobian_f(Point2(0, 1)).isApprox((Mat2() << 0, 2, -1, 0).finished()));
  EXPECT_THROW(jacobian_f(Point2::Zero()), DomainError);
}

TEST(DerivativesTest, JacobianFMatchesPolarForm) {
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const double t = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const double r = std::pow(10.0, rng.uniform(-4.0, 4.0));
    const Point2 z(r * std::cos(t), r * std::sin(t));
    EXPECT_LT((coderivative_matrix_f(z) - polar_jacobian(t)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DerivativesTest, RowLayoutGivesFirstOrderExpansion) {
  const Point2 z(0.4, -1.3);
  const Point2 du(1e-6, 2e-6);
  const Point2 linear = eval_f(z) + (du.transpose() * jacobian_f(z)).transpose();
  EXPECT_LT((eval_f(z + du) - linear).norm(), 1e-11);
}

TEST(DerivativesTest, AnalyticMatchesRichardsonAtAllScales) {
  Rng rng(22);
  for (MapId map : {MapId::F2, MapId::G4, MapId::H4}) {
    const int n = dimension(map);
    for (int i = 0; i < 300; ++i) {
      const VecX z = std::pow(10.0, rng.uniform(-3.0, 3.0)) * random_unit_vector(n, rng);
      double scale = z.norm();
      if (map == MapId::G4) scale = std::min(z.head(2).norm(), z.tail(2).norm());
      const MatX fd = richardson_jacobian(map, z, scale);
      EXPECT_LT((jacobian(map, z) - fd).cwiseAbs().maxCoeff(), 1e-7) << to_string(map) << " at " << z.transpose();
    }
  }
}

TEST(DerivativesTest, JacobianHAtBasisVector) {
  const Mat4 expected = (Mat4() << 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0).finished();
  EXPECT_TRUE(jacobian_h(Point4(1, 0, 0, 0)).isApprox(expected));
  EXPECT_THROW(jacobian_h(Point4::Zero()), DomainError);
}

TEST(DerivativesTest, JacobianHWithZeroBlockKillsThatBlock) {
  const Mat4 j = jacobian_h(Point4(0, 0, 1, 1));
  EXPECT_LT(j.topRows<2>().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DerivativesTest, JacobianGIsBlockDiagonal) {
  const Point4 z(0.3, -1.7, 2.0, 0.5);
  const Mat4 j = jacobian_g(z);
  EXPECT_TRUE((j.topLeftCorner<2, 2>().isApprox(jacobian_f(Point2(0.3, -1.7)))));
  EXPECT_TRUE((j.bottomRightCorner<2, 2>().isApprox(jacobian_f(Point2(2.0, 0.5)))));
  EXPECT_EQ((j.topRightCorner<2, 2>().cwiseAbs().maxCoeff()), 0.0);
  EXPECT_THROW(jacobian_g(Point4(0, 0, 1, 2)), DomainError);
}

TEST(DerivativesTest, SingularValuesOfF) {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    const Point2 z(random_unit_vector(2, rng) * std::pow(10.0, rng.uniform(-3.0, 3.0)));
    const Eigen::Vector2d sv = Eigen::JacobiSVD<Mat2>(jacobian_f(z)).singularValues();
    EXPECT_NEAR(sv[0], 2.0, 1e-12);
    EXPECT_NEAR(sv[1], 1.0, 1e-12);
  }
}

TEST(DerivativesTest, CoderivativeOfFAtOrigin) {
  EXPECT_EQ(coderivative_f(Point2::Zero(), Point2::Zero()).kind(), CoderivKind::kSingletonTheta);
  EXPECT_TRUE(coderivative_f(Point2::Zero(), Point2(1, 0)).is_empty());
  EXPECT_TRUE(coderivative_f(Point2::Zero(), Point2(0, -1e-9)).is_empty());
  EXPECT_EQ(to_string(CoderivKind::kEmpty), "EMPTY");
}

TEST(DerivativesTest, CoderivativeActionIsJacobianTimesY) {
  const Point2 z(1, 1);
  const Point2 y(0, 1);
  const auto x = coderivative_f(z, y);
  ASSERT_EQ(x.kind(), CoderivKind::kUnique);
  EXPECT_TRUE(x.value().isApprox(jacobian_f(z) * y));
  // (1,1) with y = (0,1) lies on the equality locus, so the norm is exactly |y|.
  EXPECT_NEAR(x.value().norm(), 1.0, 1e-15);
}

TEST(DerivativesTest, NormIdentityAndExpansion) {
  Rng rng(24);
  for (int i = 0; i < 2000; ++i) {
    const Point2 z(random_unit_vector(2, rng) * rng.uniform(0.01, 10.0));
    const Point2 y(random_unit_vector(2, rng) * rng.uniform(0.01, 10.0));
    const double lhs = coderivative_f(z, y).value().squaredNorm();
    EXPECT_NEAR(lhs, norm_identity_rhs_f(z, y), 1e-12 * lhs);
    EXPECT_GE(std::sqrt(lhs), y.norm() * (1 - 1e-15));
    EXPECT_LE(std::sqrt(lhs), 2.0 * y.norm() * (1 + 1e-15));
  }
}

TEST(DerivativesTest, CoderivativeOfGCases) {
  const Point4 nondeg(1, 2, -1, 0.5);
  const Point4 y(0.3, -0.2, 1.0, 2.0);
  EXPECT_TRUE(coderivative_g(nondeg, y).value().isApprox(jacobian_g(nondeg) * y));

  const Point4 first_zero(0, 0, 1, 1);
  EXPECT_TRUE(coderivative_g(first_zero, Point4(1, 0, 0, 1)).is_empty());
  const auto ok = coderivative_g(first_zero, Point4(0, 0, 0, 1));
  ASSERT_EQ(ok.kind(), CoderivKind::kUnique);
  EXPECT_TRUE(ok.value().tail<2>().isApprox(jacobian_f(Point2(1, 1)) * Point2(0, 1)));
  EXPECT_EQ(ok.value().head<2>().norm(), 0.0);

  EXPECT_TRUE(coderivative_g(Point4::Zero(), y).is_empty());
  EXPECT_EQ(coderivative_g(Point4::Zero(), Point4::Zero()).kind(), CoderivKind::kSingletonTheta);
}

TEST(DerivativesTest, BlockNormIdentityForG) {
  Rng rng(25);
  for (int i = 0; i < 500; ++i) {
    const Point4 z(random_unit_vector(4, rng) * rng.uniform(0.1, 10.0));
    const Point4 y(random_unit_vector(4, rng));
    const double lhs = coderivative_g(z, y).value().squaredNorm();
    EXPECT_NEAR(lhs, norm_identity_rhs_g(z, y), 1e-12 * lhs);
  }
  EXPECT_THROW(norm_identity_rhs_g(Point4(0, 0, 1, 1), Point4(1, 0, 0, 0)), DomainError);
  EXPECT_NEAR(norm_identity_rhs_g(Point4(0, 0, 1, 1), Point4(0, 0, 0, 1)), 1.0, 1e-15);
}

TEST(DerivativesTest, Differentiability) {
  EXPECT_FALSE(is_differentiable(MapId::F2, VecX::Zero(2)));
  EXPECT_FALSE(is_differentiable(MapId::G4, (VecX(4) << 1, 0, 0, 0).finished()));
  EXPECT_TRUE(is_differentiable(MapId::H4, (VecX(4) << 1, 0, 0, 0).finished()));
}
