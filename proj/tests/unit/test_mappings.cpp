#include "coderiv/mappings.hpp"
#include "coderiv/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace coderiv;

TEST(MappingsTest, FAtSimplePoints) {
  EXPECT_TRUE(eval_f(Point2(1, 0)).isApprox(Point2(1, 0)));
  EXPECT_TRUE(eval_f(Point2(0, 1)).isApprox(Point2(-1, 0)));
  EXPECT_TRUE(eval_f(Point2(1, 1)).isApprox(Point2(0, std::numbers::sqrt2)));
  EXPECT_TRUE(is_origin(eval_f(Point2::Zero())));
}

TEST(MappingsTest, FDoublesThePolarAngle) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double r = rng.uniform(1e-3, 50.0);
    const double t = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const Point2 expected(r * std::cos(2 * t), r * std::sin(2 * t));
    const Point2 got = eval_f(Point2(r * std::cos(t), r * std::sin(t)));
    EXPECT_NEAR((got - expected).norm(), 0.0, 1e-12 * r);
  }
}

TEST(MappingsTest, FPreservesNorm) {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Point2 x(random_unit_vector(2, rng) * rng.uniform(0.0, 1e3));
    EXPECT_NEAR(eval_f(x).norm(), x.norm(), 1e-12 * (1.0 + x.norm()));
  }
}

TEST(MappingsTest, GIsBlockwise) {
  const Point4 x(3, -4, 0, 0);
  const Point4 gx = eval_g(x);
  EXPECT_TRUE(gx.head<2>().isApprox(eval_f(Point2(3, -4))));
  EXPECT_TRUE(is_origin(gx.tail<2>()));
  EXPECT_TRUE(is_origin(eval_g(Point4::Zero())));

  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const Point4 p(random_unit_vector(4, rng) * rng.uniform(0.1, 10.0));
    const Point4 q = eval_g(p);
    EXPECT_TRUE(q.head<2>().isApprox(eval_f(p.head<2>())));
    EXPECT_TRUE(q.tail<2>().isApprox(eval_f(p.tail<2>())));
    EXPECT_NEAR(q.norm(), p.norm(), 1e-12 * p.norm());
  }
}

TEST(MappingsTest, HSharesTheDenominator) {
  const Point4 x(1, 1, 1, 1);
  EXPECT_TRUE(eval_h(x).isApprox(Point4(0, 1, 0, 1)));
  EXPECT_TRUE(is_origin(eval_h(Point4::Zero())));

  Rng rng(14);
  for (int i = 0; i < 500; ++i) {
    const Point4 p(random_unit_vector(4, rng) * rng.uniform(0.1, 10.0));
    const double a = p.head<2>().squaredNorm();
    const double b = p.tail<2>().squaredNorm();
    EXPECT_NEAR(eval_h(p).squaredNorm(), (a * a + b * b) / p.squaredNorm(), 1e-12 * p.squaredNorm());
  }
}

TEST(MappingsTest, EvaluateChecksDimension) {
  EXPECT_THROW(evaluate(MapId::F2, VecX::Zero(4)), ConfigError);
  EXPECT_THROW(evaluate(MapId::G4, VecX::Zero(2)), ConfigError);
  const VecX p = (VecX(4) << 1, 2, 3, 4).finished();
  EXPECT_TRUE(evaluate(MapId::H4, p).isApprox(VecX(eval_h(Point4(p)))));
}

TEST(MappingsTest, MapIdParsing) {
  EXPECT_EQ(parse_map_id("f"), MapId::F2);
  EXPECT_EQ(parse_map_id("G4"), MapId::G4);
  EXPECT_EQ(parse_map_id("h"), MapId::H4);
  EXPECT_THROW(parse_map_id("k"), ConfigError);
  EXPECT_EQ(dimension(MapId::F2), 2);
  EXPECT_EQ(dimension(MapId::H4), 4);
}
