#include "coderiv/derivatives.hpp"

namespace coderiv {
namespace {

// Jacobian block of f, shared by f and both blocks of g.
Mat2 f_block(double z1, double z2) {
  const double r2 = z1 * z1 + z2 * z2;
  const double denom = r2 * std::sqrt(r2);
  Mat2 m;
  m << (z1 * z1 + 3.0 * z2 * z2) * z1 / denom, 2.0 * z2 * z2 * z2 / denom,
      -(3.0 * z1 * z1 + z2 * z2) * z2 / denom, 2.0 * z1 * z1 * z1 / denom;
  return m;
}

double correction_term(double z1, double z2, double y1, double y2) {
  const double r2 = z1 * z1 + z2 * z2;
  const double t = y1 * z1 * z2 / r2 - y2 * (z1 * z1 - z2 * z2) / (2.0 * r2);
  return 12.0 * t * t;
}

}  // namespace

std::string_view to_string(CoderivKind kind) {
  switch (kind) {
    case CoderivKind::kUnique:
      return "UNIQUE";
    case CoderivKind::kSingletonTheta:
      return "SINGLETON_THETA";
    case CoderivKind::kEmpty:
      return "EMPTY";
  }
  return "?";
}

Mat2 jacobian_f(const Point2& z) {
  if (is_origin(z)) throw DomainError("f is not Frechet differentiable at the origin");
  return f_block(z[0], z[1]);
}

Mat2 coderivative_matrix_f(const Point2& z) { return jacobian_f(z).transpose(); }

CoderivResult<2> coderivative_f(const Point2& z, const Point2& y) {
  if (!is_origin(z)) return CoderivResult<2>::unique(apply_coderivative(coderivative_matrix_f(z), y));
  return is_origin(y) ? CoderivResult<2>::singleton_theta() : CoderivResult<2>::empty();
}

double norm_identity_rhs_f(const Point2& z, const Point2& y) {
  if (is_origin(z)) throw DomainError("norm identity requires z != 0");
  return y.squaredNorm() + correction_term(z[0], z[1], y[0], y[1]);
}

Mat4 jacobian_g(const Point4& z) {
  if (is_origin(z.head<2>()) || is_origin(z.tail<2>())) {
    throw DomainError("g is not Frechet differentiable where a block of z is zero");
  }
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<2, 2>() = f_block(z[0], z[1]);
  m.bottomRightCorner<2, 2>() = f_block(z[2], z[3]);
  return m;
}

Mat4 coderivative_matrix_g(const Point4& z) { return jacobian_g(z).transpose(); }

CoderivResult<4> coderivative_g(const Point4& z, const Point4& y) {
  const bool first_zero = is_origin(z.head<2>());
  const bool second_zero = is_origin(z.tail<2>());
  if (first_zero && second_zero) {
    return is_origin(y) ? CoderivResult<4>::singleton_theta() : CoderivResult<4>::empty();
  }
  if (!first_zero && !second_zero) {
    return CoderivResult<4>::unique(apply_coderivative(coderivative_matrix_g(z), y));
  }
  // Exactly one zero block: y must vanish over it.
  Point4 x = Point4::Zero();
  if (first_zero) {
    if (!is_origin(y.head<2>())) return CoderivResult<4>::empty();
    x.tail<2>() = f_block(z[2], z[3]) * y.tail<2>();
  } else {
    if (!is_origin(y.tail<2>())) return CoderivResult<4>::empty();
    x.head<2>() = f_block(z[0], z[1]) * y.head<2>();
  }
  return CoderivResult<4>::unique(x);
}

double norm_identity_rhs_g(const Point4& z, const Point4& y) {
  if (is_origin(z)) throw DomainError("norm identity requires z != 0");
  double total = 0.0;
  for (int b = 0; b < 4; b += 2) {
    const Point2 zb = z.segment<2>(b);
    const Point2 yb = y.segment<2>(b);
    if (is_origin(zb)) {
      if (!is_origin(yb)) throw DomainError("y must vanish over a zero block of z");
      continue;
    }
    total += yb.squaredNorm() + correction_term(zb[0], zb[1], yb[0], yb[1]);
  }
  return total;
}

Mat4 jacobian_h(const Point4& z) {
  if (is_origin(z)) throw DomainError("h is not Frechet differentiable at the origin");
  const double z1 = z[0], z2 = z[1], z3 = z[2], z4 = z[3];
  const double s12 = z1 * z1 + z2 * z2;
  const double s34 = z3 * z3 + z4 * z4;
  const double r2 = s12 + s34;
  const double cube = r2 * std::sqrt(r2);
  const double d12 = z1 * z1 - z2 * z2;
  const double d34 = z3 * z3 - z4 * z4;
  Mat4 m;
  // clang-format off
  m << z1 * (z1 * z1 + 3.0 * z2 * z2 + 2.0 * s34), 2.0 * z2 * (z2 * z2 + s34), -d34 * z1, -2.0 * z3 * z4 * z1,
      -z2 * (3.0 * z1 * z1 + z2 * z2 + 2.0 * s34), 2.0 * z1 * (z1 * z1 + s34), -d34 * z2, -2.0 * z3 * z4 * z2,
      -d12 * z3, -2.0 * z1 * z2 * z3, z3 * (2.0 * s12 + z3 * z3 + 3.0 * z4 * z4), 2.0 * z4 * (s12 + z4 * z4),
      -d12 * z4, -2.0 * z1 * z2 * z4, -z4 * (2.0 * s12 + 3.0 * z3 * z3 + z4 * z4), 2.0 * z3 * (s12 + z3 * z3);
  // clang-format on
  return m / cube;
}

Mat4 coderivative_matrix_h(const Point4& z) { return jacobian_h(z).transpose(); }

MatX jacobian(MapId map, const VecX& z) {
  if (z.size() != dimension(map)) throw ConfigError("point dimension does not match map");
  switch (map) {
    case MapId::F2:
      return jacobian_f(Point2(z));
    case MapId::G4:
      return jacobian_g(Point4(z));
    case MapId::H4:
      return jacobian_h(Point4(z));
  }
  return {};
}

bool is_differentiable(MapId map, const VecX& z) {
  switch (map) {
    case MapId::F2:
    case MapId::H4:
      return !is_origin(z);
    case MapId::G4:
      return !is_origin(z.head<2>()) && !is_origin(z.tail<2>());
  }
  return false;
}

}  // namespace coderiv
