#include "coderiv/mappings.hpp"

namespace coderiv {
namespace {

// Angle-doubling block with an explicit denominator.
Point2 block(double a, double b, double norm) {
  return {(a * a - b * b) / norm, 2.0 * a * b / norm};
}

}  // namespace

Point2 eval_f(const Point2& p) {
  if (is_origin(p)) return Point2::Zero();
  return block(p[0], p[1], std::hypot(p[0], p[1]));
}

Point4 eval_g(const Point4& p) {
  Point4 out = Point4::Zero();
  out.head<2>() = eval_f(p.head<2>());
  out.tail<2>() = eval_f(p.tail<2>());
  return out;
}

Point4 eval_h(const Point4& p) {
  if (is_origin(p)) return Point4::Zero();
  const double norm = p.norm();
  Point4 out;
  out.head<2>() = block(p[0], p[1], norm);
  out.tail<2>() = block(p[2], p[3], norm);
  return out;
}

VecX evaluate(MapId map, const VecX& p) {
  if (p.size() != dimension(map)) {
    throw ConfigError("point dimension does not match map " + std::string(to_string(map)));
  }
  switch (map) {
    case MapId::F2:
      return eval_f(Point2(p));
    case MapId::G4:
      return eval_g(Point4(p));
    case MapId::H4:
      return eval_h(Point4(p));
  }
  return p;
}

}  // namespace coderiv
